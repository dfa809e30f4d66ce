#pragma once

#include "crange/groups.hpp"
#include "crange/matrix.hpp"

namespace crange {

/// Built-in worked datasets 1..5, used by the CLI `example` verb and by the
/// acceptance suite.
///
///   1: one-parameter torus with C = A = E_21 (the sampled set is the unit
///      circle),
///   2: u(2) (x) u(2) with diagonal tensor factors (the "butterfly" region
///      {a + ib : |b| <= |a| <= 1}),
///   3: threefold tensor product of segments from 1 to e^{2 pi i/3} (outer
///      boundary an equilateral triangle, origin excluded),
///   4: the 4x4 single-column block-shift matrix whose local orbit is not
///      rotationally symmetric although the full unitary one is,
///   5: the reflection pair U_0 = e^{Omega_0} with U_0 A U_0^dag = -A while
///      A is no ad-eigenvector of Omega_0.
struct ExampleRangeData {
    CMat c, a;
    GroupSpec spec;
    size_t default_samples = 10000;
};

ExampleRangeData example_range_data(int index); // 1, 2, 3

CMat example4_matrix();

struct ReflectionPair {
    CMat a;      // [[a, b], [b, -a]] with a = b = 1
    CMat u0;     // [[0, 1], [-1, 0]]
    CMat omega0; // (pi/2) [[0, 1], [-1, 0]]
};
ReflectionPair example5_data();

} // namespace crange
