#pragma once

#include <random>

#include "crange/groups.hpp"
#include "crange/matrix.hpp"
#include "crange/rng.hpp"

namespace crange::testing {

inline CMat random_complex(int n, uint64_t seed) {
    auto rng = make_rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
    return m;
}

inline CMat random_hermitian(int n, uint64_t seed) {
    const CMat m = random_complex(n, seed);
    return (m + m.adjoint()) / 2.0;
}

inline CMat random_skew_hermitian(int n, uint64_t seed) {
    const CMat m = random_complex(n, seed);
    return (m - m.adjoint()) / 2.0;
}

inline CMat random_unitary(int n, uint64_t seed) {
    return haar_sample(GroupSpec::full_unitary(n), seed);
}

/// Hermitian matrix with prescribed eigenvalues in random basis.
inline CMat hermitian_with_spectrum(const std::vector<double>& spectrum, uint64_t seed) {
    const int n = static_cast<int>(spectrum.size());
    const CMat u = random_unitary(n, seed);
    CMat d = CMat::Zero(n, n);
    for (int k = 0; k < n; ++k) d(k, k) = spectrum[static_cast<size_t>(k)];
    return u * d * u.adjoint();
}

} // namespace crange::testing
