#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crange/groups.hpp"
#include "crange/matrix.hpp"

namespace crange {

/// Finite sample of the relative C-numerical range of A with respect to a
/// group spec. Points satisfy the Cauchy-Schwarz bound |z| <= ||A|| ||C||.
struct RangeCloud {
    std::vector<Complex> points;
    std::string spec;
    uint64_t seed = 0;
    size_t count = 0;
    std::string c_hash, a_hash;
};

/// Best value of max |tr(C^dag U A U^dag)| found by restarted Riemannian
/// ascent. `converged` reports whether the winning restart reached the
/// projected-gradient threshold; a false flag is a quality report, not an
/// error.
struct RadiusResult {
    double value = 0.0;
    CMat maximizer;
    int restarts = 0;
    bool converged = false;
};

/// tr(C^dag U A U^dag). Throws on dimension mismatch or non-unitary U.
Complex trace_point(const CMat& c, const CMat& a, const CMat& u,
                    const Tolerances& tol = default_tolerances());

RangeCloud sample_range(const CMat& c, const CMat& a, const GroupSpec& spec,
                        size_t count, uint64_t seed);

RadiusResult radius(const CMat& c, const CMat& a, const GroupSpec& spec,
                    int restarts, uint64_t seed, int max_iters = 500,
                    const Tolerances& tol = default_tolerances());

/// Endpoints (a, b) of the real interval that the range degenerates to for
/// Hermitian C and A: b pairs both spectra sorted descending, a pairs one
/// against the other reversed. Throws on non-Hermitian input.
std::pair<double, double> hermitian_interval(const CMat& c, const CMat& a,
                                             const Tolerances& tol = default_tolerances());

/// Minkowski sum / pointwise product of two clouds over a deterministic
/// pairing: the full cross product up to 10^6 pairs, an evenly strided
/// stratified subsample beyond.
RangeCloud compose_sum(const RangeCloud& w1, const RangeCloud& w2);
RangeCloud compose_product(const RangeCloud& w1, const RangeCloud& w2);

/// Samples x^dag A x over product unit vectors x = x_1 (x) ... (x) x_n with
/// independently Haar-uniform factors. dim A must be 2^n.
RangeCloud local_numerical_range(const CMat& a, int n, size_t count, uint64_t seed);

/// Cloud CSV: header "re,im", one point per line, 17 significant digits.
void write_cloud_csv(const std::string& path, const RangeCloud& cloud);
std::vector<Complex> read_cloud_csv(const std::string& path);

} // namespace crange
