#pragma once

namespace crange {

/// Central tolerance configuration. One knob per error class so runs are
/// reproducible: `exact` guards structural predicates (Hermitian, unitary,
/// diagonal, ...), `nilp` guards spectral zero tests, `feas` guards linear
/// feasibility residuals in the symmetry machinery.
struct Tolerances {
    double exact = 1e-10;
    double nilp = 1e-8;
    double feas = 1e-8;
};

inline const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

} // namespace crange
