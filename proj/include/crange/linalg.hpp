#pragma once

#include "crange/matrix.hpp"

namespace crange {

/// tr(C^dag A). Conjugate-symmetric: inner(C,A) = conj(inner(A,C)).
Complex frobenius_inner(const CMat& c, const CMat& a);

/// [X,Y] = XY - YX.
CMat commutator(const CMat& x, const CMat& y);

/// N^2 x N^2 matrix of A -> [Omega, A] in the matrix-unit basis
/// (column-major vectorisation): I (x) Omega - Omega^T (x) I.
CMat ad_operator(const CMat& omega);

/// Kronecker product, first factor most significant.
CMat kron(const CMat& a, const CMat& b);

/// Block-diagonal stacking diag(A, B).
CMat direct_sum(const CMat& a, const CMat& b);

/// e^{Omega t} for skew-Hermitian Omega, via the Hermitian eigendecomposition
/// of i*Omega. The result is unitary up to rounding by construction.
CMat expm_skew(const CMat& omega, double t = 1.0,
               const Tolerances& tol = default_tolerances());

/// Spectral nilpotency test: all power sums tr(A^k), k = 1..N, vanish exactly
/// iff every eigenvalue is zero (Newton's identities). Evaluated on A/||A||
/// so the decision is scale-free.
bool is_nilpotent(const CMat& a, const Tolerances& tol = default_tolerances());

} // namespace crange
