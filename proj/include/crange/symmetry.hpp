#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crange/groups.hpp"
#include "crange/matrix.hpp"

namespace crange {

/// Decision record for weak rotational symmetry of the K-orbit of A.
/// verdict true: [omega, A] = i*phi*A holds with relative residual at most
/// Tolerances::feas and omega lies in the algebra of the tested group; phi is
/// normalized to 1 (any nonzero eigenvalue rescales omega). verdict false:
/// residual is the least-squares infeasibility of the linear system; the
/// singular values of the projected system are kept for auditability.
struct SymmetryCertificate {
    bool verdict = false;
    CMat omega;
    bool has_omega = false;
    double phi = 1.0;
    double residual = 0.0;
    std::vector<double> system_singvals;
};

struct EigenspaceQuery {
    CMat delta; // diagonal, skew-Hermitian
    double phi = 0.0;
};

struct SeparationIndexResult {
    bool is_one = false;
    std::optional<int> upper_bound;
    std::optional<std::pair<CMat, double>> witness; // (omega, phi)
};

struct BlockshiftResult {
    bool ok = false;
    CMat u;                    // conjugator: m = u * A * u^dag
    CMat m;                    // block-shift form
    BlockPartition partition;
    double off_pattern_mass = 0.0;
    double residual = 0.0;     // feasibility residual when refuted
};

/// Matrix units E_kl with lambda_k - lambda_l = phi for delta = i*diag(lambda);
/// includes the diagonal units when phi = 0.
std::vector<CMat> eigenspace_basis(const EigenspaceQuery& q, int n,
                                   const Tolerances& tol = default_tolerances());

/// Decides existence of omega in the Lie algebra of `spec` with
/// [omega, A] = iA by real-linear least squares over the algebra basis.
SymmetryCertificate detect_weak_symmetry(const CMat& a, const GroupSpec& spec,
                                         const Tolerances& tol = default_tolerances());

/// When the full-unitary orbit of A is weakly rotationally symmetric,
/// conjugates A into block-shift form M = U A U^dag (all blocks zero except
/// directly below the diagonal) and returns the conjugator and partition.
BlockshiftResult blockshift_canonical(const CMat& a,
                                      const Tolerances& tol = default_tolerances());

/// is_one decided exactly: rank(A) = 1 and A^2 = 0. The upper bound is the
/// smallest ad-eigenspace dimension seen over feasible witnesses.
SeparationIndexResult separation_index(const CMat& a,
                                       const Tolerances& tol = default_tolerances());

/// Iterated commutator closure of skew-Hermitian generators with
/// rank-revealing basis maintenance.
AlgebraBasis lie_closure(const std::vector<CMat>& generators,
                         const Tolerances& tol = default_tolerances());

/// True iff the (bracket-closed) algebra has dimension 3 and negative
/// definite Killing form. Throws if the input is not closed under brackets.
bool is_su2(const AlgebraBasis& basis, const Tolerances& tol = default_tolerances());

/// Certificate JSON: {verdict, phi, residual, omega?, system_singvals}.
std::string certificate_to_json(const SymmetryCertificate& cert);

} // namespace crange
