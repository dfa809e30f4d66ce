#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "crange/matrix.hpp"

namespace crange {

using Rational = boost::multiprecision::cpp_rational;

/// Exact linear system deciding membership of A in an ad-eigenspace of the
/// diagonal torus algebra of the n-qubit local unitary group:
///   x_loc * mu = 0            (mu is the diagonal of an algebra element)
///   x_ad  * mu = (1, ..., 1)  (one row per nonzero off-diagonal entry of A)
struct FeasibilitySystem {
    int n = 0;
    std::vector<std::vector<long>> x_loc;
    std::vector<std::vector<long>> x_ad;
    std::vector<std::pair<int, int>> support; // (row, col) of the x_ad rows
};

FeasibilitySystem build_tloc_system(const CMat& a, int n,
                                    const Tolerances& tol = default_tolerances());

struct TlocResult {
    bool feasible = false;
    std::vector<Rational> mu; // diagonal of the rational witness
    Rational phi = 1;
    FeasibilitySystem system;

    /// i * diag(mu) as a floating matrix.
    CMat omega() const;
};

/// Solves the system above in exact rational arithmetic with the eigenvalue
/// normalized to 1. Requires dim A = 2^n and zero diagonal.
TlocResult tloc_feasibility(const CMat& a, int n,
                            const Tolerances& tol = default_tolerances());

/// Coefficients a_j of mu over the n sigma_z diagonal embeddings (exact).
std::vector<Rational> tloc_factor_coefficients(const std::vector<Rational>& mu, int n);

/// Signed permutation: e_s -> sign[s] * e_{perm[s]}.
struct SignedPerm {
    std::vector<int> perm;
    std::vector<int> sign;

    static SignedPerm identity(int dim);
    int dim() const { return static_cast<int>(perm.size()); }
    SignedPerm compose(const SignedPerm& rhs) const; // this applied after rhs
    bool operator==(const SignedPerm& o) const { return perm == o.perm && sign == o.sign; }
    CMat matrix() const;
    CMat conjugate(const CMat& a) const; // P A P^dag
};

/// The extended local permutation group for n qubits: the group generated by
/// all signed local permutations (factors in {+-I, +-[[0,1],[-1,0]]}) together
/// with the order-4 signed pair swaps on adjacent factors. The plain product
/// of the two generating subgroups is not closed under multiplication, so the
/// generated closure is stored; the local subgroup occupies the leading
/// `n_loc` slots.
struct PermGroupEx {
    int n = 0;
    std::vector<SignedPerm> elements;
    size_t n_loc = 0;
    std::vector<SignedPerm> pi_out;
    bool closure_verified = false;

    bool is_local(size_t index) const { return index < n_loc; }
};

const PermGroupEx& perm_group_ex(int n);

/// One row of the 4x4 classification: allowed support positions and the
/// eigenvalue relations phi = a_l * lambda + a_m * mu that pin the torus
/// element, for diag(i lambda, i mu, -i mu, -i lambda).
struct CaseDef {
    int index = 0;
    std::vector<std::pair<int, int>> pattern;     // zero-based
    std::vector<std::array<long, 2>> relations;   // (a_l, a_m)
};

const std::array<CaseDef, 16>& case_table();

struct CaseLabel {
    int index = 0;
    bool transposed = false;
    std::vector<std::pair<int, int>> pattern;
};

struct ClassifyResult {
    bool found = false;
    CaseLabel label;
    CMat u_local;
    double off_pattern_mass = 0.0; // Frobenius norm outside the pattern
};

/// Searches SU(2) (x) SU(2) by restarted Riemannian descent for a conjugation
/// of A into one of the 32 case patterns. A negative answer is best-effort
/// (restart budget), not a proof of absence.
ClassifyResult classify_4x4(const CMat& a, int restarts, uint64_t seed,
                            const Tolerances& tol = default_tolerances());

struct ConjectureResult {
    bool found = false;
    SignedPerm witness;
    BlockPartition partition;
    bool used_out = false; // witness lies outside the signed local subgroup
    size_t group_size = 0;
};

/// Exhaustively searches the extended permutation group for P with P A P^dag
/// in literal block-shift form. Precondition: A passes tloc_feasibility.
ConjectureResult conjecture_check(const CMat& a, int n,
                                  const Tolerances& tol = default_tolerances());

/// Random element of a torus ad-eigenspace: a random rational torus diagonal,
/// a random nonzero eigenvalue among its entry differences, and random
/// nonzero entries on (a subset of) the qualifying positions.
CMat random_etloc_element(int n, uint64_t seed);

/// Random elements of the torus ad-eigenspaces stay feasible after
/// conjugation by random group elements.
bool invariance_check_Etloc(int n, int trials, uint64_t seed,
                            const Tolerances& tol = default_tolerances());

/// Exact rational RREF solve of M x = rhs; free variables pinned to zero.
struct RationalSolve {
    bool feasible = false;
    std::vector<Rational> solution;
};
RationalSolve solve_rational(const std::vector<std::vector<Rational>>& m,
                             const std::vector<Rational>& rhs);

} // namespace crange
