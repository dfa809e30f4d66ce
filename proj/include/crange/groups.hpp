#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "crange/matrix.hpp"

namespace crange {

/// Symbolic description of a compact connected subgroup K of U(N).
///
/// Grammar (whitespace-insensitive, case-insensitive):
///   u(N) | su(N) | torus(a1,...,aN) | loc(n) | sum(S1,S2) | prod(S1,S2)
struct GroupSpec {
    enum class Kind { FullUnitary, SpecialUnitary, Torus, Local, TensorProd, DirectSum };

    Kind kind = Kind::FullUnitary;
    int n = 1;                      // N for u/su, qubit count for loc
    std::vector<long> weights;      // torus: diag(e^{i a_1 phi}, ..., e^{i a_N phi})
    std::shared_ptr<const GroupSpec> left, right;

    static GroupSpec full_unitary(int n);
    static GroupSpec special_unitary(int n);
    static GroupSpec torus(std::vector<long> weights);
    static GroupSpec local(int qubits);
    static GroupSpec tensor_prod(GroupSpec l, GroupSpec r);
    static GroupSpec direct_sum(GroupSpec l, GroupSpec r);

    static GroupSpec parse(std::string_view text);

    int ambient_dim() const;
    std::string to_string() const;
};

/// Real basis of a Lie subalgebra of u(N), stored as skew-Hermitian matrices.
/// Bases produced by this module are orthonormal for Re tr(X^dag Y).
struct AlgebraBasis {
    int dim_ambient = 0;
    std::vector<CMat> elements;

    size_t dim() const { return elements.size(); }
};

/// Real basis of the Lie algebra of K. Tensor products use
/// {B (x) I} u {I (x) B'} with the one-dimensional overlap (the scalar iI,
/// present when neither factor is traceless) removed by rank-revealing
/// orthonormalisation.
AlgebraBasis algebra_basis(const GroupSpec& spec,
                           const Tolerances& tol = default_tolerances());

/// A maximal Abelian subalgebra of the Lie algebra of K consisting of
/// diagonal matrices.
AlgebraBasis torus_basis(const GroupSpec& spec,
                         const Tolerances& tol = default_tolerances());

/// Draw one group element. Haar for u(N)/su(N), independent per factor for
/// products and sums, uniform angle for torus specs. Deterministic in `seed`.
CMat haar_sample(const GroupSpec& spec, uint64_t seed);

/// True iff omega projects onto span(algebra_basis(spec)) with relative
/// residual at most Tolerances::feas. Throws if omega is not skew-Hermitian.
bool contains_algebra(const GroupSpec& spec, const CMat& omega,
                      const Tolerances& tol = default_tolerances());

/// Gram-Schmidt over Re tr(X^dag Y) that drops directions whose residual
/// falls below `tau` times the candidate norm. Used for basis deduplication
/// and for commutator closures.
std::vector<CMat> orthonormalize(const std::vector<CMat>& gens, double tau);

/// Component of `m` orthogonal to the (orthonormal) `basis`.
CMat project_out(const CMat& m, const std::vector<CMat>& basis);

} // namespace crange
