#include "crange/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "crange/linalg.hpp"
#include "crange/matrix_json.hpp"
#include "crange/rng.hpp"

namespace crange {

namespace {

// Real least-squares system for sum_j c_j [B_j, A] = iA over a basis.
struct LsqSystem {
    Eigen::MatrixXd m;
    Eigen::VectorXd b;
};

LsqSystem build_system(const CMat& a, const std::vector<CMat>& basis) {
    const Eigen::Index n = a.rows();
    const Eigen::Index rows = 2 * n * n;
    LsqSystem sys;
    sys.m.resize(rows, static_cast<Eigen::Index>(basis.size()));
    sys.b.resize(rows);
    for (size_t j = 0; j < basis.size(); ++j) {
        const CMat c = commutator(basis[j], a);
        for (Eigen::Index col = 0, k = 0; col < n; ++col)
            for (Eigen::Index row = 0; row < n; ++row, ++k) {
                sys.m(2 * k, static_cast<Eigen::Index>(j)) = c(row, col).real();
                sys.m(2 * k + 1, static_cast<Eigen::Index>(j)) = c(row, col).imag();
            }
    }
    const CMat ia = Complex(0, 1) * a;
    for (Eigen::Index col = 0, k = 0; col < n; ++col)
        for (Eigen::Index row = 0; row < n; ++row, ++k) {
            sys.b(2 * k) = ia(row, col).real();
            sys.b(2 * k + 1) = ia(row, col).imag();
        }
    return sys;
}

struct Grading {
    std::vector<double> values;        // ascending group values
    std::vector<std::vector<int>> members; // original indices per group
};

// Group near-equal values; gap threshold scales with the spread.
Grading group_values(const Eigen::VectorXd& v) {
    std::vector<int> order(static_cast<size_t>(v.size()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return v(a) < v(b); });
    const double spread = v.maxCoeff() - v.minCoeff();
    const double gap = std::max(1e-6 * spread, 1e-12);
    Grading g;
    for (int idx : order) {
        if (!g.values.empty() && v(idx) - g.values.back() <= gap &&
            v(idx) - v(g.members.back().front()) <= gap) {
            g.members.back().push_back(idx);
        } else {
            g.values.push_back(v(idx));
            g.members.push_back({idx});
        }
    }
    // Use group means as representative values.
    for (size_t k = 0; k < g.members.size(); ++k) {
        double s = 0;
        for (int idx : g.members[k]) s += v(idx);
        g.values[k] = s / static_cast<double>(g.members[k].size());
    }
    return g;
}

double off_pattern_norm(const CMat& m, const BlockPartition& part) {
    CMat rest = m;
    for (size_t k = 1; k < part.blocks(); ++k) {
        const int r0 = part.offset(k), c0 = part.offset(k - 1);
        rest.block(r0, c0, part.sizes[k], part.sizes[k - 1]).setZero();
    }
    return rest.norm();
}

} // namespace

std::vector<CMat> eigenspace_basis(const EigenspaceQuery& q, int n, const Tolerances& tol) {
    if (q.delta.rows() != n || q.delta.cols() != n)
        throw std::invalid_argument("eigenspace_basis: delta does not have the stated dimension");
    const double scale = std::max(1.0, q.delta.norm());
    if (!is_diagonal(q.delta, tol.exact * scale))
        throw std::invalid_argument("eigenspace_basis: delta must be diagonal");
    if (!is_skew_hermitian(q.delta, tol.exact * scale))
        throw std::invalid_argument("eigenspace_basis: delta must be skew-Hermitian");
    Eigen::VectorXd lambda(n);
    for (int k = 0; k < n; ++k) lambda(k) = q.delta(k, k).imag();
    const double match = tol.exact * std::max(1.0, lambda.cwiseAbs().maxCoeff());
    std::vector<CMat> out;
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            if (std::abs(lambda(k) - lambda(l) - q.phi) <= match)
                out.push_back(matrix_unit(n, k, l));
    return out;
}

SymmetryCertificate detect_weak_symmetry(const CMat& a, const GroupSpec& spec, const Tolerances& tol) {
    require_square(a, "detect_weak_symmetry");
    if (a.norm() == 0.0) throw std::invalid_argument("detect_weak_symmetry: A must be nonzero");
    if (a.rows() != spec.ambient_dim())
        throw DimensionMismatch("detect_weak_symmetry: dimension mismatch with group spec");

    const AlgebraBasis basis = algebra_basis(spec, tol);
    const LsqSystem sys = build_system(a, basis.elements);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd c = svd.solve(sys.b);
    const double residual = (sys.m * c - sys.b).norm();

    SymmetryCertificate cert;
    cert.residual = residual;
    cert.system_singvals.assign(svd.singularValues().data(),
                                svd.singularValues().data() + svd.singularValues().size());
    cert.verdict = residual <= tol.feas * a.norm();
    if (cert.verdict) {
        CMat omega = CMat::Zero(a.rows(), a.cols());
        for (size_t j = 0; j < basis.elements.size(); ++j)
            omega += c(static_cast<Eigen::Index>(j)) * basis.elements[j];
        cert.omega = omega;
        cert.has_omega = true;
        cert.phi = 1.0;
    }
    return cert;
}

BlockshiftResult blockshift_canonical(const CMat& a, const Tolerances& tol) {
    require_square(a, "blockshift_canonical");
    if (a.norm() == 0.0) throw std::invalid_argument("blockshift_canonical: A must be nonzero");

    BlockshiftResult out;
    const SymmetryCertificate cert =
        detect_weak_symmetry(a, GroupSpec::full_unitary(static_cast<int>(a.rows())), tol);
    out.residual = cert.residual;
    if (!cert.verdict) return out;

    // omega = V * (i diag(g)) * V^dag with the grading g sorted ascending.
    Eigen::SelfAdjointEigenSolver<CMat> es(Complex(0, 1) * cert.omega);
    const Eigen::Index n = a.rows();
    Eigen::VectorXd grading(n);
    CMat v(n, n);
    for (Eigen::Index k = 0; k < n; ++k) { // reverse: -d ascending
        grading(k) = -es.eigenvalues()(n - 1 - k);
        v.col(k) = es.eigenvectors().col(n - 1 - k);
    }

    const Grading groups = group_values(grading);
    const size_t m = groups.values.size();
    const double spread = groups.values.back() - groups.values.front();
    const double edge_tol = 1e-6 * std::max(1.0, spread);

    // phi = 1 chain structure on groups; each group has at most one
    // successor/predecessor because group values are distinct.
    std::vector<int> succ(m, -1), pred(m, -1);
    for (size_t k = 0; k < m; ++k)
        for (size_t l = 0; l < m; ++l)
            if (k != l && std::abs(groups.values[l] - groups.values[k] - 1.0) <= edge_tol) {
                succ[k] = static_cast<int>(l);
                pred[l] = static_cast<int>(k);
            }

    // Emit chains in order of their starting value.
    std::vector<size_t> heads;
    for (size_t k = 0; k < m; ++k)
        if (pred[k] < 0) heads.push_back(k);
    std::sort(heads.begin(), heads.end(),
              [&](size_t x, size_t y) { return groups.values[x] < groups.values[y]; });

    std::vector<int> column_order;
    std::vector<int> sizes;
    for (size_t h : heads)
        for (int g = static_cast<int>(h); g >= 0; g = succ[static_cast<size_t>(g)]) {
            sizes.push_back(static_cast<int>(groups.members[static_cast<size_t>(g)].size()));
            for (int idx : groups.members[static_cast<size_t>(g)]) column_order.push_back(idx);
        }
    if (column_order.size() != static_cast<size_t>(n)) return out; // cyclic grading: not a valid chain set

    CMat vo(n, n);
    for (Eigen::Index k = 0; k < n; ++k) vo.col(k) = v.col(column_order[static_cast<size_t>(k)]);
    const CMat u = vo.adjoint();
    const CMat mm = u * a * u.adjoint();

    BlockPartition part(sizes);
    if (off_pattern_norm(mm, part) > tol.feas * a.norm()) return out;

    // Coarsen: merge adjacent blocks whenever the pattern stays valid.
    bool merged = true;
    while (merged && part.blocks() > 1) {
        merged = false;
        for (size_t k = 0; k + 1 < part.blocks(); ++k) {
            std::vector<int> trial = part.sizes;
            trial[k] += trial[k + 1];
            trial.erase(trial.begin() + static_cast<long>(k) + 1);
            BlockPartition cand(trial);
            if (off_pattern_norm(mm, cand) <= tol.feas * a.norm()) {
                part = cand;
                merged = true;
                break;
            }
        }
    }

    out.ok = true;
    out.u = u;
    out.m = mm;
    out.partition = part;
    out.off_pattern_mass = off_pattern_norm(mm, part);
    return out;
}

SeparationIndexResult separation_index(const CMat& a, const Tolerances& tol) {
    require_square(a, "separation_index");
    if (a.norm() == 0.0) throw std::invalid_argument("separation_index: A must be nonzero");

    SeparationIndexResult out;
    Eigen::JacobiSVD<CMat> svd(a);
    const auto& sv = svd.singularValues();
    const bool rank_one = a.rows() == 1 || sv(1) <= tol.exact * sv(0);
    const bool squares_to_zero = (a * a).norm() <= tol.nilp * a.norm() * a.norm();
    out.is_one = rank_one && squares_to_zero;

    const GroupSpec full = GroupSpec::full_unitary(static_cast<int>(a.rows()));
    const AlgebraBasis basis = algebra_basis(full, tol);
    const LsqSystem sys = build_system(a, basis.elements);
    Eigen::JacobiSVD<Eigen::MatrixXd> sysvd(sys.m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd c0 = sysvd.solve(sys.b);
    if ((sys.m * c0 - sys.b).norm() > tol.feas * a.norm()) return out; // no witness

    // Null-space directions of the system are the commutant; generic shifts
    // inside the feasible set break accidental eigenvalue coincidences and
    // shrink the containing eigenspace.
    const auto& singvals = sysvd.singularValues();
    const double cut = 1e-10 * std::max(1.0, singvals(0));
    std::vector<Eigen::VectorXd> null_dirs;
    for (Eigen::Index j = 0; j < singvals.size(); ++j)
        if (singvals(j) <= cut) null_dirs.push_back(sysvd.matrixV().col(j));

    auto rng = make_rng(0x5eb'a7a7);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    int best_dim = -1;
    CMat best_omega;
    const int trials = null_dirs.empty() ? 1 : 8;
    for (int t = 0; t < trials; ++t) {
        Eigen::VectorXd c = c0;
        if (t > 0)
            for (const auto& dir : null_dirs) c += uni(rng) * (1.0 + c0.norm()) * dir;
        if ((sys.m * c - sys.b).norm() > tol.feas * a.norm()) continue;
        CMat omega = CMat::Zero(a.rows(), a.cols());
        for (size_t j = 0; j < basis.elements.size(); ++j)
            omega += c(static_cast<Eigen::Index>(j)) * basis.elements[j];
        Eigen::SelfAdjointEigenSolver<CMat> es(Complex(0, 1) * omega);
        Eigen::VectorXd g = -es.eigenvalues();
        const double spread = g.maxCoeff() - g.minCoeff();
        const double edge_tol = 1e-6 * std::max(1.0, spread);
        int dim = 0;
        for (Eigen::Index r = 0; r < g.size(); ++r)
            for (Eigen::Index s = 0; s < g.size(); ++s)
                if (std::abs(g(r) - g(s) - 1.0) <= edge_tol) ++dim;
        if (best_dim < 0 || dim < best_dim) {
            best_dim = dim;
            best_omega = omega;
        }
    }
    if (best_dim >= 0) {
        out.upper_bound = best_dim;
        out.witness = std::make_pair(best_omega, 1.0);
    }
    return out;
}

AlgebraBasis lie_closure(const std::vector<CMat>& generators, const Tolerances& tol) {
    if (generators.empty()) throw std::invalid_argument("lie_closure: needs at least one generator");
    const Eigen::Index n = generators.front().rows();
    for (const CMat& g : generators) {
        require_same_dim(g, generators.front(), "lie_closure");
        if (!is_skew_hermitian(g, tol.exact * std::max(1.0, g.norm())))
            throw std::invalid_argument("lie_closure: generators must be skew-Hermitian");
    }
    std::vector<CMat> basis = orthonormalize(generators, tol.exact);
    const size_t max_dim = static_cast<size_t>(n) * static_cast<size_t>(n);
    size_t checked = 0; // all pairs (i, j) with i < checked have been bracketed
    while (checked < basis.size() && basis.size() <= max_dim) {
        const size_t upto = basis.size();
        for (size_t i = checked; i < upto; ++i)
            for (size_t j = 0; j < i; ++j) {
                const CMat br = commutator(basis[i], basis[j]);
                const CMat res = project_out(br, basis);
                if (res.norm() > tol.exact * std::max(1.0, br.norm()))
                    basis.push_back(res / res.norm());
            }
        checked = upto;
    }
    AlgebraBasis out;
    out.dim_ambient = static_cast<int>(n);
    out.elements = std::move(basis);
    return out;
}

bool is_su2(const AlgebraBasis& basis, const Tolerances& tol) {
    const std::vector<CMat> on = orthonormalize(basis.elements, tol.exact);
    // Closure check: every bracket must stay inside the span.
    for (size_t i = 0; i < on.size(); ++i)
        for (size_t j = 0; j < i; ++j) {
            const CMat br = commutator(on[i], on[j]);
            if (project_out(br, on).norm() > tol.feas * std::max(1.0, br.norm()))
                throw std::invalid_argument("is_su2: basis is not closed under brackets");
        }
    if (on.size() != 3) return false;
    // Killing form from structure constants.
    Eigen::Matrix3d ad[3];
    for (int i = 0; i < 3; ++i) {
        const CMat bi = on[static_cast<size_t>(i)];
        for (int j = 0; j < 3; ++j) {
            const CMat br = commutator(bi, on[static_cast<size_t>(j)]);
            for (int k = 0; k < 3; ++k)
                ad[i](k, j) = (on[static_cast<size_t>(k)].adjoint() * br).trace().real();
        }
    }
    Eigen::Matrix3d killing;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) killing(i, j) = (ad[i] * ad[j]).trace();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(killing);
    return es.eigenvalues().maxCoeff() <= -1e-9 * std::max(1.0, killing.norm());
}

std::string certificate_to_json(const SymmetryCertificate& cert) {
    nlohmann::json j;
    j["verdict"] = cert.verdict;
    j["phi"] = cert.phi;
    j["residual"] = cert.residual;
    if (cert.has_omega) j["omega"] = nlohmann::json::parse(matrix_to_json(cert.omega));
    j["system_singvals"] = cert.system_singvals;
    return j.dump();
}

} // namespace crange
