#pragma once

#include <Eigen/Dense>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "crange/tolerances.hpp"

namespace crange {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Raised for shape disagreements between inputs; the CLI maps it to its own
/// exit code, distinct from I/O and parse failures.
struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline void require_square(const CMat& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw DimensionMismatch(std::string(what) + ": matrix must be square and nonempty");
}

inline void require_same_dim(const CMat& a, const CMat& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch(std::string(what) + ": dimension mismatch");
}

// Structural predicates, judged in Frobenius norm against Tolerances::exact.
inline bool is_hermitian(const CMat& m, double tau = default_tolerances().exact) {
    return m.rows() == m.cols() && (m - m.adjoint()).norm() <= tau;
}

inline bool is_skew_hermitian(const CMat& m, double tau = default_tolerances().exact) {
    return m.rows() == m.cols() && (m + m.adjoint()).norm() <= tau;
}

inline bool is_unitary(const CMat& m, double tau = default_tolerances().exact) {
    if (m.rows() != m.cols()) return false;
    return (m.adjoint() * m - CMat::Identity(m.rows(), m.cols())).norm() <= tau;
}

inline bool is_traceless(const CMat& m, double tau = default_tolerances().exact) {
    return std::abs(m.trace()) <= tau;
}

inline bool is_diagonal(const CMat& m, double tau = default_tolerances().exact) {
    CMat off = m;
    off.diagonal().setZero();
    return off.norm() <= tau;
}

/// E_{rc}: single unit entry at (r, c), zero-based indices.
inline CMat matrix_unit(Eigen::Index n, Eigen::Index r, Eigen::Index c) {
    CMat e = CMat::Zero(n, n);
    e(r, c) = 1.0;
    return e;
}

/// Ordered sizes n_1,...,n_m of consecutive index blocks summing to the
/// ambient dimension.
struct BlockPartition {
    std::vector<int> sizes;

    BlockPartition() = default;
    explicit BlockPartition(std::vector<int> s) : sizes(std::move(s)) {
        if (sizes.empty()) throw std::invalid_argument("BlockPartition: needs at least one block");
        for (int n : sizes)
            if (n <= 0) throw std::invalid_argument("BlockPartition: block sizes must be positive");
    }

    int total() const { return std::accumulate(sizes.begin(), sizes.end(), 0); }
    size_t blocks() const { return sizes.size(); }

    /// Start offset of block k.
    int offset(size_t k) const {
        return std::accumulate(sizes.begin(), sizes.begin() + static_cast<long>(k), 0);
    }
};

} // namespace crange
