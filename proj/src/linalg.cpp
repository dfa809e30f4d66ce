#include "crange/linalg.hpp"

namespace crange {

Complex frobenius_inner(const CMat& c, const CMat& a) {
    require_same_dim(c, a, "frobenius_inner");
    return (c.adjoint() * a).trace();
}

CMat commutator(const CMat& x, const CMat& y) {
    require_same_dim(x, y, "commutator");
    require_square(x, "commutator");
    return x * y - y * x;
}

CMat ad_operator(const CMat& omega) {
    require_square(omega, "ad_operator");
    const Eigen::Index n = omega.rows();
    CMat id = CMat::Identity(n, n);
    return kron(id, omega) - kron(omega.transpose(), id);
}

CMat kron(const CMat& a, const CMat& b) {
    const Eigen::Index ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
    CMat out(ar * br, ac * bc);
    for (Eigen::Index i = 0; i < ar; ++i)
        for (Eigen::Index j = 0; j < ac; ++j)
            out.block(i * br, j * bc, br, bc) = a(i, j) * b;
    return out;
}

CMat direct_sum(const CMat& a, const CMat& b) {
    CMat out = CMat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

CMat expm_skew(const CMat& omega, double t, const Tolerances& tol) {
    require_square(omega, "expm_skew");
    if (!is_skew_hermitian(omega, tol.exact * std::max(1.0, omega.norm())))
        throw std::invalid_argument("expm_skew: input is not skew-Hermitian");
    // i*Omega is Hermitian; e^{Omega t} = V e^{-i d t} V^dag.
    Eigen::SelfAdjointEigenSolver<CMat> es(Complex(0, 1) * omega);
    const Eigen::VectorXd d = es.eigenvalues();
    CVec phases(d.size());
    for (Eigen::Index k = 0; k < d.size(); ++k)
        phases(k) = std::exp(Complex(0, -d(k) * t));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

bool is_nilpotent(const CMat& a, const Tolerances& tol) {
    require_square(a, "is_nilpotent");
    const double norm = a.norm();
    if (norm == 0.0) return true;
    const CMat unit = a / norm;
    CMat power = unit;
    for (Eigen::Index k = 1; k <= a.rows(); ++k) {
        if (k > 1) power = power * unit;
        if (std::abs(power.trace()) > tol.nilp) return false;
    }
    return true;
}

} // namespace crange
