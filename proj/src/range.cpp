#include "crange/range.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "crange/linalg.hpp"
#include "crange/matrix_json.hpp"
#include "crange/rng.hpp"

namespace crange {

namespace {

constexpr size_t kComposeCap = 1'000'000;

std::vector<size_t> strided_subset(size_t n, size_t take) {
    std::vector<size_t> idx;
    idx.reserve(take);
    for (size_t k = 0; k < take; ++k) idx.push_back((k * n) / take);
    return idx;
}

RangeCloud compose(const RangeCloud& w1, const RangeCloud& w2, bool multiply) {
    if (w1.points.empty() || w2.points.empty())
        throw std::invalid_argument("compose: clouds must be nonempty");
    const size_t n1 = w1.points.size(), n2 = w2.points.size();
    std::vector<size_t> i1, i2;
    if (n1 * n2 <= kComposeCap) {
        i1 = strided_subset(n1, n1);
        i2 = strided_subset(n2, n2);
    } else {
        // Balance the strata so the cross product stays within the cap.
        double scale = std::sqrt(static_cast<double>(kComposeCap) / (static_cast<double>(n1) * static_cast<double>(n2)));
        size_t k1 = std::max<size_t>(1, static_cast<size_t>(static_cast<double>(n1) * scale));
        size_t k2 = std::max<size_t>(1, static_cast<size_t>(static_cast<double>(n2) * scale));
        k1 = std::min(k1, n1);
        k2 = std::min(k2, n2);
        i1 = strided_subset(n1, k1);
        i2 = strided_subset(n2, k2);
    }
    RangeCloud out;
    out.spec = (multiply ? "prod(" : "sum(") + w1.spec + "," + w2.spec + ")";
    out.seed = derive_seed(w1.seed, w2.seed);
    out.points.reserve(i1.size() * i2.size());
    for (size_t a : i1)
        for (size_t b : i2)
            out.points.push_back(multiply ? w1.points[a] * w2.points[b]
                                          : w1.points[a] + w2.points[b]);
    out.count = out.points.size();
    return out;
}

} // namespace

Complex trace_point(const CMat& c, const CMat& a, const CMat& u, const Tolerances& tol) {
    require_same_dim(c, a, "trace_point");
    require_same_dim(a, u, "trace_point");
    if (!is_unitary(u, tol.exact * std::sqrt(static_cast<double>(u.rows()))))
        throw std::invalid_argument("trace_point: U is not unitary");
    return (c.adjoint() * u * a * u.adjoint()).trace();
}

RangeCloud sample_range(const CMat& c, const CMat& a, const GroupSpec& spec,
                        size_t count, uint64_t seed) {
    require_same_dim(c, a, "sample_range");
    if (a.rows() != spec.ambient_dim())
        throw DimensionMismatch("sample_range: matrices do not match the group's ambient dimension");
    if (count < 1) throw std::invalid_argument("sample_range: count must be at least 1");
    RangeCloud cloud;
    cloud.spec = spec.to_string();
    cloud.seed = seed;
    cloud.count = count;
    cloud.c_hash = content_hash(c);
    cloud.a_hash = content_hash(a);
    cloud.points.reserve(count);
    const CMat cdag = c.adjoint();
    for (size_t k = 0; k < count; ++k) {
        const CMat u = haar_sample(spec, derive_seed(seed, k));
        cloud.points.push_back((cdag * u * a * u.adjoint()).trace());
    }
    return cloud;
}

RadiusResult radius(const CMat& c, const CMat& a, const GroupSpec& spec,
                    int restarts, uint64_t seed, int max_iters, const Tolerances& tol) {
    require_same_dim(c, a, "radius");
    if (a.rows() != spec.ambient_dim())
        throw DimensionMismatch("radius: matrices do not match the group's ambient dimension");
    if (restarts < 1) throw std::invalid_argument("radius: restarts must be at least 1");

    const AlgebraBasis basis = algebra_basis(spec, tol);
    const CMat cdag = c.adjoint();
    const Eigen::Index n = a.rows();
    constexpr double grad_tol = 1e-8;

    RadiusResult best;
    best.restarts = restarts;
    best.value = -1.0;

    for (int r = 0; r < restarts; ++r) {
        CMat u = (r == 0) ? CMat::Identity(n, n)
                          : haar_sample(spec, derive_seed(seed, static_cast<uint64_t>(r)));
        CMat m = u * a * u.adjoint();
        Complex w = (cdag * m).trace();
        double f = std::norm(w);
        bool converged = false;

        for (int it = 0; it < max_iters; ++it) {
            // d/dt tr(C^dag e^{tB} M e^{-tB}) = tr(B (M C^dag - C^dag M)).
            const CMat g = m * cdag - cdag * m;
            CMat dir = CMat::Zero(n, n);
            double gnorm2 = 0;
            for (const CMat& b : basis.elements) {
                const double gk = 2.0 * (std::conj(w) * (b * g).trace()).real();
                dir += gk * b;
                gnorm2 += gk * gk;
            }
            const double gnorm = std::sqrt(gnorm2);
            if (gnorm <= grad_tol) {
                converged = true;
                break;
            }
            double step = 1.0 / std::max(gnorm, 1.0);
            bool advanced = false;
            for (int bt = 0; bt < 40; ++bt) {
                const CMat u2 = expm_skew(dir, step, tol) * u;
                const CMat m2 = u2 * a * u2.adjoint();
                const Complex w2 = (cdag * m2).trace();
                const double f2 = std::norm(w2);
                if (f2 >= f + 0.25 * step * gnorm2) {
                    u = u2;
                    m = m2;
                    w = w2;
                    f = f2;
                    advanced = true;
                    break;
                }
                step *= 0.5;
            }
            if (!advanced) {
                converged = gnorm <= 10 * grad_tol;
                break;
            }
        }

        const double value = std::abs(w);
        if (value > best.value) {
            best.value = value;
            best.maximizer = u;
            best.converged = converged;
        }
    }
    return best;
}

std::pair<double, double> hermitian_interval(const CMat& c, const CMat& a, const Tolerances& tol) {
    require_same_dim(c, a, "hermitian_interval");
    const double scale_a = std::max(1.0, a.norm()), scale_c = std::max(1.0, c.norm());
    if (!is_hermitian(a, tol.exact * scale_a) || !is_hermitian(c, tol.exact * scale_c))
        throw std::invalid_argument("hermitian_interval: inputs must be Hermitian");
    Eigen::SelfAdjointEigenSolver<CMat> ea(a), ec(c);
    Eigen::VectorXd alpha = ea.eigenvalues(), gamma = ec.eigenvalues();
    std::sort(alpha.data(), alpha.data() + alpha.size(), std::greater<double>());
    std::sort(gamma.data(), gamma.data() + gamma.size(), std::greater<double>());
    double b = 0, lo = 0;
    const Eigen::Index n = alpha.size();
    for (Eigen::Index j = 0; j < n; ++j) {
        b += alpha(j) * gamma(j);
        lo += alpha(j) * gamma(n - 1 - j);
    }
    return {lo, b};
}

RangeCloud compose_sum(const RangeCloud& w1, const RangeCloud& w2) {
    return compose(w1, w2, false);
}

RangeCloud compose_product(const RangeCloud& w1, const RangeCloud& w2) {
    return compose(w1, w2, true);
}

RangeCloud local_numerical_range(const CMat& a, int n, size_t count, uint64_t seed) {
    require_square(a, "local_numerical_range");
    if (a.rows() != (Eigen::Index(1) << n))
        throw DimensionMismatch("local_numerical_range: dim A must be 2^n");
    RangeCloud cloud;
    cloud.spec = "loc(" + std::to_string(n) + ")";
    cloud.seed = seed;
    cloud.count = count;
    cloud.a_hash = content_hash(a);
    cloud.points.reserve(count);
    for (size_t k = 0; k < count; ++k) {
        auto rng = make_rng(derive_seed(seed, k));
        std::normal_distribution<double> gauss(0.0, 1.0);
        CVec x = CVec::Ones(1);
        for (int q = 0; q < n; ++q) {
            CVec f(2);
            double nrm = 0;
            do {
                for (int i = 0; i < 2; ++i) f(i) = Complex(gauss(rng), gauss(rng));
                nrm = f.norm();
            } while (nrm == 0);
            f /= nrm;
            CVec next(x.size() * 2);
            for (Eigen::Index i = 0; i < x.size(); ++i) {
                next(2 * i) = x(i) * f(0);
                next(2 * i + 1) = x(i) * f(1);
            }
            x = next;
        }
        cloud.points.push_back(x.dot(a * x));
    }
    return cloud;
}

void write_cloud_csv(const std::string& path, const RangeCloud& cloud) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write cloud CSV: " + path);
    out << "re,im\n";
    char buf[96];
    for (const Complex& z : cloud.points) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", z.real(), z.imag());
        out << buf;
    }
}

std::vector<Complex> read_cloud_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open cloud CSV: " + path);
    std::string line;
    std::getline(in, line); // header
    std::vector<Complex> pts;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("cloud CSV: malformed line");
        pts.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    return pts;
}

} // namespace crange
