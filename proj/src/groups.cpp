#include "crange/groups.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "crange/linalg.hpp"
#include "crange/rng.hpp"

namespace crange {

namespace {

double real_inner(const CMat& x, const CMat& y) {
    return (x.adjoint() * y).trace().real();
}

CMat embed_block(const CMat& b, int ambient, int offset) {
    CMat out = CMat::Zero(ambient, ambient);
    out.block(offset, offset, b.rows(), b.cols()) = b;
    return out;
}

// Skew-Hermitian basis of u(N): i*E_kk, (E_kl - E_lk), i*(E_kl + E_lk).
std::vector<CMat> u_basis(int n) {
    std::vector<CMat> out;
    for (int k = 0; k < n; ++k)
        out.push_back(Complex(0, 1) * matrix_unit(n, k, k));
    for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
            out.push_back(matrix_unit(n, k, l) - matrix_unit(n, l, k));
            out.push_back(Complex(0, 1) * (matrix_unit(n, k, l) + matrix_unit(n, l, k)));
        }
    return out;
}

std::vector<CMat> su_basis(int n) {
    std::vector<CMat> out;
    for (int k = 0; k + 1 < n; ++k)
        out.push_back(Complex(0, 1) * (matrix_unit(n, k, k) - matrix_unit(n, k + 1, k + 1)));
    for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
            out.push_back(matrix_unit(n, k, l) - matrix_unit(n, l, k));
            out.push_back(Complex(0, 1) * (matrix_unit(n, k, l) + matrix_unit(n, l, k)));
        }
    return out;
}

CMat pauli(int which) {
    CMat m(2, 2);
    switch (which) {
        case 0: m << 0, 1, 1, 0; break;                          // x
        case 1: m << 0, Complex(0, -1), Complex(0, 1), 0; break; // y
        default: m << 1, 0, 0, -1; break;                        // z
    }
    return m;
}

// i * (I (x) ... (x) P (x) ... (x) I) with P at slot `pos` of `n` qubit slots.
CMat qubit_embed(int n, int pos, const CMat& p) {
    CMat out = CMat::Identity(1, 1);
    for (int k = 0; k < n; ++k)
        out = kron(out, k == pos ? p : CMat::Identity(2, 2));
    return Complex(0, 1) * out;
}

std::vector<CMat> tensor_join(const std::vector<CMat>& lhs, int nl,
                              const std::vector<CMat>& rhs, int nr) {
    std::vector<CMat> out;
    const CMat il = CMat::Identity(nl, nl), ir = CMat::Identity(nr, nr);
    for (const CMat& b : lhs) out.push_back(kron(b, ir));
    for (const CMat& b : rhs) out.push_back(kron(il, b));
    return out;
}

CMat haar_unitary(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMat z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<CMat> qr(z);
    CMat q = qr.householderQ();
    CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        Complex d = r(j, j);
        q.col(j) *= (d == Complex(0, 0)) ? 1.0 : d / std::abs(d);
    }
    return q;
}

// Normalised Gaussian quaternion: exactly Haar on SU(2).
CMat su2_haar(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    double q[4];
    double norm = 0;
    do {
        norm = 0;
        for (double& v : q) {
            v = gauss(rng);
            norm += v * v;
        }
    } while (norm == 0);
    norm = std::sqrt(norm);
    const Complex a(q[0] / norm, q[1] / norm), b(q[2] / norm, q[3] / norm);
    CMat u(2, 2);
    u << a, -std::conj(b), b, std::conj(a);
    return u;
}

// --- spec grammar ---

struct Parser {
    std::string_view s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    void expect(char c) {
        if (peek() != c)
            throw std::invalid_argument("group spec: expected '" + std::string(1, c) + "' at position " + std::to_string(pos));
        ++pos;
    }
    std::string ident() {
        skip_ws();
        std::string out;
        while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos])))
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(s[pos++]))));
        if (out.empty()) throw std::invalid_argument("group spec: expected a name at position " + std::to_string(pos));
        return out;
    }
    long integer() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
            throw std::invalid_argument("group spec: expected an integer at position " + std::to_string(start));
        return std::stol(std::string(s.substr(start, pos - start)));
    }

    GroupSpec spec() {
        const std::string name = ident();
        expect('(');
        GroupSpec out;
        if (name == "u" || name == "su") {
            long n = integer();
            if (n < 1) throw std::invalid_argument("group spec: dimension must be positive");
            out = (name == "u") ? GroupSpec::full_unitary(static_cast<int>(n))
                                : GroupSpec::special_unitary(static_cast<int>(n));
        } else if (name == "loc") {
            long n = integer();
            if (n < 1) throw std::invalid_argument("group spec: loc() needs at least one factor");
            out = GroupSpec::local(static_cast<int>(n));
        } else if (name == "torus") {
            std::vector<long> w{integer()};
            while (peek() == ',') {
                expect(',');
                w.push_back(integer());
            }
            out = GroupSpec::torus(std::move(w));
        } else if (name == "sum" || name == "prod") {
            GroupSpec l = spec();
            expect(',');
            GroupSpec r = spec();
            out = (name == "sum") ? GroupSpec::direct_sum(std::move(l), std::move(r))
                                  : GroupSpec::tensor_prod(std::move(l), std::move(r));
        } else {
            throw std::invalid_argument("group spec: unknown constructor '" + name + "'");
        }
        expect(')');
        return out;
    }
};

} // namespace

GroupSpec GroupSpec::full_unitary(int n) {
    if (n < 1) throw std::invalid_argument("GroupSpec: dimension must be positive");
    GroupSpec s;
    s.kind = Kind::FullUnitary;
    s.n = n;
    return s;
}

GroupSpec GroupSpec::special_unitary(int n) {
    GroupSpec s = full_unitary(n);
    s.kind = Kind::SpecialUnitary;
    return s;
}

GroupSpec GroupSpec::torus(std::vector<long> weights) {
    if (weights.empty()) throw std::invalid_argument("GroupSpec: torus needs weights");
    if (std::all_of(weights.begin(), weights.end(), [](long a) { return a == 0; }))
        throw std::invalid_argument("GroupSpec: torus weights must not all be zero");
    GroupSpec s;
    s.kind = Kind::Torus;
    s.n = static_cast<int>(weights.size());
    s.weights = std::move(weights);
    return s;
}

GroupSpec GroupSpec::local(int qubits) {
    if (qubits < 1) throw std::invalid_argument("GroupSpec: loc needs at least one factor");
    GroupSpec s;
    s.kind = Kind::Local;
    s.n = qubits;
    return s;
}

GroupSpec GroupSpec::tensor_prod(GroupSpec l, GroupSpec r) {
    GroupSpec s;
    s.kind = Kind::TensorProd;
    s.left = std::make_shared<const GroupSpec>(std::move(l));
    s.right = std::make_shared<const GroupSpec>(std::move(r));
    return s;
}

GroupSpec GroupSpec::direct_sum(GroupSpec l, GroupSpec r) {
    GroupSpec s = tensor_prod(std::move(l), std::move(r));
    s.kind = Kind::DirectSum;
    return s;
}

GroupSpec GroupSpec::parse(std::string_view text) {
    Parser p{text};
    GroupSpec out = p.spec();
    if (p.peek() != '\0')
        throw std::invalid_argument("group spec: trailing input at position " + std::to_string(p.pos));
    return out;
}

int GroupSpec::ambient_dim() const {
    switch (kind) {
        case Kind::FullUnitary:
        case Kind::SpecialUnitary:
        case Kind::Torus: return n;
        case Kind::Local: return 1 << n;
        case Kind::TensorProd: return left->ambient_dim() * right->ambient_dim();
        case Kind::DirectSum: return left->ambient_dim() + right->ambient_dim();
    }
    return 0;
}

std::string GroupSpec::to_string() const {
    switch (kind) {
        case Kind::FullUnitary: return "u(" + std::to_string(n) + ")";
        case Kind::SpecialUnitary: return "su(" + std::to_string(n) + ")";
        case Kind::Local: return "loc(" + std::to_string(n) + ")";
        case Kind::Torus: {
            std::string out = "torus(";
            for (size_t i = 0; i < weights.size(); ++i) {
                if (i) out += ",";
                out += std::to_string(weights[i]);
            }
            return out + ")";
        }
        case Kind::TensorProd: return "prod(" + left->to_string() + "," + right->to_string() + ")";
        case Kind::DirectSum: return "sum(" + left->to_string() + "," + right->to_string() + ")";
    }
    return {};
}

std::vector<CMat> orthonormalize(const std::vector<CMat>& gens, double tau) {
    std::vector<CMat> basis;
    for (const CMat& g : gens) {
        const double scale = g.norm();
        if (scale == 0.0) continue;
        CMat r = g;
        // Two Gram-Schmidt sweeps keep the basis orthonormal to rounding.
        for (int sweep = 0; sweep < 2; ++sweep)
            for (const CMat& b : basis) r -= real_inner(b, r) * b;
        if (r.norm() > tau * scale) basis.push_back(r / r.norm());
    }
    return basis;
}

CMat project_out(const CMat& m, const std::vector<CMat>& basis) {
    CMat r = m;
    for (const CMat& b : basis) r -= real_inner(b, r) * b;
    return r;
}

AlgebraBasis algebra_basis(const GroupSpec& spec, const Tolerances& tol) {
    std::vector<CMat> gens;
    switch (spec.kind) {
        case GroupSpec::Kind::FullUnitary: gens = u_basis(spec.n); break;
        case GroupSpec::Kind::SpecialUnitary: gens = su_basis(spec.n); break;
        case GroupSpec::Kind::Torus: {
            CMat d = CMat::Zero(spec.n, spec.n);
            for (int k = 0; k < spec.n; ++k) d(k, k) = Complex(0, static_cast<double>(spec.weights[k]));
            gens.push_back(d);
            break;
        }
        case GroupSpec::Kind::Local:
            for (int q = 0; q < spec.n; ++q)
                for (int p = 0; p < 3; ++p) gens.push_back(qubit_embed(spec.n, q, pauli(p)));
            break;
        case GroupSpec::Kind::TensorProd: {
            const AlgebraBasis l = algebra_basis(*spec.left, tol);
            const AlgebraBasis r = algebra_basis(*spec.right, tol);
            gens = tensor_join(l.elements, l.dim_ambient, r.elements, r.dim_ambient);
            break;
        }
        case GroupSpec::Kind::DirectSum: {
            const AlgebraBasis l = algebra_basis(*spec.left, tol);
            const AlgebraBasis r = algebra_basis(*spec.right, tol);
            const int n = spec.ambient_dim();
            for (const CMat& b : l.elements) gens.push_back(embed_block(b, n, 0));
            for (const CMat& b : r.elements) gens.push_back(embed_block(b, n, l.dim_ambient));
            break;
        }
    }
    AlgebraBasis out;
    out.dim_ambient = spec.ambient_dim();
    out.elements = orthonormalize(gens, tol.exact);
    return out;
}

AlgebraBasis torus_basis(const GroupSpec& spec, const Tolerances& tol) {
    std::vector<CMat> gens;
    switch (spec.kind) {
        case GroupSpec::Kind::FullUnitary:
            for (int k = 0; k < spec.n; ++k)
                gens.push_back(Complex(0, 1) * matrix_unit(spec.n, k, k));
            break;
        case GroupSpec::Kind::SpecialUnitary:
            for (int k = 0; k + 1 < spec.n; ++k)
                gens.push_back(Complex(0, 1) * (matrix_unit(spec.n, k, k) - matrix_unit(spec.n, k + 1, k + 1)));
            break;
        case GroupSpec::Kind::Torus: return algebra_basis(spec, tol);
        case GroupSpec::Kind::Local:
            for (int q = 0; q < spec.n; ++q) gens.push_back(qubit_embed(spec.n, q, pauli(2)));
            break;
        case GroupSpec::Kind::TensorProd: {
            const AlgebraBasis l = torus_basis(*spec.left, tol);
            const AlgebraBasis r = torus_basis(*spec.right, tol);
            gens = tensor_join(l.elements, l.dim_ambient, r.elements, r.dim_ambient);
            break;
        }
        case GroupSpec::Kind::DirectSum: {
            const AlgebraBasis l = torus_basis(*spec.left, tol);
            const AlgebraBasis r = torus_basis(*spec.right, tol);
            const int n = spec.ambient_dim();
            for (const CMat& b : l.elements) gens.push_back(embed_block(b, n, 0));
            for (const CMat& b : r.elements) gens.push_back(embed_block(b, n, l.dim_ambient));
            break;
        }
    }
    AlgebraBasis out;
    out.dim_ambient = spec.ambient_dim();
    out.elements = orthonormalize(gens, tol.exact);
    return out;
}

CMat haar_sample(const GroupSpec& spec, uint64_t seed) {
    switch (spec.kind) {
        case GroupSpec::Kind::FullUnitary: {
            auto rng = make_rng(seed);
            return haar_unitary(spec.n, rng);
        }
        case GroupSpec::Kind::SpecialUnitary: {
            auto rng = make_rng(seed);
            CMat u = haar_unitary(spec.n, rng);
            const double theta = std::arg(u.determinant());
            return u * std::exp(Complex(0, -theta / spec.n));
        }
        case GroupSpec::Kind::Torus: {
            auto rng = make_rng(seed);
            std::uniform_real_distribution<double> uni(0.0, 2.0 * M_PI);
            const double phi = uni(rng);
            CMat u = CMat::Zero(spec.n, spec.n);
            for (int k = 0; k < spec.n; ++k)
                u(k, k) = std::exp(Complex(0, static_cast<double>(spec.weights[k]) * phi));
            return u;
        }
        case GroupSpec::Kind::Local: {
            CMat u = CMat::Identity(1, 1);
            for (int q = 0; q < spec.n; ++q) {
                auto rng = make_rng(derive_seed(seed, static_cast<uint64_t>(q)));
                u = kron(u, su2_haar(rng));
            }
            return u;
        }
        case GroupSpec::Kind::TensorProd:
            return kron(haar_sample(*spec.left, derive_seed(seed, 0)),
                        haar_sample(*spec.right, derive_seed(seed, 1)));
        case GroupSpec::Kind::DirectSum:
            return direct_sum(haar_sample(*spec.left, derive_seed(seed, 0)),
                              haar_sample(*spec.right, derive_seed(seed, 1)));
    }
    throw std::logic_error("haar_sample: unreachable");
}

bool contains_algebra(const GroupSpec& spec, const CMat& omega, const Tolerances& tol) {
    if (!is_skew_hermitian(omega, tol.exact * std::max(1.0, omega.norm())))
        throw std::invalid_argument("contains_algebra: input is not skew-Hermitian");
    if (omega.rows() != spec.ambient_dim())
        throw DimensionMismatch("contains_algebra: dimension mismatch with group spec");
    const AlgebraBasis basis = algebra_basis(spec, tol);
    const double residual = project_out(omega, basis.elements).norm();
    return residual <= tol.feas * std::max(1.0, omega.norm());
}

} // namespace crange
