#include "crange/matrix_json.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace crange {

using nlohmann::json;

std::string matrix_to_json(const CMat& m) {
    require_square(m, "matrix_to_json");
    json entries = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        entries.push_back(std::move(row));
    }
    json out;
    out["n"] = m.rows();
    out["entries"] = std::move(entries);
    return out.dump();
}

CMat matrix_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("matrix JSON parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
        throw std::runtime_error("matrix JSON: expected object with fields 'n' and 'entries'");
    const auto n = j["n"].get<Eigen::Index>();
    if (n <= 0) throw std::runtime_error("matrix JSON: 'n' must be positive");
    const auto& entries = j["entries"];
    if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != n)
        throw std::runtime_error("matrix JSON: 'entries' must be an n x n array");
    CMat m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = entries[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
            throw std::runtime_error("matrix JSON: 'entries' must be an n x n array");
        for (Eigen::Index jj = 0; jj < n; ++jj) {
            const auto& cell = row[static_cast<size_t>(jj)];
            if (!cell.is_array() || cell.size() != 2)
                throw std::runtime_error("matrix JSON: each entry must be [re, im]");
            m(i, jj) = Complex(cell[0].get<double>(), cell[1].get<double>());
        }
    }
    return m;
}

CMat load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return matrix_from_json(ss.str());
}

void save_matrix(const std::string& path, const CMat& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write matrix file: " + path);
    out << matrix_to_json(m) << "\n";
}

std::string content_hash(const CMat& m) {
    uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](const void* p, size_t len) {
        const auto* b = static_cast<const unsigned char*>(p);
        for (size_t i = 0; i < len; ++i) {
            h ^= b[i];
            h *= 1099511628211ULL;
        }
    };
    const uint64_t n = static_cast<uint64_t>(m.rows());
    mix(&n, sizeof n);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const double re = m(i, j).real(), im = m(i, j).imag();
            mix(&re, sizeof re);
            mix(&im, sizeof im);
        }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace crange
