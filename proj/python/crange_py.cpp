#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crange/examples.hpp"
#include "crange/geometry.hpp"
#include "crange/linalg.hpp"
#include "crange/local.hpp"
#include "crange/range.hpp"
#include "crange/symmetry.hpp"

namespace py = pybind11;
using namespace crange;

namespace {

std::vector<std::string> rationals_to_strings(const std::vector<Rational>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const Rational& q : v) out.push_back(q.str());
    return out;
}

} // namespace

PYBIND11_MODULE(_crange, m) {
    m.doc() = "relative C-numerical ranges, orbit symmetry certificates and "
              "the 4x4 local classification";

    py::register_exception<DimensionMismatch>(m, "DimensionError", PyExc_ValueError);

    m.def("frobenius_inner", &frobenius_inner, py::arg("c"), py::arg("a"));
    m.def("commutator", &commutator, py::arg("x"), py::arg("y"));
    m.def("kron", &kron, py::arg("a"), py::arg("b"));
    m.def("direct_sum", &direct_sum, py::arg("a"), py::arg("b"));
    m.def(
        "expm_skew", [](const CMat& omega, double t) { return expm_skew(omega, t); },
        py::arg("omega"), py::arg("t") = 1.0);
    m.def(
        "is_nilpotent", [](const CMat& a) { return is_nilpotent(a); }, py::arg("a"));

    m.def(
        "haar_sample",
        [](const std::string& spec, uint64_t seed) {
            return haar_sample(GroupSpec::parse(spec), seed);
        },
        py::arg("spec"), py::arg("seed") = 0);
    m.def(
        "algebra_basis",
        [](const std::string& spec) { return algebra_basis(GroupSpec::parse(spec)).elements; },
        py::arg("spec"));
    m.def(
        "torus_basis",
        [](const std::string& spec) { return torus_basis(GroupSpec::parse(spec)).elements; },
        py::arg("spec"));
    m.def(
        "contains_algebra",
        [](const std::string& spec, const CMat& omega) {
            return contains_algebra(GroupSpec::parse(spec), omega);
        },
        py::arg("spec"), py::arg("omega"));

    m.def(
        "trace_point", [](const CMat& c, const CMat& a, const CMat& u) { return trace_point(c, a, u); },
        py::arg("c"), py::arg("a"), py::arg("u"));
    m.def(
        "sample_range",
        [](const CMat& c, const CMat& a, const std::string& spec, size_t count, uint64_t seed) {
            return sample_range(c, a, GroupSpec::parse(spec), count, seed).points;
        },
        py::arg("c"), py::arg("a"), py::arg("spec"), py::arg("count") = 10000,
        py::arg("seed") = 0);
    m.def(
        "radius",
        [](const CMat& c, const CMat& a, const std::string& spec, int restarts, uint64_t seed) {
            const RadiusResult r = radius(c, a, GroupSpec::parse(spec), restarts, seed);
            py::dict d;
            d["value"] = r.value;
            d["converged"] = r.converged;
            d["restarts"] = r.restarts;
            d["maximizer"] = r.maximizer;
            return d;
        },
        py::arg("c"), py::arg("a"), py::arg("spec"), py::arg("restarts") = 16,
        py::arg("seed") = 0);
    m.def(
        "hermitian_interval",
        [](const CMat& c, const CMat& a) { return hermitian_interval(c, a); }, py::arg("c"),
        py::arg("a"));
    m.def(
        "local_numerical_range",
        [](const CMat& a, int n, size_t count, uint64_t seed) {
            return local_numerical_range(a, n, count, seed).points;
        },
        py::arg("a"), py::arg("n"), py::arg("count") = 10000, py::arg("seed") = 0);

    m.def(
        "detect_weak_symmetry",
        [](const CMat& a, const std::string& spec) {
            const SymmetryCertificate cert = detect_weak_symmetry(a, GroupSpec::parse(spec));
            py::dict d;
            d["verdict"] = cert.verdict;
            d["phi"] = cert.phi;
            d["residual"] = cert.residual;
            if (cert.has_omega) d["omega"] = cert.omega;
            return d;
        },
        py::arg("a"), py::arg("spec"));
    m.def(
        "blockshift_canonical",
        [](const CMat& a) {
            const BlockshiftResult r = blockshift_canonical(a);
            py::dict d;
            d["ok"] = r.ok;
            if (r.ok) {
                d["u"] = r.u;
                d["m"] = r.m;
                d["partition"] = r.partition.sizes;
                d["off_pattern_mass"] = r.off_pattern_mass;
            } else {
                d["residual"] = r.residual;
            }
            return d;
        },
        py::arg("a"));
    m.def(
        "separation_index",
        [](const CMat& a) {
            const SeparationIndexResult r = separation_index(a);
            py::dict d;
            d["is_one"] = r.is_one;
            if (r.upper_bound) d["upper_bound"] = *r.upper_bound;
            return d;
        },
        py::arg("a"));

    m.def(
        "tloc_feasibility",
        [](const CMat& a, int n) {
            const TlocResult r = tloc_feasibility(a, n);
            py::dict d;
            d["feasible"] = r.feasible;
            if (r.feasible) {
                d["mu"] = rationals_to_strings(r.mu);
                d["omega"] = r.omega();
            }
            return d;
        },
        py::arg("a"), py::arg("n"));
    m.def(
        "classify_4x4",
        [](const CMat& a, int restarts, uint64_t seed) {
            const ClassifyResult r = classify_4x4(a, restarts, seed);
            py::dict d;
            d["found"] = r.found;
            d["off_pattern_mass"] = r.off_pattern_mass;
            if (r.found) {
                d["label"] = r.label.index;
                d["transposed"] = r.label.transposed;
                d["u_local"] = r.u_local;
            }
            return d;
        },
        py::arg("a"), py::arg("restarts") = 64, py::arg("seed") = 0);
    m.def(
        "conjecture_check",
        [](const CMat& a, int n) {
            const ConjectureResult r = conjecture_check(a, n);
            py::dict d;
            d["found"] = r.found;
            d["group_size"] = r.group_size;
            if (r.found) {
                d["witness"] = r.witness.matrix();
                d["partition"] = r.partition.sizes;
                d["used_out"] = r.used_out;
            }
            return d;
        },
        py::arg("a"), py::arg("n"));
    m.def("perm_group_order", [](int n) { return perm_group_ex(n).elements.size(); },
          py::arg("n"));
    m.def(
        "invariance_check",
        [](int n, int trials, uint64_t seed) { return invariance_check_Etloc(n, trials, seed); },
        py::arg("n"), py::arg("trials"), py::arg("seed") = 0);

    m.def("convex_hull", &convex_hull, py::arg("points"));
    m.def("winding_number", &winding_number, py::arg("path"), py::arg("z0"));
    m.def(
        "disc_diagnostic",
        [](const std::vector<Complex>& points, int grid_res) {
            RangeCloud cloud;
            cloud.points = points;
            const DiscReport rep = disc_diagnostic(cloud, grid_res);
            py::dict d;
            d["rotation_invariant"] = rep.rotation_invariant;
            d["origin_gap"] = rep.origin_gap;
            d["annulus_suspected"] = rep.annulus_suspected;
            return d;
        },
        py::arg("points"), py::arg("grid_res") = 256);
    m.def("hausdorff_distance", &hausdorff_distance, py::arg("a"), py::arg("b"));
    m.def("scale_set", &scale_set, py::arg("points"), py::arg("r"), py::arg("s"),
          py::arg("samples"));

    m.def("example4_matrix", &example4_matrix);
    m.def(
        "example_range_data",
        [](int index) {
            const ExampleRangeData d = example_range_data(index);
            py::dict out;
            out["c"] = d.c;
            out["a"] = d.a;
            out["spec"] = d.spec.to_string();
            out["default_samples"] = d.default_samples;
            return out;
        },
        py::arg("index"));
}
