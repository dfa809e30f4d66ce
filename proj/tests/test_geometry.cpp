#include <doctest.h>

#include <algorithm>
#include <fstream>

#include "crange/examples.hpp"
#include "crange/geometry.hpp"
#include "crange/linalg.hpp"
#include "crange/local.hpp"
#include "crange/range.hpp"
#include "test_helpers.hpp"

using namespace crange;

namespace {

// Exact triple-segment product set on a parameter grid (t = 0 included, so
// the three unit-circle corners are hit exactly).
std::vector<Complex> triple_segment_grid(int per_axis) {
    const Complex w = std::polar(1.0, 2.0 * M_PI / 3.0);
    std::vector<Complex> seg;
    for (int k = 0; k < per_axis; ++k) {
        const double t = static_cast<double>(k) / (per_axis - 1);
        seg.push_back((1.0 - t) + t * w);
    }
    std::vector<Complex> out;
    out.reserve(seg.size() * seg.size() * seg.size());
    for (const Complex& z1 : seg)
        for (const Complex& z2 : seg)
            for (const Complex& z3 : seg) out.push_back(z1 * z2 * z3);
    return out;
}

bool point_in_hull(const std::vector<Complex>& hull, Complex z, double tol) {
    const size_t n = hull.size();
    if (n == 1) return std::abs(z - hull[0]) <= tol;
    for (size_t i = 0; i < n; ++i) {
        const Complex a = hull[i], b = hull[(i + 1) % n];
        const double cr = (b.real() - a.real()) * (z.imag() - a.imag()) -
                          (b.imag() - a.imag()) * (z.real() - a.real());
        if (cr < -tol) return false;
    }
    return true;
}

} // namespace

TEST_CASE("convex hull") {
    std::vector<Complex> pts = {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0.5, 0.5}, {0.2, 0.7}, {1, 0.5}};
    const auto hull = convex_hull(pts);
    REQUIRE(hull.size() == 4);
    CHECK(polygon_area(hull) == doctest::Approx(1.0));

    // counterclockwise orientation: positive signed area term by term
    double signed_area = 0;
    for (size_t i = 0; i < hull.size(); ++i) {
        const Complex a = hull[i], b = hull[(i + 1) % hull.size()];
        signed_area += a.real() * b.imag() - b.real() * a.imag();
    }
    CHECK(signed_area > 0);

    CHECK(convex_hull({{2, 3}}).size() == 1);
    // collinear points are dropped
    CHECK(convex_hull({{0, 0}, {1, 1}, {2, 2}, {3, 3}}).size() == 2);
}

TEST_CASE("winding numbers") {
    std::vector<Complex> square = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
    CHECK(winding_number(square, {0, 0}) == 1);
    CHECK(winding_number(square, {5, 0}) == 0);

    // e^{3it} winds three times
    std::vector<Complex> circle3;
    for (int k = 0; k < 600; ++k)
        circle3.push_back(std::polar(1.0, 3.0 * 2.0 * M_PI * k / 600.0));
    CHECK(winding_number(circle3, {0, 0}) == 3);

    // inversion identity on random closed polylines
    auto rng = make_rng(5);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        std::vector<Complex> path;
        for (int k = 0; k < 12; ++k)
            path.push_back(Complex(uni(rng), uni(rng)) + Complex(2.5, 0));
        const Complex z0(0, 0); // far from the path, never on it
        std::vector<Complex> rev(path.rbegin(), path.rend());
        CHECK(winding_number(path, z0) == -winding_number(rev, z0));
    }

    CHECK_THROWS_AS(winding_number(square, {1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("scale set") {
    const auto seg = scale_set({{1, 0}}, 0.0, 1.0, 101);
    CHECK(seg.size() == 101);
    for (const Complex& z : seg) {
        CHECK(z.imag() == 0.0);
        CHECK(z.real() >= 0.0);
        CHECK(z.real() <= 1.0);
    }
    CHECK(std::abs(seg.front() - Complex(0, 0)) < 1e-15);
    CHECK(std::abs(seg.back() - Complex(1, 0)) < 1e-15);

    // [1,2] * [1,2] = [1,4]
    std::vector<Complex> base;
    for (int k = 0; k <= 50; ++k) base.push_back(Complex(1.0 + 0.02 * k, 0));
    const auto prod = scale_set(base, 1.0, 2.0, 51);
    double lo = 1e300, hi = -1e300;
    for (const Complex& z : prod) {
        lo = std::min(lo, z.real());
        hi = std::max(hi, z.real());
    }
    CHECK(lo == doctest::Approx(1.0));
    CHECK(hi == doctest::Approx(4.0));

    // identity scaling
    const auto same = scale_set(base, 1.0, 1.0, 7);
    CHECK(same.size() == base.size() * 7);
    for (size_t k = 0; k < base.size(); ++k) CHECK(std::abs(same[k] - base[k]) == 0.0);

    // scaled convex polygons stay convex: a second, finer sample lies inside
    // the hull of the first
    auto rng = make_rng(17);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int t = 0; t < 50; ++t) {
        std::vector<Complex> cloud;
        for (int k = 0; k < 12; ++k) cloud.push_back({uni(rng), uni(rng)});
        const auto poly = convex_hull(cloud);
        const double r = 0.3 + 0.2 * (t % 3), s = r + 0.1 + 0.3 * (t % 2);
        const auto hull1 = convex_hull(scale_set(poly, r, s, 40));
        // random lambda * (random convex combination of vertices)
        for (int k = 0; k < 50; ++k) {
            const double lam = r + (s - r) * (0.5 + 0.5 * uni(rng));
            Complex w{0, 0};
            double total = 0;
            for (const Complex& v : poly) {
                const double cw = 0.5 + 0.5 * uni(rng);
                w += cw * v;
                total += cw;
            }
            w /= total;
            CHECK(point_in_hull(hull1, lam * w, 1e-7));
        }
    }

    CHECK_THROWS_AS(scale_set(base, -0.1, 1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(scale_set(base, 2.0, 1.0, 5), std::invalid_argument);
}

TEST_CASE("occupancy grids and star-shapedness") {
    // filled disc
    std::vector<Complex> disc;
    auto rng = make_rng(3);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int k = 0; k < 60000; ++k) {
        const Complex z(uni(rng), uni(rng));
        if (std::abs(z) <= 1.0) disc.push_back(z);
    }
    const OccupancyGrid disc_grid = build_grid(disc, 40);
    CHECK(star_shaped_test(disc_grid, {0, 0}));
    CHECK(disc_grid.min_modulus < 0.05);
    CHECK(disc_grid.max_modulus == doctest::Approx(1.0).epsilon(1e-2));

    // butterfly: star-shaped from 0, not from 1
    const ExampleRangeData d2 = example_range_data(2);
    const RangeCloud w2 = sample_range(d2.c, d2.a, d2.spec, 50000, 7);
    const OccupancyGrid bf = build_grid(
        w2.points, 40, std::make_pair(Complex(-1.02, -1.02), Complex(1.02, 1.02)));
    CHECK(star_shaped_test(bf, {0, 0}));
    CHECK_FALSE(star_shaped_test(bf, {1.0, 0.0}));
    CHECK_THROWS_AS(star_shaped_test(bf, {100.0, 0.0}), std::invalid_argument);

    // triple-segment product region: no star center anywhere on a coarse scan
    const auto triple = triple_segment_grid(60);
    const OccupancyGrid tri = build_grid(triple, 40);
    bool any_center = false;
    for (int iy = 0; iy < tri.resolution && !any_center; ++iy)
        for (int ix = 0; ix < tri.resolution && !any_center; ++ix)
            any_center = star_shaped_test(tri, tri.cell_center(ix, iy));
    CHECK_FALSE(any_center);

    CHECK_THROWS_AS(build_grid({}, 16), std::invalid_argument);
}

TEST_CASE("hausdorff distance") {
    std::vector<Complex> a, b;
    for (int k = 0; k <= 100; ++k) {
        a.push_back({0.01 * k, 0.0});
        b.push_back({0.01 * k, 0.3});
    }
    CHECK(hausdorff_distance(a, b) == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(hausdorff_distance(a, a) == 0.0);

    b.push_back({3.0, 0.0});
    CHECK(hausdorff_distance(a, b) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("disc diagnostics") {
    const ExampleRangeData d1 = example_range_data(1);
    const RangeCloud w1 = sample_range(d1.c, d1.a, d1.spec, 4000, 9);
    const DiscReport rep1 = disc_diagnostic(w1, 128);
    CHECK(rep1.rotation_invariant);
    CHECK(rep1.annulus_suspected);
    CHECK(rep1.origin_gap == doctest::Approx(1.0).epsilon(1e-9));

    // certified local-symmetric pair approaches the origin: disc, no annulus
    CMat a = CMat::Zero(4, 4);
    a(1, 0) = 1.0;
    a(3, 2) = 1.0;
    const RangeCloud w2 = sample_range(a, a, GroupSpec::local(2), 20000, 10);
    const DiscReport rep2 = disc_diagnostic(w2, 128);
    CHECK(rep2.rotation_invariant);
    CHECK_FALSE(rep2.annulus_suspected);

    // report invariant under permutation of the points
    RangeCloud shuffled = w1;
    std::reverse(shuffled.points.begin(), shuffled.points.end());
    const DiscReport rep3 = disc_diagnostic(shuffled, 128);
    CHECK(rep3.rotation_invariant == rep1.rotation_invariant);
    CHECK(rep3.annulus_suspected == rep1.annulus_suspected);
    CHECK(rep3.origin_gap == rep1.origin_gap);
}

TEST_CASE("homotopy crossing for a certified local pair") {
    // A certified pair with rational torus witness; the loop t -> e^{t Omega}
    // is homotopic to its inverse inside the group, so the traced curve family
    // must cross the origin.
    CMat a = CMat::Zero(4, 4);
    a(1, 0) = 1.0;
    a(3, 2) = 1.0;
    const TlocResult feas = tloc_feasibility(a, 2);
    REQUIRE(feas.feasible);
    const auto coeff = tloc_factor_coefficients(feas.mu, 2);
    boost::multiprecision::cpp_int mlcm = 1;
    for (const Rational& q : coeff) mlcm = boost::multiprecision::lcm(mlcm, denominator(q));
    const int m = mlcm.convert_to<int>();
    CHECK(m == 2);

    const CMat omega = feas.omega();
    const CMat c = a;
    double min_abs = 1e300, max_abs = 0.0;
    std::vector<Complex> boundary;
    const int nt = 257, ns = 65;
    for (int it = 0; it < nt; ++it) {
        const double t = 2.0 * m * M_PI * it / (nt - 1);
        const CMat et = expm_skew(omega, t);
        for (int is = 0; is < ns; ++is) {
            const double s = (M_PI / 2.0) * is / (ns - 1);
            CMat rot(2, 2);
            rot << std::cos(s), std::sin(s), -std::sin(s), std::cos(s);
            const CMat us = kron(rot, rot);
            const CMat h = us.adjoint() * et * us;
            const Complex val = (c.adjoint() * h * a * h.adjoint()).trace();
            min_abs = std::min(min_abs, std::abs(val));
            max_abs = std::max(max_abs, std::abs(val));
            if (is == 0) boundary.push_back(val);
        }
    }
    CHECK(min_abs <= 0.05 * max_abs);
    CHECK(winding_number(boundary, {0, 0}) == m); // m * phi with phi = 1
}

TEST_CASE("svg writer") {
    const std::string path = "/tmp/crange_test.svg";
    std::vector<Complex> pts = {{0, 0}, {1, 0}, {0, 1}};
    write_svg(path, pts, convex_hull(pts));
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.find("<svg") != std::string::npos);
    CHECK(text.find("circle") != std::string::npos);
    CHECK(text.find("polygon") != std::string::npos);
    std::remove(path.c_str());
}
