#include "crange/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace crange {

namespace {

double cross(Complex o, Complex a, Complex b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

} // namespace

std::pair<int, int> OccupancyGrid::cell_of(Complex z) const {
    const double w = hi.real() - lo.real(), h = hi.imag() - lo.imag();
    int ix = static_cast<int>((z.real() - lo.real()) / w * resolution);
    int iy = static_cast<int>((z.imag() - lo.imag()) / h * resolution);
    ix = std::clamp(ix, 0, resolution - 1);
    iy = std::clamp(iy, 0, resolution - 1);
    return {ix, iy};
}

Complex OccupancyGrid::cell_center(int ix, int iy) const {
    const double w = hi.real() - lo.real(), h = hi.imag() - lo.imag();
    return {lo.real() + (ix + 0.5) * w / resolution, lo.imag() + (iy + 0.5) * h / resolution};
}

bool OccupancyGrid::inside(Complex z) const {
    return z.real() >= lo.real() && z.real() <= hi.real() && z.imag() >= lo.imag() &&
           z.imag() <= hi.imag();
}

size_t OccupancyGrid::occupied_count() const {
    size_t n = 0;
    for (uint8_t c : cells) n += (c != 0);
    return n;
}

OccupancyGrid build_grid(const std::vector<Complex>& points, int resolution,
                         std::optional<std::pair<Complex, Complex>> bounds) {
    if (points.empty()) throw std::invalid_argument("build_grid: empty point set");
    if (resolution < 1) throw std::invalid_argument("build_grid: resolution must be positive");
    OccupancyGrid g;
    g.resolution = resolution;
    if (bounds) {
        g.lo = bounds->first;
        g.hi = bounds->second;
    } else {
        double xlo = points[0].real(), xhi = xlo, ylo = points[0].imag(), yhi = ylo;
        for (const Complex& z : points) {
            xlo = std::min(xlo, z.real());
            xhi = std::max(xhi, z.real());
            ylo = std::min(ylo, z.imag());
            yhi = std::max(yhi, z.imag());
        }
        const double pad = 1e-9 + 1e-9 * std::max(xhi - xlo, yhi - ylo);
        g.lo = {xlo - pad, ylo - pad};
        g.hi = {xhi + pad, yhi + pad};
    }
    if (g.hi.real() <= g.lo.real() || g.hi.imag() <= g.lo.imag())
        throw std::invalid_argument("build_grid: degenerate bounds");
    g.cells.assign(static_cast<size_t>(resolution) * resolution, 0);
    g.min_modulus = std::abs(points[0]);
    g.max_modulus = g.min_modulus;
    for (const Complex& z : points) {
        const double m = std::abs(z);
        g.min_modulus = std::min(g.min_modulus, m);
        g.max_modulus = std::max(g.max_modulus, m);
        if (!g.inside(z)) throw std::invalid_argument("build_grid: point outside the stated bounds");
        auto [ix, iy] = g.cell_of(z);
        g.cells[static_cast<size_t>(iy) * resolution + ix] = 1;
    }
    return g;
}

std::vector<Complex> convex_hull(std::vector<Complex> pts) {
    if (pts.empty()) throw std::invalid_argument("convex_hull: needs at least one point");
    std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<Complex> hull(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) { // lower
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (size_t i = n - 1, t = k + 1; i-- > 0;) { // upper
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

double polygon_area(const std::vector<Complex>& hull) {
    double s = 0;
    const size_t n = hull.size();
    for (size_t i = 0; i < n; ++i) {
        const Complex& a = hull[i];
        const Complex& b = hull[(i + 1) % n];
        s += a.real() * b.imag() - b.real() * a.imag();
    }
    return std::abs(s) / 2.0;
}

int winding_number(const std::vector<Complex>& path, Complex z0) {
    if (path.size() < 2) throw std::invalid_argument("winding_number: path too short");
    // Reject z0 on the path (within 1e-12 of any segment).
    for (size_t i = 0; i < path.size(); ++i) {
        const Complex a = path[i], b = path[(i + 1) % path.size()];
        const Complex ab = b - a, az = z0 - a;
        const double len2 = std::norm(ab);
        double t = len2 > 0 ? std::clamp((az.real() * ab.real() + az.imag() * ab.imag()) / len2, 0.0, 1.0) : 0.0;
        if (std::abs(z0 - (a + t * ab)) <= 1e-12)
            throw std::invalid_argument("winding_number: z0 lies on the path");
    }
    double total = 0;
    for (size_t i = 0; i < path.size(); ++i) {
        const Complex a = path[i] - z0, b = path[(i + 1) % path.size()] - z0;
        total += std::arg(b / a);
    }
    return static_cast<int>(std::llround(total / (2.0 * M_PI)));
}

double cloud_diameter(const std::vector<Complex>& points) {
    const std::vector<Complex> hull = convex_hull(points);
    double d = 0;
    for (size_t i = 0; i < hull.size(); ++i)
        for (size_t j = i + 1; j < hull.size(); ++j) d = std::max(d, std::abs(hull[i] - hull[j]));
    return d;
}

namespace {

// Directed Hausdorff via bucketed nearest-neighbour lookups.
struct Buckets {
    double cell;
    Complex lo;
    int nx, ny;
    std::vector<std::vector<Complex>> bins;

    Buckets(const std::vector<Complex>& pts, double cell_size) : cell(cell_size) {
        double xlo = pts[0].real(), xhi = xlo, ylo = pts[0].imag(), yhi = ylo;
        for (const Complex& z : pts) {
            xlo = std::min(xlo, z.real());
            xhi = std::max(xhi, z.real());
            ylo = std::min(ylo, z.imag());
            yhi = std::max(yhi, z.imag());
        }
        lo = {xlo, ylo};
        nx = std::max(1, static_cast<int>((xhi - xlo) / cell) + 1);
        ny = std::max(1, static_cast<int>((yhi - ylo) / cell) + 1);
        bins.resize(static_cast<size_t>(nx) * ny);
        for (const Complex& z : pts) bins[index(z)].push_back(z);
    }
    size_t index(Complex z) const {
        int ix = std::clamp(static_cast<int>((z.real() - lo.real()) / cell), 0, nx - 1);
        int iy = std::clamp(static_cast<int>((z.imag() - lo.imag()) / cell), 0, ny - 1);
        return static_cast<size_t>(iy) * nx + ix;
    }
    double nearest(Complex z) const {
        const int cx = std::clamp(static_cast<int>((z.real() - lo.real()) / cell), 0, nx - 1);
        const int cy = std::clamp(static_cast<int>((z.imag() - lo.imag()) / cell), 0, ny - 1);
        double best = std::numeric_limits<double>::infinity();
        for (int ring = 0; ring < std::max(nx, ny) + 1; ++ring) {
            if (best < (ring - 1) * cell && ring > 0) break; // no closer point possible
            bool any = false;
            for (int iy = cy - ring; iy <= cy + ring; ++iy) {
                if (iy < 0 || iy >= ny) continue;
                for (int ix = cx - ring; ix <= cx + ring; ++ix) {
                    if (ix < 0 || ix >= nx) continue;
                    if (std::max(std::abs(ix - cx), std::abs(iy - cy)) != ring) continue;
                    any = true;
                    for (const Complex& w : bins[static_cast<size_t>(iy) * nx + ix])
                        best = std::min(best, std::abs(z - w));
                }
            }
            if (!any && best < std::numeric_limits<double>::infinity() && ring > 1) break;
        }
        return best;
    }
};

double directed_hausdorff(const std::vector<Complex>& from, const Buckets& to) {
    double worst = 0;
    for (const Complex& z : from) worst = std::max(worst, to.nearest(z));
    return worst;
}

} // namespace

double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff_distance: empty cloud");
    double extent = 0;
    for (const Complex& z : a) extent = std::max(extent, std::abs(z));
    for (const Complex& z : b) extent = std::max(extent, std::abs(z));
    const double cell = std::max(extent / 64.0, 1e-12);
    const Buckets ba(a, cell), bb(b, cell);
    return std::max(directed_hausdorff(a, bb), directed_hausdorff(b, ba));
}

DiscReport disc_diagnostic(const RangeCloud& cloud, int grid_res) {
    if (cloud.points.empty()) throw std::invalid_argument("disc_diagnostic: empty cloud");
    (void)grid_res;
    DiscReport rep;
    double min_mod = std::abs(cloud.points[0]), max_mod = min_mod;
    for (const Complex& z : cloud.points) {
        min_mod = std::min(min_mod, std::abs(z));
        max_mod = std::max(max_mod, std::abs(z));
    }
    rep.origin_gap = min_mod;
    const double diam = cloud_diameter(cloud.points);
    rep.rotation_invariant = true;
    for (double theta : {2.0 * M_PI / 7.0, 1.0}) {
        std::vector<Complex> rotated(cloud.points.size());
        const Complex w = std::polar(1.0, theta);
        for (size_t i = 0; i < cloud.points.size(); ++i) rotated[i] = w * cloud.points[i];
        if (hausdorff_distance(cloud.points, rotated) > 0.05 * std::max(diam, 1e-300)) {
            rep.rotation_invariant = false;
            break;
        }
    }
    rep.annulus_suspected = rep.rotation_invariant && rep.origin_gap > 0.1 * max_mod;
    return rep;
}

std::vector<Complex> scale_set(const std::vector<Complex>& points, double r, double s,
                               int samples) {
    if (r < 0 || r > s) throw std::invalid_argument("scale_set: requires 0 <= r <= s");
    if (samples < 1) throw std::invalid_argument("scale_set: samples must be positive");
    std::vector<double> lambdas;
    if (samples == 1) {
        lambdas.push_back((r + s) / 2.0);
    } else {
        for (int k = 0; k < samples; ++k)
            lambdas.push_back(r + (s - r) * static_cast<double>(k) / (samples - 1));
    }
    std::vector<Complex> out;
    out.reserve(points.size() * lambdas.size());
    for (double lam : lambdas)
        for (const Complex& z : points) out.push_back(lam * z);
    return out;
}

bool star_shaped_test(const OccupancyGrid& grid, Complex center) {
    if (!grid.inside(center)) throw std::invalid_argument("star_shaped_test: center outside bounds");
    const double cell = std::min((grid.hi.real() - grid.lo.real()),
                                 (grid.hi.imag() - grid.lo.imag())) / grid.resolution;
    // A ray point passes if its cell or an immediate neighbour is occupied;
    // cells straddling the region boundary otherwise block rays that run
    // along the edge.
    auto passable = [&](Complex z) {
        auto [jx, jy] = grid.cell_of(z);
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                const int nx = jx + dx, ny = jy + dy;
                if (nx < 0 || ny < 0 || nx >= grid.resolution || ny >= grid.resolution) continue;
                if (grid.occupied(nx, ny)) return true;
            }
        return false;
    };
    for (int iy = 0; iy < grid.resolution; ++iy)
        for (int ix = 0; ix < grid.resolution; ++ix) {
            if (!grid.occupied(ix, iy)) continue;
            const Complex from = grid.cell_center(ix, iy);
            const double dist = std::abs(from - center);
            const int steps = std::max(1, static_cast<int>(dist / (cell / 3.0)));
            for (int k = 0; k <= steps; ++k) {
                const Complex z = from + (center - from) * (static_cast<double>(k) / steps);
                if (!passable(z)) return false;
            }
        }
    return true;
}

void write_svg(const std::string& path, const std::vector<Complex>& points,
               const std::vector<Complex>& hull) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write SVG: " + path);
    double xlo = -1, xhi = 1, ylo = -1, yhi = 1;
    if (!points.empty()) {
        xlo = xhi = points[0].real();
        ylo = yhi = points[0].imag();
        for (const Complex& z : points) {
            xlo = std::min(xlo, z.real());
            xhi = std::max(xhi, z.real());
            ylo = std::min(ylo, z.imag());
            yhi = std::max(yhi, z.imag());
        }
    }
    const double span = std::max({xhi - xlo, yhi - ylo, 1e-9});
    const double margin = 0.05 * span;
    const double scale = 800.0 / (span + 2 * margin);
    auto px = [&](Complex z) {
        const double x = (z.real() - xlo + margin) * scale;
        const double y = 800.0 - (z.imag() - ylo + margin) * scale;
        return std::pair<double, double>{x, y};
    };
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
           "viewBox=\"0 0 800 800\">\n";
    out << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
    char buf[160];
    for (const Complex& z : points) {
        auto [x, y] = px(z);
        std::snprintf(buf, sizeof buf,
                      "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"1.5\" fill=\"#1f77b4\" fill-opacity=\"0.5\"/>\n",
                      x, y);
        out << buf;
    }
    if (hull.size() >= 2) {
        out << "<polygon points=\"";
        for (const Complex& z : hull) {
            auto [x, y] = px(z);
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", x, y);
            out << buf;
        }
        out << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";
    }
    out << "</svg>\n";
}

} // namespace crange
