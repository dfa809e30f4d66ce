#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crange/matrix.hpp"
#include "crange/range.hpp"

namespace crange {

/// Boolean occupancy of an m x m cell grid over a bounding rectangle,
/// together with the modulus extremes of the source points.
struct OccupancyGrid {
    int resolution = 0;
    Complex lo, hi; // rectangle corners
    std::vector<uint8_t> cells;
    double min_modulus = 0.0;
    double max_modulus = 0.0;

    bool occupied(int ix, int iy) const { return cells[static_cast<size_t>(iy) * resolution + ix] != 0; }
    std::pair<int, int> cell_of(Complex z) const;
    Complex cell_center(int ix, int iy) const;
    bool inside(Complex z) const;
    size_t occupied_count() const;
};

OccupancyGrid build_grid(const std::vector<Complex>& points, int resolution,
                         std::optional<std::pair<Complex, Complex>> bounds = std::nullopt);

/// Counterclockwise convex hull, collinear points dropped, lexicographic
/// (re, im) tie-breaking. A single distinct point hulls to itself.
std::vector<Complex> convex_hull(std::vector<Complex> points);

double polygon_area(const std::vector<Complex>& hull);

/// Signed full turns of the closed polyline around z0 (summed angle
/// increments over 2 pi, rounded). Throws if z0 lies on the path.
int winding_number(const std::vector<Complex>& path, Complex z0);

struct DiscReport {
    bool rotation_invariant = false;
    double origin_gap = 0.0;
    bool annulus_suspected = false;
};

/// rotation_invariant: Hausdorff(cloud, e^{i theta} cloud) <= 0.05 * diameter
/// for theta in {2 pi / 7, 1}. annulus_suspected: rotation invariant but the
/// smallest modulus stays above 0.1 times the largest.
DiscReport disc_diagnostic(const RangeCloud& cloud, int grid_res);

/// {lambda * w | lambda in [r, s], w in points} over a deterministic
/// lambda grid of `samples` values.
std::vector<Complex> scale_set(const std::vector<Complex>& points, double r, double s,
                               int samples);

/// Discrete visibility: every occupied cell must see the center through
/// occupied cells only. Resolution-dependent heuristic.
bool star_shaped_test(const OccupancyGrid& grid, Complex center);

/// Exact symmetric Hausdorff distance between point clouds (grid-bucketed
/// nearest-neighbour search).
double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

double cloud_diameter(const std::vector<Complex>& points);

/// Fixed 800x800 viewport scatter; points as radius-1.5 dots, optional hull
/// polyline.
void write_svg(const std::string& path, const std::vector<Complex>& points,
               const std::vector<Complex>& hull);

} // namespace crange
