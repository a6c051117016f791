#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "potentia/types.hpp"

namespace potentia {

/// Near-uniform deterministic sphere grid (golden-angle lattice), dim 3.
inline std::vector<Point> fibonacci_sphere(double radius, int count,
                                           const Point& center = {0.0, 0.0, 0.0}) {
    if (count <= 0) throw validation_error("fibonacci_sphere: count must be positive");
    if (!(radius > 0.0)) throw validation_error("fibonacci_sphere: radius must be positive");
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        double z = 1.0 - 2.0 * (i + 0.5) / count;
        double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        double phi = golden_angle * i;
        pts.push_back({center[0] + radius * rho * std::cos(phi),
                       center[1] + radius * rho * std::sin(phi),
                       center[2] + radius * z});
    }
    return pts;
}

/// Cubic lattice restricted to the closed ball of the given radius, dim 3.
inline std::vector<Point> ball_grid(double radius, double spacing,
                                    const Point& center = {0.0, 0.0, 0.0}) {
    if (!(radius > 0.0) || !(spacing > 0.0))
        throw validation_error("ball_grid: radius and spacing must be positive");
    std::vector<Point> pts;
    int m = static_cast<int>(std::floor(radius / spacing));
    for (int i = -m; i <= m; ++i)
        for (int j = -m; j <= m; ++j)
            for (int k = -m; k <= m; ++k) {
                double x = i * spacing, y = j * spacing, z = k * spacing;
                if (x * x + y * y + z * z <= radius * radius + 1e-12)
                    pts.push_back({center[0] + x, center[1] + y, center[2] + z});
            }
    return pts;
}

/// Axis-aligned box lattice with the given per-axis point counts, dim 3.
inline std::vector<Point> box_grid(const Point& lo, const Point& hi, int nx, int ny, int nz) {
    if (lo.size() != 3 || hi.size() != 3)
        throw validation_error("box_grid: corners must be 3-dimensional");
    if (nx < 1 || ny < 1 || nz < 1)
        throw validation_error("box_grid: counts must be >= 1");
    auto coord = [](double a, double b, int n, int i) {
        return n == 1 ? 0.5 * (a + b) : a + (b - a) * i / (n - 1);
    };
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(nx) * ny * nz);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            for (int k = 0; k < nz; ++k)
                pts.push_back({coord(lo[0], hi[0], nx, i), coord(lo[1], hi[1], ny, j),
                               coord(lo[2], hi[2], nz, k)});
    return pts;
}

/// Uniform spherical shell: total mass spread evenly over a sphere grid.
inline DiscreteMeasure shell_measure(double radius, double mass, int count,
                                     const Point& center = {0.0, 0.0, 0.0}) {
    if (!(mass >= 0.0)) throw validation_error("shell_measure: mass must be >= 0");
    auto pts = fibonacci_sphere(radius, count, center);
    return make_measure(pts, std::vector<double>(pts.size(), mass / count));
}

}  // namespace potentia
