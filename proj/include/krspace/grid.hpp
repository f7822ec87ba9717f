#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace krspace {

enum class UnitMode { dimensionless, millimeters };

inline const char* to_string(UnitMode m) {
    return m == UnitMode::dimensionless ? "dimensionless" : "millimeters";
}

/// Uniform 1-D collocation grid.
///
/// Sample j sits at coord(j) = origin - extent/2 + j*spacing().  Field grids
/// use origin = 0 and span [-extent/2, +extent/2); scan axes may carry a
/// nonzero origin so that symmetric inclusive ranges (e.g. 41 points over
/// +-4) are representable.
///
/// The conjugate momentum grid has spacing 2*pi/extent and spans
/// [-pi/spacing, +pi/spacing).
struct Grid1D {
    std::size_t n_points = 512;
    double extent = 16.0;
    UnitMode unit_mode = UnitMode::dimensionless;
    double origin = 0.0;

    Grid1D() = default;
    Grid1D(std::size_t n, double ext, UnitMode mode = UnitMode::dimensionless,
           double org = 0.0)
        : n_points(n), extent(ext), unit_mode(mode), origin(org) {
        if (n_points < 2)
            throw std::invalid_argument("Grid1D: n_points must be >= 2, got " +
                                        std::to_string(n_points));
        if (!(extent > 0.0) || !std::isfinite(extent))
            throw std::invalid_argument("Grid1D: extent must be positive and finite");
    }

    [[nodiscard]] double spacing() const { return extent / static_cast<double>(n_points); }
    [[nodiscard]] double coord(std::size_t j) const {
        return origin - 0.5 * extent + spacing() * static_cast<double>(j);
    }
    [[nodiscard]] double min_coord() const { return coord(0); }

    /// Conjugate (momentum) grid: spacing 2*pi/extent, span [-pi/dx, +pi/dx).
    [[nodiscard]] Grid1D conjugate() const {
        if (origin != 0.0)
            throw std::invalid_argument("Grid1D::conjugate: only origin-0 grids have a conjugate");
        const double dp = 2.0 * std::numbers::pi / extent;
        return Grid1D(n_points, dp * static_cast<double>(n_points), unit_mode);
    }
};

/// Loose geometric equality; grid extents built through reciprocals round.
inline bool compatible(const Grid1D& a, const Grid1D& b, double rel_tol = 1e-9) {
    if (a.n_points != b.n_points || a.unit_mode != b.unit_mode) return false;
    const double s = std::abs(a.extent) + std::abs(b.extent);
    return std::abs(a.extent - b.extent) <= rel_tol * s &&
           std::abs(a.origin - b.origin) <= rel_tol * (s + 1.0);
}

} // namespace krspace
