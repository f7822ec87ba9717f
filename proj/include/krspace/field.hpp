#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "dft.hpp"
#include "grid.hpp"

namespace krspace {

using cplx = std::complex<double>;

/// Which domain the samples live in (position x or transverse momentum p).
enum class FieldSpace { position, momentum };

/// HeNe optical wave vector, 2*pi/633nm, in rad/mm.
inline constexpr double k_hene_per_mm = 2.0 * std::numbers::pi / 633.0e-6;

/// Complex wave field sampled on a uniform 1-D grid.
///
/// The L2 norm is sum |psi_j|^2 * spacing.  `wavenumber_k` carries the
/// optical wave vector in millimeter mode; in dimensionless mode curvature
/// phases use k = 1.
struct SampledField {
    Grid1D grid;
    FieldSpace space = FieldSpace::position;
    double wavenumber_k = k_hene_per_mm;
    std::vector<cplx> amplitudes;

    [[nodiscard]] double norm_squared() const {
        double s = 0.0;
        for (const cplx& a : amplitudes) s += std::norm(a);
        return s * grid.spacing();
    }
    [[nodiscard]] double effective_k() const {
        return grid.unit_mode == UnitMode::millimeters ? wavenumber_k : 1.0;
    }
};

inline void require_valid(const SampledField& f, const char* who) {
    if (f.amplitudes.size() != f.grid.n_points)
        throw std::invalid_argument(std::string(who) + ": amplitude count does not match grid");
    if (!std::isfinite(f.norm_squared()))
        throw std::invalid_argument(std::string(who) + ": field norm is not finite");
}

inline void require_normalized(const SampledField& f, const char* who,
                               double tol = 1e-12) {
    require_valid(f, who);
    const double n2 = f.norm_squared();
    if (std::abs(n2 - 1.0) > tol * std::max(1.0, n2))
        throw std::invalid_argument(std::string(who) +
                                    ": field is not L2-normalized (|psi|^2 integrates to " +
                                    std::to_string(n2) + ")");
}

/// Rescales to unit L2 norm (sum |psi|^2 dx = 1 within 1e-12).
inline SampledField normalized(SampledField f) {
    require_valid(f, "normalized");
    const double n2 = f.norm_squared();
    if (n2 <= 0.0)
        throw std::invalid_argument("normalized: field has zero norm");
    const double inv = 1.0 / std::sqrt(n2);
    for (cplx& a : f.amplitudes) a *= inv;
    return f;
}

/// Gaussian beam amplitude exp(-(x-c)^2/(2 sigma^2) + i k (x-c)^2/(2R)),
/// normalized to unit L2 norm.  R = infinity gives a purely real field.
///
/// The grid must span at least 8 waists so the truncated tails stay below
/// the normalization tolerance.
inline SampledField make_gaussian(const Grid1D& grid, double waist,
                                  double curvature_radius = std::numeric_limits<double>::infinity(),
                                  double center = 0.0,
                                  double wavenumber = k_hene_per_mm) {
    if (!(waist > 0.0))
        throw std::invalid_argument("make_gaussian: waist must be positive");
    if (grid.extent < 8.0 * waist)
        throw std::invalid_argument(
            "make_gaussian: grid extent " + std::to_string(grid.extent) +
            " too small for waist " + std::to_string(waist) +
            "; need extent >= " + std::to_string(8.0 * waist) +
            " to keep truncation below tolerance");
    SampledField f;
    f.grid = grid;
    f.space = FieldSpace::position;
    f.wavenumber_k = wavenumber;
    f.amplitudes.resize(grid.n_points);
    const bool flat = std::isinf(curvature_radius);
    const double keff = grid.unit_mode == UnitMode::millimeters ? wavenumber : 1.0;
    for (std::size_t j = 0; j < grid.n_points; ++j) {
        const double u = grid.coord(j) - center;
        const double mag = std::exp(-u * u / (2.0 * waist * waist));
        if (flat)
            f.amplitudes[j] = cplx{mag, 0.0};
        else
            f.amplitudes[j] = std::polar(mag, keff * u * u / (2.0 * curvature_radius));
    }
    return normalized(std::move(f));
}

/// Multiplicative slit: zero for |x| <= half_width, untouched elsewhere.
/// The result is deliberately NOT renormalized.
inline SampledField apply_obstruction(SampledField f, double half_width) {
    require_valid(f, "apply_obstruction");
    if (half_width == 0.0) return f;
    if (!(half_width > 0.0) || half_width >= 0.5 * f.grid.extent)
        throw std::invalid_argument("apply_obstruction: need 0 < half_width < extent/2");
    for (std::size_t j = 0; j < f.grid.n_points; ++j)
        if (std::abs(f.grid.coord(j)) <= half_width) f.amplitudes[j] = cplx{0.0, 0.0};
    return f;
}

namespace detail {

/// psi_tilde(p_m) = dx/sqrt(2 pi) * sum_j psi_j exp(-i p_m x_j) on the
/// conjugate grid; the unitary kernel makes Parseval exact on the grid.
inline std::vector<cplx> unitary_forward(const std::vector<cplx>& v, const Grid1D& g,
                                         const Grid1D& conj) {
    auto out = ft_samples(v, g.min_coord(), g.spacing(), conj.min_coord(),
                          conj.spacing(), -1);
    const double w = g.spacing() / std::sqrt(2.0 * std::numbers::pi);
    for (auto& z : out) z *= w;
    return out;
}

inline std::vector<cplx> unitary_inverse(const std::vector<cplx>& v, const Grid1D& conj,
                                         const Grid1D& g) {
    auto out = ft_samples(v, conj.min_coord(), conj.spacing(), g.min_coord(),
                          g.spacing(), +1);
    const double w = conj.spacing() / std::sqrt(2.0 * std::numbers::pi);
    for (auto& z : out) z *= w;
    return out;
}

} // namespace detail

/// Unitary transform to the conjugate momentum grid,
/// psi_tilde(p) = (2 pi)^(-1/2) integral psi(x) exp(-i p x) dx.
inline SampledField to_momentum(const SampledField& f) {
    require_valid(f, "to_momentum");
    if (f.space != FieldSpace::position)
        throw std::invalid_argument("to_momentum: field is already in momentum space");
    SampledField out;
    out.grid = f.grid.conjugate();
    out.space = FieldSpace::momentum;
    out.wavenumber_k = f.wavenumber_k;
    out.amplitudes = detail::unitary_forward(f.amplitudes, f.grid, out.grid);
    return out;
}

/// Inverse of to_momentum (kernel exp(+i p x)/sqrt(2 pi)).
inline SampledField to_position(const SampledField& f) {
    require_valid(f, "to_position");
    if (f.space != FieldSpace::momentum)
        throw std::invalid_argument("to_position: field is already in position space");
    SampledField out;
    out.grid = f.grid.conjugate();
    out.space = FieldSpace::position;
    out.wavenumber_k = f.wavenumber_k;
    out.amplitudes = detail::unitary_inverse(f.amplitudes, f.grid, out.grid);
    return out;
}

/// Trigonometric evaluation of the field at an arbitrary point (spectrally
/// accurate for fields resolved by the grid).
inline cplx field_value_at(const SampledField& f, double x) {
    require_valid(f, "field_value_at");
    if (f.space != FieldSpace::position)
        throw std::invalid_argument("field_value_at: expects a position-space field");
    const Grid1D conj = f.grid.conjugate();
    const auto coeff = detail::unitary_forward(f.amplitudes, f.grid, conj);
    const double dp = conj.spacing(), p0 = conj.min_coord();
    cplx acc{0.0, 0.0};
    const cplx step = std::polar(1.0, dp * x);
    cplx ph = std::polar(1.0, p0 * x);
    for (std::size_t m = 0; m < coeff.size(); ++m, ph *= step) acc += coeff[m] * ph;
    return acc * (dp / std::sqrt(2.0 * std::numbers::pi));
}

/// Direct-sum psi_tilde(p) at an arbitrary momentum.
inline cplx momentum_value_at(const SampledField& f, double p) {
    require_valid(f, "momentum_value_at");
    if (f.space != FieldSpace::position)
        throw std::invalid_argument("momentum_value_at: expects a position-space field");
    const double dx = f.grid.spacing(), x0 = f.grid.min_coord();
    cplx acc{0.0, 0.0};
    const cplx step = std::polar(1.0, -dx * p);
    cplx ph = std::polar(1.0, -x0 * p);
    for (std::size_t j = 0; j < f.amplitudes.size(); ++j, ph *= step)
        acc += f.amplitudes[j] * ph;
    return acc * (dx / std::sqrt(2.0 * std::numbers::pi));
}

} // namespace krspace
