#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"

// Kirkwood-Rihaczek phase space and its characteristic-function transforms.
//
// Conventions (unitary Fourier kernel exp(-ipx)/sqrt(2 pi) throughout):
//
//   K*(x,p)      = (2 pi)^(-1/2) psi*(x) psitilde(p) exp(+i x p)
//   M_KR(x',p')  = integral K*(x,p) exp(i x p' + i p x') dx dp
//   M_W(x',p')   = exp(+i x' p'/2) M_KR(x',p')
//                = integral psi*(e - x'/2) psi(e + x'/2) exp(i p' e) de
//   W(x,p)       = (1/pi) integral exp(-2i(x'-x)(p'-p)) K*(x',p') dx' dp'
//   P,Q(x,p)     = (2 pi)^(-2) integral M_W exp(+-(sigma^2 p'^2 + x'^2/sigma^2)/4)
//                  exp(-i x p' - i p x') dx' dp'
//
// With these normalizations the grid sums are exact: sum_j K* dp = |psi(x)|^2
// and sum_i K* dx = |psitilde(p)|^2 hold to rounding, and M(0,0) = 1.

namespace krspace {

enum class GridKind { KRconj, KR, Wigner, P, Q, CharKR, CharW };

inline const char* to_string(GridKind k) {
    switch (k) {
        case GridKind::KRconj: return "KRconj";
        case GridKind::KR: return "KR";
        case GridKind::Wigner: return "Wigner";
        case GridKind::P: return "P";
        case GridKind::Q: return "Q";
        case GridKind::CharKR: return "CharKR";
        case GridKind::CharW: return "CharW";
    }
    return "?";
}

inline GridKind grid_kind_from_string(const std::string& s) {
    if (s == "KRconj") return GridKind::KRconj;
    if (s == "KR") return GridKind::KR;
    if (s == "Wigner") return GridKind::Wigner;
    if (s == "P") return GridKind::P;
    if (s == "Q") return GridKind::Q;
    if (s == "CharKR") return GridKind::CharKR;
    if (s == "CharW") return GridKind::CharW;
    throw std::invalid_argument("unknown grid kind '" + s + "'");
}

/// True when the stored values are real-valued by contract.
inline bool is_real_kind(GridKind k) {
    return k == GridKind::Wigner || k == GridKind::P || k == GridKind::Q;
}

/// Function on an x (rows) by p (columns) rectangular phase-space grid.
/// Characteristic grids reuse the same axes: x' runs on the x grid and p'
/// on the p grid (the two are mutually conjugate).
struct PhaseSpaceGrid {
    Grid1D x_grid;
    Grid1D p_grid;
    GridKind kind = GridKind::KRconj;
    std::vector<cplx> values; // row-major, values[i*n_p + j] = f(x_i, p_j)

    [[nodiscard]] std::size_t n_x() const { return x_grid.n_points; }
    [[nodiscard]] std::size_t n_p() const { return p_grid.n_points; }
    [[nodiscard]] cplx& at(std::size_t i, std::size_t j) { return values[i * n_p() + j]; }
    [[nodiscard]] const cplx& at(std::size_t i, std::size_t j) const {
        return values[i * n_p() + j];
    }
    [[nodiscard]] double peak_abs() const {
        double m = 0.0;
        for (const cplx& v : values) m = std::max(m, std::abs(v));
        return m;
    }
};

inline void require_kind(const PhaseSpaceGrid& g, std::initializer_list<GridKind> ks,
                         const char* who) {
    for (GridKind k : ks)
        if (g.kind == k) return;
    throw std::invalid_argument(std::string(who) + ": unsupported grid kind " +
                                to_string(g.kind));
}

inline void require_conjugate_axes(const PhaseSpaceGrid& g, const char* who) {
    if (!compatible(g.p_grid, g.x_grid.conjugate()))
        throw std::invalid_argument(std::string(who) +
                                    ": p axis is not the conjugate of the x axis");
    if (g.values.size() != g.n_x() * g.n_p())
        throw std::invalid_argument(std::string(who) + ": value count mismatch");
}

/// sum values dx dp.
inline cplx total(const PhaseSpaceGrid& g) {
    cplx s{0.0, 0.0};
    for (const cplx& v : g.values) s += v;
    return s * (g.x_grid.spacing() * g.p_grid.spacing());
}

// ---------------------------------------------------------------------------
// KR distribution
// ---------------------------------------------------------------------------

/// Complex-conjugated KR distribution of a normalized field.
inline PhaseSpaceGrid kr_conjugate(const SampledField& field) {
    require_normalized(field, "kr_conjugate");
    const SampledField mom = to_momentum(field);
    PhaseSpaceGrid out;
    out.x_grid = field.grid;
    out.p_grid = mom.grid;
    out.kind = GridKind::KRconj;
    const std::size_t n = field.grid.n_points;
    out.values.resize(n * n);
    const double pref = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = field.grid.coord(i);
        const cplx a = pref * std::conj(field.amplitudes[i]);
        const cplx step = std::polar(1.0, xi * out.p_grid.spacing());
        cplx ph = std::polar(1.0, xi * out.p_grid.min_coord());
        for (std::size_t j = 0; j < n; ++j, ph *= step)
            out.values[i * n + j] = a * mom.amplitudes[j] * ph;
    }
    return out;
}

/// K* sampled at arbitrary phase-space points (direct sums; the oracle for
/// heterodyne scans, whose axes need not coincide with the field grid).
inline PhaseSpaceGrid kr_conjugate_at(const SampledField& field, const Grid1D& x_axis,
                                      const Grid1D& p_axis) {
    require_normalized(field, "kr_conjugate_at");
    std::vector<cplx> psi_at(x_axis.n_points), phi_at(p_axis.n_points);
    {
        // one forward pass, then trig evaluation per requested point
        const Grid1D conj = field.grid.conjugate();
        const auto coeff = detail::unitary_forward(field.amplitudes, field.grid, conj);
        const double dp = conj.spacing(), p0 = conj.min_coord();
        const double w = dp / std::sqrt(2.0 * std::numbers::pi);
        for (std::size_t a = 0; a < x_axis.n_points; ++a) {
            const double x = x_axis.coord(a);
            cplx acc{0.0, 0.0};
            const cplx step = std::polar(1.0, dp * x);
            cplx ph = std::polar(1.0, p0 * x);
            for (std::size_t m = 0; m < coeff.size(); ++m, ph *= step)
                acc += coeff[m] * ph;
            psi_at[a] = acc * w;
        }
    }
    for (std::size_t b = 0; b < p_axis.n_points; ++b)
        phi_at[b] = momentum_value_at(field, p_axis.coord(b));

    PhaseSpaceGrid out;
    out.x_grid = x_axis;
    out.p_grid = p_axis;
    out.kind = GridKind::KRconj;
    out.values.resize(x_axis.n_points * p_axis.n_points);
    const double pref = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    for (std::size_t a = 0; a < x_axis.n_points; ++a)
        for (std::size_t b = 0; b < p_axis.n_points; ++b)
            out.values[a * p_axis.n_points + b] =
                pref * std::conj(psi_at[a]) * phi_at[b] *
                std::polar(1.0, x_axis.coord(a) * p_axis.coord(b));
    return out;
}

/// Single-point K*(x0, p0).
inline cplx kr_conjugate_point(const SampledField& field, double x0, double p0) {
    require_normalized(field, "kr_conjugate_point");
    const cplx ps = field_value_at(field, x0);
    const cplx ph = momentum_value_at(field, p0);
    return std::conj(ps) * ph * std::polar(1.0, x0 * p0) /
           std::sqrt(2.0 * std::numbers::pi);
}

/// Elementwise conjugation K <-> K*; an exact involution.
inline PhaseSpaceGrid kr_from_conjugate(PhaseSpaceGrid krc) {
    require_kind(krc, {GridKind::KRconj, GridKind::KR}, "kr_from_conjugate");
    for (cplx& v : krc.values) v = std::conj(v);
    krc.kind = krc.kind == GridKind::KRconj ? GridKind::KR : GridKind::KRconj;
    return krc;
}

// ---------------------------------------------------------------------------
// Marginals
// ---------------------------------------------------------------------------

struct MarginalResult {
    std::vector<double> position;  // Re sum over p, times dp
    std::vector<double> momentum;  // Re sum over x, times dx
    double residual_imag = 0.0;    // max |Im| of either sum
};

inline MarginalResult marginals(const PhaseSpaceGrid& g) {
    require_kind(g, {GridKind::KRconj, GridKind::KR, GridKind::Wigner}, "marginals");
    MarginalResult r;
    r.position.assign(g.n_x(), 0.0);
    r.momentum.assign(g.n_p(), 0.0);
    const double dx = g.x_grid.spacing(), dp = g.p_grid.spacing();
    double res = 0.0;
    for (std::size_t i = 0; i < g.n_x(); ++i) {
        cplx s{0.0, 0.0};
        for (std::size_t j = 0; j < g.n_p(); ++j) s += g.at(i, j);
        s *= dp;
        r.position[i] = s.real();
        res = std::max(res, std::abs(s.imag()));
    }
    for (std::size_t j = 0; j < g.n_p(); ++j) {
        cplx s{0.0, 0.0};
        for (std::size_t i = 0; i < g.n_x(); ++i) s += g.at(i, j);
        s *= dx;
        r.momentum[j] = s.real();
        res = std::max(res, std::abs(s.imag()));
    }
    r.residual_imag = res;
    return r;
}

// ---------------------------------------------------------------------------
// Characteristic plane
// ---------------------------------------------------------------------------

namespace detail {

/// Per-column transform over the x index: out(u_m, j) = sum_i V(i,j) e^{s i u x_i} w.
inline std::vector<cplx> axis0_ft(const std::vector<cplx>& v, std::size_t nx,
                                  std::size_t np, const Grid1D& in, const Grid1D& out,
                                  int sign, double weight) {
    std::vector<cplx> res(out.n_points * np);
    std::vector<cplx> col(nx);
    for (std::size_t j = 0; j < np; ++j) {
        for (std::size_t i = 0; i < nx; ++i) col[i] = v[i * np + j];
        auto t = ft_samples(col, in.min_coord(), in.spacing(), out.min_coord(),
                            out.spacing(), sign);
        for (std::size_t m = 0; m < out.n_points; ++m) res[m * np + j] = t[m] * weight;
    }
    return res;
}

/// Per-row transform over the p index.
inline std::vector<cplx> axis1_ft(const std::vector<cplx>& v, std::size_t nx,
                                  std::size_t np, const Grid1D& in, const Grid1D& out,
                                  int sign, double weight) {
    std::vector<cplx> res(nx * out.n_points);
    std::vector<cplx> row(np);
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < np; ++j) row[j] = v[i * np + j];
        auto t = ft_samples(row, in.min_coord(), in.spacing(), out.min_coord(),
                            out.spacing(), sign);
        for (std::size_t m = 0; m < out.n_points; ++m) res[i * out.n_points + m] = t[m] * weight;
    }
    return res;
}

} // namespace detail

/// M_KR(x',p') = integral K*(x,p) e^{i x p' + i p x'} dx dp.  Note the
/// deliberate cross-coupling: x pairs with p' and p with x', so x' runs on
/// the x grid and p' on the p grid.
inline PhaseSpaceGrid characteristic_from_kr(const PhaseSpaceGrid& krc) {
    require_kind(krc, {GridKind::KRconj}, "characteristic_from_kr");
    require_conjugate_axes(krc, "characteristic_from_kr");
    const std::size_t n = krc.n_x();
    // inner: x -> p' (sign +1) gives A(p'_n, j); outer: p -> x' gives M(x'_m, p'_n)
    auto a = detail::axis0_ft(krc.values, n, n, krc.x_grid, krc.p_grid, +1,
                              krc.x_grid.spacing());
    // a is indexed [n][j]; transform rows over j (p -> x'), then transpose
    auto m = detail::axis1_ft(a, n, n, krc.p_grid, krc.x_grid, +1, krc.p_grid.spacing());
    PhaseSpaceGrid out;
    out.x_grid = krc.x_grid;
    out.p_grid = krc.p_grid;
    out.kind = GridKind::CharKR;
    out.values.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.values[i * n + j] = m[j * n + i];
    return out;
}

/// M_W = e^{+i x' p' / 2} M_KR.
inline PhaseSpaceGrid wigner_characteristic(const PhaseSpaceGrid& char_kr) {
    require_kind(char_kr, {GridKind::CharKR}, "wigner_characteristic");
    PhaseSpaceGrid out = char_kr;
    out.kind = GridKind::CharW;
    for (std::size_t i = 0; i < out.n_x(); ++i) {
        const double xi = out.x_grid.coord(i);
        for (std::size_t j = 0; j < out.n_p(); ++j)
            out.at(i, j) *= std::polar(1.0, 0.5 * xi * out.p_grid.coord(j));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Wigner
// ---------------------------------------------------------------------------

/// W(x,p) = (1/2 pi) integral e^{i e p} psi*(x + e/2) psi(x - e/2) de,
/// evaluated by per-row correlation over e.  The field is refined 2x by
/// exact trigonometric interpolation first, so e steps by dx and the
/// periodic images land outside the momentum grid.
inline PhaseSpaceGrid direct_wigner(const SampledField& field) {
    require_normalized(field, "direct_wigner");
    const std::size_t n = field.grid.n_points;
    const double dx = field.grid.spacing();
    const auto fine = detail::refine2x(field.amplitudes, field.grid.min_coord(), dx);

    PhaseSpaceGrid out;
    out.x_grid = field.grid;
    out.p_grid = field.grid.conjugate();
    out.kind = GridKind::Wigner;
    out.values.assign(n * n, cplx{0.0, 0.0});
    const double w = dx / (2.0 * std::numbers::pi);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = 2 * i;
        const std::size_t mmax = std::min(c, 2 * n - 1 - c);
        const double c0 = std::norm(fine[c]);
        std::vector<cplx> corr(mmax + 1);
        for (std::size_t m = 1; m <= mmax; ++m)
            corr[m] = std::conj(fine[c + m]) * fine[c - m];
        for (std::size_t j = 0; j < n; ++j) {
            const double pj = out.p_grid.coord(j);
            const cplx step = std::polar(1.0, dx * pj);
            cplx ph = step;
            double acc = c0;
            for (std::size_t m = 1; m <= mmax; ++m, ph *= step)
                acc += 2.0 * (corr[m].real() * ph.real() - corr[m].imag() * ph.imag());
            out.values[i * n + j] = cplx{acc * w, 0.0};
        }
    }
    return out;
}

/// W(x,p) = (1/pi) integral e^{-2i(x'-x)(p'-p)} K*(x',p') dx'dp' via the
/// chirp route: refine K* 2x in both axes, multiply by e^{-2i x' p'},
/// zero-pad 2x, take the collocated DFTs, and read the target frequencies
/// (2p, 2x) off every 4th node (pure integer index arithmetic, no
/// interpolation and no wrap-around).
inline PhaseSpaceGrid wigner_from_kr(const PhaseSpaceGrid& krc,
                                     double imag_tol = 1e-8) {
    require_kind(krc, {GridKind::KRconj}, "wigner_from_kr");
    require_conjugate_axes(krc, "wigner_from_kr");
    const std::size_t n = krc.n_x();
    const double dx = krc.x_grid.spacing(), dp = krc.p_grid.spacing();
    const double x0 = krc.x_grid.min_coord(), p0 = krc.p_grid.min_coord();

    // 2x trigonometric refinement, columns then rows
    std::vector<cplx> k2((2 * n) * (2 * n));
    {
        std::vector<cplx> col(n);
        std::vector<cplx> k1((2 * n) * n);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) col[i] = krc.values[i * n + j];
            auto f = detail::refine2x(col, x0, dx);
            for (std::size_t i = 0; i < 2 * n; ++i) k1[i * n + j] = f[i];
        }
        std::vector<cplx> row(n);
        for (std::size_t i = 0; i < 2 * n; ++i) {
            for (std::size_t j = 0; j < n; ++j) row[j] = k1[i * n + j];
            auto f = detail::refine2x(row, p0, dp);
            for (std::size_t j = 0; j < 2 * n; ++j) k2[i * 2 * n + j] = f[j];
        }
    }
    // chirp e^{-2i x' p'} on the fine grid
    for (std::size_t i = 0; i < 2 * n; ++i) {
        const double xf = x0 + 0.5 * dx * static_cast<double>(i);
        for (std::size_t j = 0; j < 2 * n; ++j) {
            const double pf = p0 + 0.5 * dp * static_cast<double>(j);
            k2[i * 2 * n + j] *= std::polar(1.0, -2.0 * xf * pf);
        }
    }
    // inner: over x' (fine), targets u = 2 p_j at bins 4j of the 4N transform
    std::vector<cplx> t1(n * (2 * n));
    {
        std::vector<cplx> g(4 * n, cplx{0.0, 0.0});
        const double du = 0.5 * dp; // = 2 pi / (4N * dx/2)
        for (std::size_t b = 0; b < 2 * n; ++b) {
            for (std::size_t i = 0; i < 2 * n; ++i) g[i] = k2[i * 2 * n + b];
            std::fill(g.begin() + 2 * n, g.end(), cplx{0.0, 0.0});
            auto f = detail::ft_samples(g, x0, 0.5 * dx, -2.0 * std::numbers::pi / dx,
                                        du, +1);
            for (std::size_t j = 0; j < n; ++j) t1[j * 2 * n + b] = f[4 * j] * (0.5 * dx);
        }
    }
    // outer: over p' (fine), targets v = 2 x_i at bins 4i
    PhaseSpaceGrid out;
    out.x_grid = krc.x_grid;
    out.p_grid = krc.p_grid;
    out.kind = GridKind::Wigner;
    out.values.assign(n * n, cplx{0.0, 0.0});
    double max_im = 0.0, max_re = 0.0;
    {
        std::vector<cplx> g(4 * n, cplx{0.0, 0.0});
        const double dv = 0.5 * dx;
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t b = 0; b < 2 * n; ++b) g[b] = t1[j * 2 * n + b];
            std::fill(g.begin() + 2 * n, g.end(), cplx{0.0, 0.0});
            auto f = detail::ft_samples(g, p0, 0.5 * dp, -2.0 * std::numbers::pi / dp,
                                        dv, +1);
            for (std::size_t i = 0; i < n; ++i) {
                const cplx w = f[4 * i] * (0.5 * dp) *
                               std::polar(1.0 / std::numbers::pi,
                                          -2.0 * krc.x_grid.coord(i) * krc.p_grid.coord(j));
                max_im = std::max(max_im, std::abs(w.imag()));
                max_re = std::max(max_re, std::abs(w.real()));
                out.values[i * n + j] = w;
            }
        }
    }
    if (max_im > imag_tol * max_re) {
        char ratio[32];
        std::snprintf(ratio, sizeof(ratio), "%.3e", max_im / max_re);
        throw std::runtime_error(std::string("wigner_from_kr: imaginary residual ") +
                                 ratio +
                                 " of peak exceeds tolerance; Fourier/chirp "
                                 "conventions are inconsistent");
    }
    for (cplx& v : out.values) v = cplx{v.real(), 0.0};
    return out;
}

// ---------------------------------------------------------------------------
// P and Q
// ---------------------------------------------------------------------------

/// Regularizer knobs for the P transform (the Eq. 16-type kernel diverges;
/// P exists only as a distribution).
struct RegSpec {
    double eps_floor = 1e-6; // keep |M_W| above eps_floor * max
    int taper_samples = 4;   // raised-cosine edge width, in grid cells
    [[nodiscard]] double kernel_cap() const { return 1.0 / (eps_floor * eps_floor); }
};

struct PMask {
    std::vector<double> weights;           // 0..1, n_x*n_p
    bool ill_conditioned = false;          // kernel cap clipped above-floor signal
    double removed_energy_fraction = 0.0;  // of the P-plane characteristic energy
};

namespace detail {

/// Chebyshev distance to the nearest zero cell (two-pass chamfer).
inline std::vector<int> chebyshev_distance(const std::vector<char>& keep,
                                           std::size_t nx, std::size_t np) {
    const int inf = std::numeric_limits<int>::max() / 4;
    std::vector<int> d(nx * np);
    for (std::size_t idx = 0; idx < keep.size(); ++idx) d[idx] = keep[idx] ? inf : 0;
    auto at = [&](std::size_t i, std::size_t j) -> int& { return d[i * np + j]; };
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < np; ++j) {
            int v = at(i, j);
            if (i > 0) v = std::min(v, at(i - 1, j) + 1);
            if (j > 0) v = std::min(v, at(i, j - 1) + 1);
            if (i > 0 && j > 0) v = std::min(v, at(i - 1, j - 1) + 1);
            if (i > 0 && j + 1 < np) v = std::min(v, at(i - 1, j + 1) + 1);
            at(i, j) = v;
        }
    for (std::size_t ii = nx; ii-- > 0;)
        for (std::size_t jj = np; jj-- > 0;) {
            int v = at(ii, jj);
            if (ii + 1 < nx) v = std::min(v, at(ii + 1, jj) + 1);
            if (jj + 1 < np) v = std::min(v, at(ii, jj + 1) + 1);
            if (ii + 1 < nx && jj + 1 < np) v = std::min(v, at(ii + 1, jj + 1) + 1);
            if (ii + 1 < nx && jj > 0) v = std::min(v, at(ii + 1, jj - 1) + 1);
            at(ii, jj) = v;
        }
    return d;
}

} // namespace detail

/// Builds the P regularization mask from |M_W| and the kernel log-exponents.
///
/// Keeps points with |M_W| > eps_floor*max AND kernel <= 1/eps_floor^2, with
/// a raised-cosine edge.  The removed-energy fraction is the |kernel*M_W|^2
/// mass of above-floor points that the kernel cap rejects, accumulated in
/// log space so divergent kernels cannot overflow; a fraction above 50%
/// marks the output ill-conditioned.
inline PMask build_p_mask(const PhaseSpaceGrid& char_w, double sigma_ref,
                          const RegSpec& reg) {
    require_kind(char_w, {GridKind::CharW}, "build_p_mask");
    if (!(sigma_ref > 0.0)) throw std::invalid_argument("build_p_mask: sigma_ref must be > 0");
    if (!(reg.eps_floor > 0.0) || reg.eps_floor >= 1.0)
        throw std::invalid_argument("build_p_mask: eps_floor must be in (0,1)");
    if (reg.taper_samples < 0)
        throw std::invalid_argument("build_p_mask: taper_samples must be >= 0");
    const std::size_t nx = char_w.n_x(), np = char_w.n_p();
    const double peak = char_w.peak_abs();
    const double log_cap = std::log(reg.kernel_cap()); // +inf if eps_floor underflows the square

    std::vector<char> keep(nx * np, 0);
    double lk_max = -std::numeric_limits<double>::infinity();
    double lr_max = lk_max;
    std::vector<double> log_mp(nx * np, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < nx; ++i) {
        const double xp = char_w.x_grid.coord(i);
        for (std::size_t j = 0; j < np; ++j) {
            const double pp = char_w.p_grid.coord(j);
            const double kern_log =
                0.25 * (sigma_ref * sigma_ref * pp * pp + xp * xp / (sigma_ref * sigma_ref));
            const double mag = std::abs(char_w.at(i, j));
            const bool above_floor = mag > reg.eps_floor * peak;
            const bool under_cap = kern_log <= log_cap;
            keep[i * np + j] = static_cast<char>(above_floor && under_cap);
            if (above_floor) {
                const double lmp = std::log(mag) + kern_log;
                log_mp[i * np + j] = lmp;
                if (under_cap)
                    lk_max = std::max(lk_max, lmp);
                else
                    lr_max = std::max(lr_max, lmp);
            }
        }
    }
    // stable sum of exp(2*(l - ref)) over kept and removed sets
    const double ref = std::max(lk_max, lr_max);
    double sk = 0.0, sr = 0.0;
    if (std::isfinite(ref)) {
        for (std::size_t idx = 0; idx < keep.size(); ++idx) {
            const double l = log_mp[idx];
            if (!std::isfinite(l)) continue;
            const double e = std::exp(2.0 * (l - ref));
            if (keep[idx])
                sk += e;
            else
                sr += e;
        }
    }
    PMask mask;
    mask.removed_energy_fraction = (sk + sr) > 0.0 ? sr / (sk + sr) : 0.0;
    mask.ill_conditioned = mask.removed_energy_fraction > 0.5;

    mask.weights.assign(nx * np, 0.0);
    if (reg.taper_samples == 0) {
        for (std::size_t idx = 0; idx < keep.size(); ++idx)
            mask.weights[idx] = keep[idx] ? 1.0 : 0.0;
    } else {
        const auto dist = detail::chebyshev_distance(keep, nx, np);
        const double tw = static_cast<double>(reg.taper_samples);
        for (std::size_t idx = 0; idx < keep.size(); ++idx) {
            if (!keep[idx]) continue;
            const double t = std::min(static_cast<double>(dist[idx]), tw) / tw;
            mask.weights[idx] = 0.5 * (1.0 - std::cos(std::numbers::pi * t));
        }
    }
    return mask;
}

namespace detail {

/// X(x,p) = (2 pi)^(-2) sum M e^{-i x p'} e^{-i p x'} dx' dp'.
inline PhaseSpaceGrid inverse_characteristic(const PhaseSpaceGrid& m, GridKind kind) {
    const std::size_t n = m.n_x();
    // inner: p' -> x per row, then x' -> p per column of the intermediate
    auto b = detail::axis1_ft(m.values, n, n, m.p_grid, m.x_grid, -1, m.p_grid.spacing());
    auto c = detail::axis0_ft(b, n, n, m.x_grid, m.p_grid, -1, m.x_grid.spacing());
    // c is indexed [p_j][x_i]; transpose and scale
    PhaseSpaceGrid out;
    out.x_grid = m.x_grid;
    out.p_grid = m.p_grid;
    out.kind = kind;
    out.values.resize(n * n);
    const double w = 1.0 / std::pow(2.0 * std::numbers::pi, 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.values[i * n + j] = c[j * n + i] * w;
    return out;
}

} // namespace detail

struct PResult {
    PhaseSpaceGrid grid;
    bool ill_conditioned = false;
    double removed_energy_fraction = 0.0;
};

/// Regularized Glauber-Sudarshan P from the KR characteristic function.
/// sigma_ref is the Gaussian scale in the sharpening kernel
/// exp(+(sigma^2 p'^2 + x'^2/sigma^2)/4).
inline PResult p_from_characteristic(const PhaseSpaceGrid& char_kr, double sigma_ref,
                                     const RegSpec& reg = RegSpec{}) {
    require_kind(char_kr, {GridKind::CharKR}, "p_from_characteristic");
    require_conjugate_axes(char_kr, "p_from_characteristic");
    const PhaseSpaceGrid mw = wigner_characteristic(char_kr);
    const PMask mask = build_p_mask(mw, sigma_ref, reg);
    const std::size_t n = mw.n_x();
    PhaseSpaceGrid integrand = mw;
    constexpr double overflow_log = 700.0; // ~log(DBL_MAX) - margin
    for (std::size_t i = 0; i < n; ++i) {
        const double xp = mw.x_grid.coord(i);
        for (std::size_t j = 0; j < n; ++j) {
            const double w = mask.weights[i * n + j];
            if (w == 0.0) {
                integrand.at(i, j) = cplx{0.0, 0.0};
                continue;
            }
            const double pp = mw.p_grid.coord(j);
            const double kern_log =
                0.25 * (sigma_ref * sigma_ref * pp * pp + xp * xp / (sigma_ref * sigma_ref));
            if (kern_log > overflow_log)
                throw std::runtime_error(
                    "p_from_characteristic: masked kernel still overflows at "
                    "characteristic radius " +
                    std::to_string(2.0 * std::sqrt(kern_log)) + " (x'=" +
                    std::to_string(xp) + ", p'=" + std::to_string(pp) +
                    "); tighten RegSpec");
            integrand.at(i, j) *= w * std::exp(kern_log);
        }
    }
    PResult res;
    res.grid = detail::inverse_characteristic(integrand, GridKind::P);
    for (cplx& v : res.grid.values) v = cplx{v.real(), 0.0};
    res.ill_conditioned = mask.ill_conditioned;
    res.removed_energy_fraction = mask.removed_energy_fraction;
    return res;
}

/// Husimi Q from the KR characteristic function: same transform with the
/// damping kernel exp(-(sigma^2 p'^2 + x'^2/sigma^2)/4); smooth and
/// nonnegative, no regularizer needed.
inline PhaseSpaceGrid q_from_characteristic(const PhaseSpaceGrid& char_kr,
                                            double sigma_ref, double tol = 1e-8) {
    require_kind(char_kr, {GridKind::CharKR}, "q_from_characteristic");
    require_conjugate_axes(char_kr, "q_from_characteristic");
    if (!(sigma_ref > 0.0))
        throw std::invalid_argument("q_from_characteristic: sigma_ref must be > 0");
    PhaseSpaceGrid mq = wigner_characteristic(char_kr);
    const std::size_t n = mq.n_x();
    for (std::size_t i = 0; i < n; ++i) {
        const double xp = mq.x_grid.coord(i);
        for (std::size_t j = 0; j < n; ++j) {
            const double pp = mq.p_grid.coord(j);
            mq.at(i, j) *= std::exp(
                -0.25 * (sigma_ref * sigma_ref * pp * pp + xp * xp / (sigma_ref * sigma_ref)));
        }
    }
    PhaseSpaceGrid q = detail::inverse_characteristic(mq, GridKind::Q);
    double max_im = 0.0, max_re = 0.0, min_re = 0.0;
    for (const cplx& v : q.values) {
        max_im = std::max(max_im, std::abs(v.imag()));
        max_re = std::max(max_re, std::abs(v.real()));
        min_re = std::min(min_re, v.real());
    }
    if (max_im > tol * max_re)
        throw std::runtime_error("q_from_characteristic: imaginary residual " +
                                 std::to_string(max_im / max_re) +
                                 " of peak; conventions are inconsistent");
    if (min_re < -tol * max_re)
        throw std::runtime_error("q_from_characteristic: negativity " +
                                 std::to_string(min_re / max_re) +
                                 " of peak; Q must be nonnegative");
    for (cplx& v : q.values) v = cplx{v.real(), 0.0};
    return q;
}

} // namespace krspace
