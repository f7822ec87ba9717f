#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "grid.hpp"

namespace krspace {

/// Least-squares fit of a*exp(-(x-c)^2/w^2); w is the 1/e-intensity width.
struct GaussianFitResult {
    double amplitude = 0.0;
    double center = 0.0;
    double width = 0.0;
    double residual_l2 = 0.0;
    int iterations = 0;
};

struct FitError : std::runtime_error {
    double best_residual;
    explicit FitError(const std::string& msg, double residual)
        : std::runtime_error(msg), best_residual(residual) {}
};

struct FitOptions {
    int max_iterations = 100;
    double step_tol = 1e-13;
};

namespace detail {

inline bool solve3(std::array<double, 9>& a, std::array<double, 3>& b) {
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(a[r * 3 + col]) > std::abs(a[piv * 3 + col])) piv = r;
        if (std::abs(a[piv * 3 + col]) < 1e-300) return false;
        if (piv != col) {
            for (int k = 0; k < 3; ++k) std::swap(a[col * 3 + k], a[piv * 3 + k]);
            std::swap(b[col], b[piv]);
        }
        for (int r = col + 1; r < 3; ++r) {
            const double f = a[r * 3 + col] / a[col * 3 + col];
            for (int k = col; k < 3; ++k) a[r * 3 + k] -= f * a[col * 3 + k];
            b[r] -= f * b[col];
        }
    }
    for (int r = 2; r >= 0; --r) {
        for (int k = r + 1; k < 3; ++k) b[r] -= a[r * 3 + k] * b[k];
        b[r] /= a[r * 3 + r];
    }
    return true;
}

} // namespace detail

/// Levenberg-Marquardt with deterministic moment initialization
/// (a = max, c = centroid, w = sqrt(2)*RMS).  Throws FitError carrying the
/// best residual when the iteration budget runs out far from a minimum.
inline GaussianFitResult fit_gaussian_width(const std::vector<double>& samples,
                                            const std::vector<double>& xs,
                                            const FitOptions& opt = FitOptions{}) {
    if (samples.size() != xs.size() || samples.size() < 4)
        throw std::invalid_argument("fit_gaussian_width: need matching x/y arrays, >= 4 points");
    const std::size_t n = samples.size();
    const double span = std::abs(xs.back() - xs.front()) + 1e-300;

    double a = 0.0, m0 = 0.0, m1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double y = std::max(samples[i], 0.0);
        a = std::max(a, samples[i]);
        m0 += y;
        m1 += y * xs[i];
    }
    if (!(a > 0.0) || !(m0 > 0.0))
        throw FitError("fit_gaussian_width: samples carry no positive lobe", 0.0);
    double c = m1 / m0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double y = std::max(samples[i], 0.0);
        const double d = xs[i] - c;
        m2 += y * d * d;
    }
    double w = std::sqrt(2.0 * m2 / m0);
    if (!(w > 0.0)) w = span / static_cast<double>(n);

    auto residual_norm = [&](double aa, double cc, double ww) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = xs[i] - cc;
            const double r = aa * std::exp(-d * d / (ww * ww)) - samples[i];
            s += r * r;
        }
        return std::sqrt(s);
    };

    double lambda = 1e-3;
    double best = residual_norm(a, c, w);
    int it = 0;
    for (; it < opt.max_iterations; ++it) {
        std::array<double, 9> jtj{};
        std::array<double, 3> jtr{};
        for (std::size_t i = 0; i < n; ++i) {
            const double d = xs[i] - c;
            const double e = std::exp(-d * d / (w * w));
            const double model = a * e;
            const double r = model - samples[i];
            const double j[3] = {e, model * 2.0 * d / (w * w),
                                 model * 2.0 * d * d / (w * w * w)};
            for (int u = 0; u < 3; ++u) {
                jtr[u] += j[u] * r;
                for (int v = 0; v < 3; ++v) jtj[u * 3 + v] += j[u] * j[v];
            }
        }
        std::array<double, 9> lhs = jtj;
        for (int u = 0; u < 3; ++u) lhs[u * 3 + u] *= (1.0 + lambda);
        std::array<double, 3> step = {-jtr[0], -jtr[1], -jtr[2]};
        if (!detail::solve3(lhs, step)) {
            lambda *= 10.0;
            if (lambda > 1e12) break;
            continue;
        }
        const double a2 = a + step[0], c2 = c + step[1];
        const double w2 = std::abs(w + step[2]);
        const double r2 = (w2 > 0.0) ? residual_norm(a2, c2, w2)
                                     : std::numeric_limits<double>::infinity();
        if (r2 <= best) {
            const double rel_step = std::abs(step[0]) / std::max(std::abs(a), 1e-300) +
                                    std::abs(step[1]) / span +
                                    std::abs(step[2]) / std::max(w, 1e-300);
            a = a2;
            c = c2;
            w = w2;
            best = r2;
            lambda = std::max(lambda * 0.3, 1e-12);
            if (rel_step < opt.step_tol) {
                ++it;
                break;
            }
        } else {
            lambda *= 10.0;
            if (lambda > 1e12) break;
        }
    }
    if (it >= opt.max_iterations)
        throw FitError("fit_gaussian_width: no convergence after " +
                           std::to_string(opt.max_iterations) +
                           " iterations (best residual " + std::to_string(best) + ")",
                       best);
    GaussianFitResult res;
    res.amplitude = a;
    res.center = c;
    res.width = w;
    res.residual_l2 = best;
    res.iterations = it;
    return res;
}

inline GaussianFitResult fit_gaussian_width(const std::vector<double>& samples,
                                            const Grid1D& grid,
                                            const FitOptions& opt = FitOptions{}) {
    if (samples.size() != grid.n_points)
        throw std::invalid_argument("fit_gaussian_width: sample count does not match grid");
    std::vector<double> xs(grid.n_points);
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = grid.coord(i);
    return fit_gaussian_width(samples, xs, opt);
}

} // namespace krspace
