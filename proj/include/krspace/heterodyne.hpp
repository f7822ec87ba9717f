#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "dsp.hpp"
#include "field.hpp"
#include "phasespace.hpp"

// Two-local-oscillator balanced heterodyne simulation.
//
// The LO is a focused Gaussian (waist a, x-resolving) plus a collimated one
// (waist A, p-resolving).  Scanning the LO mirror by d_x and the signal lens
// by d_p maps out phase space at x0 = d_x, p0 = -k d_p / f.  Per scan point
// the two transverse overlaps are
//
//   o_i = integral LO_i(x - d_x) E_S(x) exp(-i p0 x) dx
//
// and the demodulated output is S = conj(o1) * o2, which converges to
// c * K*(x0, p0) with a scan-independent c > 0 as a -> 0, A -> infinity.
// (Which overlap is conjugated and the sign inside the kernel are fixed by
// that convergence requirement; the lock-in algebra below reproduces the
// same combination.)

namespace krspace {

/// Dual local-oscillator parameters.  Frequencies use the scaled plan that
/// preserves the 120 MHz : 110 MHz + 5 kHz : 110 MHz ratios at 1e-3 scale,
/// so every line is an integer multiple of the 5 Hz difference frequency.
struct LOConfig {
    double a = 0.081;                  // focused waist (mm in millimeter mode)
    double A = 2.6;                    // collimated waist
    double alpha = 1.0;                // relative amplitude of the collimated LO
    double focal_length = 60.0;        // lens focal length (mm)
    double freq_signal = 120000.0;     // Hz-equivalent
    double freq_lo1 = 110005.0;
    double freq_lo2 = 110000.0;
    double analyzer_bandwidth = 100.0; // spectrum-analyzer -3 dB width

    [[nodiscard]] double beat1() const { return freq_signal - freq_lo1; }
    [[nodiscard]] double beat2() const { return freq_signal - freq_lo2; }
    [[nodiscard]] double difference() const { return std::abs(freq_lo1 - freq_lo2); }

    void validate() const {
        if (!(a > 0.0) || !(A > a))
            throw std::invalid_argument("LOConfig: need A > a > 0");
        if (!(alpha >= 0.0)) throw std::invalid_argument("LOConfig: alpha must be >= 0");
        if (!(focal_length > 0.0))
            throw std::invalid_argument("LOConfig: focal_length must be > 0");
        const double d = difference(), carrier = std::abs(beat2());
        if (!(d > 0.0))
            throw std::invalid_argument("LOConfig: LO difference frequency must be nonzero");
        if (10.0 * d > carrier)
            throw std::invalid_argument(
                "LOConfig: LO difference frequency must be well below the carrier beat");
        if (analyzer_bandwidth < 4.0 * d)
            throw std::invalid_argument(
                "LOConfig: analyzer bandwidth must be large compared with the difference frequency");
    }
};

/// Mirror (d_x) and lens (d_p) actuator positions; x0 = d_x and
/// p0 = -k d_p / f are derived per point.
struct ScanConfig {
    std::vector<double> dx_values;
    std::vector<double> dp_values;

    /// Inclusive symmetric ranges requested in phase space: x0 over
    /// +-x_half and p0 over +-p_half (ascending), converted to actuator
    /// positions with dp = -p0 * f / k.
    static ScanConfig from_phase_space(double x_half, double p_half, std::size_t nx,
                                       std::size_t np, double k_eff, double focal_length) {
        if (nx < 2 || np < 2)
            throw std::invalid_argument("ScanConfig: need at least 2 points per axis");
        if (!(x_half > 0.0) || !(p_half > 0.0))
            throw std::invalid_argument("ScanConfig: scan half-ranges must be positive");
        ScanConfig s;
        s.dx_values.resize(nx);
        s.dp_values.resize(np);
        for (std::size_t i = 0; i < nx; ++i)
            s.dx_values[i] = -x_half + 2.0 * x_half * static_cast<double>(i) /
                                           static_cast<double>(nx - 1);
        for (std::size_t j = 0; j < np; ++j) {
            const double p0 = -p_half + 2.0 * p_half * static_cast<double>(j) /
                                            static_cast<double>(np - 1);
            s.dp_values[j] = -p0 * focal_length / k_eff;
        }
        return s;
    }

    /// Inclusive symmetric actuator ranges; dp descends so the derived p0
    /// axis ascends.
    static ScanConfig from_actuators(double dx_max, double dp_max, std::size_t nx,
                                     std::size_t np) {
        if (nx < 2 || np < 2)
            throw std::invalid_argument("ScanConfig: need at least 2 points per axis");
        if (!(dx_max > 0.0) || !(dp_max > 0.0))
            throw std::invalid_argument("ScanConfig: actuator ranges must be positive");
        ScanConfig s;
        s.dx_values.resize(nx);
        s.dp_values.resize(np);
        for (std::size_t i = 0; i < nx; ++i)
            s.dx_values[i] = -dx_max + 2.0 * dx_max * static_cast<double>(i) /
                                           static_cast<double>(nx - 1);
        for (std::size_t j = 0; j < np; ++j)
            s.dp_values[j] = dp_max - 2.0 * dp_max * static_cast<double>(j) /
                                          static_cast<double>(np - 1);
        return s;
    }

    /// Default ranges: d_x over +-1 cm and p0 over +-0.3 k in millimeter
    /// mode; +-4 w_ref and +-4/w_ref in dimensionless mode.
    static ScanConfig defaults(UnitMode mode, double k_eff, double focal_length,
                               double w_ref, std::size_t nx = 41, std::size_t np = 41) {
        if (mode == UnitMode::millimeters)
            return from_phase_space(10.0, 0.3 * k_eff, nx, np, k_eff, focal_length);
        return from_phase_space(4.0 * w_ref, 4.0 / w_ref, nx, np, k_eff, focal_length);
    }

    [[nodiscard]] std::vector<double> p0_values(double k_eff, double focal_length) const {
        std::vector<double> p(dp_values.size());
        for (std::size_t j = 0; j < p.size(); ++j)
            p[j] = -k_eff * dp_values[j] / focal_length;
        return p;
    }
};

/// Receiver-chain knobs for the time-domain simulation.
struct DspSpec {
    double sample_rate = 160000.0; // Hz-equivalent
    int demod_periods = 16;        // lock-in window, in difference-frequency periods
    int warmup_periods = 2;        // discarded on each side (filter transients)
    double phase_i_deg = 0.0;      // lock-in reference phases
    double phase_q_deg = 90.0;
    bool with_spurs = false;       // inject DC and intra-LO beat to test rejection
};

/// Combined LO field E0 [exp(-x^2/2a^2) + alpha exp(-x^2/2A^2) e^{i theta}].
inline SampledField make_lo_field(const LOConfig& cfg, const Grid1D& grid, double theta) {
    cfg.validate();
    if (grid.spacing() > cfg.a / 6.0) {
        const auto need = static_cast<std::size_t>(std::ceil(grid.extent * 6.0 / cfg.a));
        throw std::invalid_argument(
            "make_lo_field: grid does not resolve the focused waist a=" +
            std::to_string(cfg.a) + "; need n_points >= " + std::to_string(need));
    }
    if (grid.extent < 6.0 * cfg.A)
        throw std::invalid_argument(
            "make_lo_field: grid does not contain the collimated waist A=" +
            std::to_string(cfg.A) + "; need extent >= " + std::to_string(6.0 * cfg.A));
    SampledField f;
    f.grid = grid;
    f.space = FieldSpace::position;
    f.amplitudes.resize(grid.n_points);
    const cplx phase = std::polar(1.0, theta);
    for (std::size_t j = 0; j < grid.n_points; ++j) {
        const double x = grid.coord(j);
        f.amplitudes[j] = std::exp(-x * x / (2.0 * cfg.a * cfg.a)) +
                          cfg.alpha * phase * std::exp(-x * x / (2.0 * cfg.A * cfg.A));
    }
    return f;
}

namespace detail {

struct LOShapes {
    std::vector<double> lo1, lo2; // unit-L2-norm component profiles at d_x = 0
};

inline LOShapes lo_shapes(const LOConfig& cfg, const Grid1D& grid) {
    LOShapes s;
    s.lo1.resize(grid.n_points);
    s.lo2.resize(grid.n_points);
    double n1 = 0.0, n2 = 0.0;
    for (std::size_t j = 0; j < grid.n_points; ++j) {
        const double x = grid.coord(j);
        s.lo1[j] = std::exp(-x * x / (2.0 * cfg.a * cfg.a));
        s.lo2[j] = std::exp(-x * x / (2.0 * cfg.A * cfg.A));
        n1 += s.lo1[j] * s.lo1[j];
        n2 += s.lo2[j] * s.lo2[j];
    }
    const double dx = grid.spacing();
    n1 = 1.0 / std::sqrt(n1 * dx);
    n2 = 1.0 / std::sqrt(n2 * dx);
    for (std::size_t j = 0; j < grid.n_points; ++j) {
        s.lo1[j] *= n1;
        s.lo2[j] *= n2;
    }
    return s;
}

/// Shifted-LO overlap against the phase-kicked signal; the shapes are
/// evaluated analytically at x - d_x so the shift never resamples.
inline std::pair<cplx, cplx> overlaps_impl(const SampledField& signal,
                                           const LOConfig& cfg, double d_x, double p0,
                                           double norm1, double norm2) {
    const Grid1D& g = signal.grid;
    const double dx = g.spacing();
    cplx o1{0.0, 0.0}, o2{0.0, 0.0};
    const cplx step = std::polar(1.0, -p0 * dx);
    cplx ph = std::polar(1.0, -p0 * g.min_coord());
    for (std::size_t j = 0; j < g.n_points; ++j, ph *= step) {
        const double u = g.coord(j) - d_x;
        const cplx v = signal.amplitudes[j] * ph;
        o1 += std::exp(-u * u / (2.0 * cfg.a * cfg.a)) * v;
        o2 += std::exp(-u * u / (2.0 * cfg.A * cfg.A)) * v;
    }
    return {o1 * (dx * norm1), o2 * (dx * norm2 * cfg.alpha)};
}

} // namespace detail

/// The two transverse-plane overlap integrals at one scan point, with each
/// LO component L2-normalized on the grid.  The quadratic lens phases are
/// omitted (they cancel at the focal plane).
inline std::pair<cplx, cplx> overlap_beat(const SampledField& signal, const LOConfig& cfg,
                                          double d_x, double d_p) {
    cfg.validate();
    require_valid(signal, "overlap_beat");
    double n1 = 0.0, n2 = 0.0;
    for (std::size_t j = 0; j < signal.grid.n_points; ++j) {
        const double x = signal.grid.coord(j);
        n1 += std::exp(-x * x / (cfg.a * cfg.a));
        n2 += std::exp(-x * x / (cfg.A * cfg.A));
    }
    const double dx = signal.grid.spacing();
    n1 = 1.0 / std::sqrt(n1 * dx);
    n2 = 1.0 / std::sqrt(n2 * dx);
    const double p0 = -signal.effective_k() * d_p / cfg.focal_length;
    return detail::overlaps_impl(signal, cfg, d_x, p0, n1, n2);
}

/// Scan output arranged on the derived (x0, p0) axes, kind KRconj (it is an
/// estimate of K*).
struct ScanResult {
    PhaseSpaceGrid grid;
};

namespace detail {

inline Grid1D axis_from_values(const std::vector<double>& v, UnitMode mode,
                               const char* who) {
    if (v.size() < 2) throw std::invalid_argument(std::string(who) + ": need >= 2 scan points");
    const double step = v[1] - v[0];
    if (!(step > 0.0)) throw std::invalid_argument(std::string(who) + ": axis must ascend");
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        if (std::abs((v[i + 1] - v[i]) - step) > 1e-9 * std::abs(step))
            throw std::invalid_argument(std::string(who) + ": axis must be uniform");
    const double extent = step * static_cast<double>(v.size());
    return Grid1D(v.size(), extent, mode, v.front() + 0.5 * extent);
}

} // namespace detail

/// Analytic shortcut for the demodulated output: S = conj(o1) * o2 per scan
/// point (the surviving difference-frequency term of the squared beat).
inline ScanResult ideal_scan(const SampledField& signal, const LOConfig& cfg,
                             const ScanConfig& scan) {
    cfg.validate();
    require_valid(signal, "ideal_scan"); // bilinear in the field, no unit norm required
    const double keff = signal.effective_k();
    auto p0s = scan.p0_values(keff, cfg.focal_length);
    std::vector<std::size_t> order(p0s.size());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return p0s[a] < p0s[b]; });
    std::vector<double> p0_sorted(p0s.size());
    for (std::size_t j = 0; j < order.size(); ++j) p0_sorted[j] = p0s[order[j]];

    ScanResult res;
    res.grid.x_grid =
        detail::axis_from_values(scan.dx_values, signal.grid.unit_mode, "ideal_scan");
    res.grid.p_grid =
        detail::axis_from_values(p0_sorted, signal.grid.unit_mode, "ideal_scan");
    res.grid.kind = GridKind::KRconj;
    res.grid.values.resize(scan.dx_values.size() * p0s.size());

    double n1 = 0.0, n2 = 0.0;
    for (std::size_t j = 0; j < signal.grid.n_points; ++j) {
        const double x = signal.grid.coord(j);
        n1 += std::exp(-x * x / (cfg.a * cfg.a));
        n2 += std::exp(-x * x / (cfg.A * cfg.A));
    }
    const double dx = signal.grid.spacing();
    n1 = 1.0 / std::sqrt(n1 * dx);
    n2 = 1.0 / std::sqrt(n2 * dx);

    const std::size_t np = p0s.size();
    for (std::size_t i = 0; i < scan.dx_values.size(); ++i)
        for (std::size_t j = 0; j < np; ++j) {
            const auto [o1, o2] = detail::overlaps_impl(signal, cfg, scan.dx_values[i],
                                                        p0_sorted[j], n1, n2);
            res.grid.values[i * np + j] = std::conj(o1) * o2;
        }
    return res;
}

/// In-phase/quadrature lock-in outputs per scan point plus the complex gain
/// fitted against the analytic shortcut (diagnostic only).
struct TimeDomainResult {
    PhaseSpaceGrid grid;
    cplx gain_vs_ideal{0.0, 0.0};
    double rel_l2_vs_ideal = 0.0;
};

/// Full receiver chain: synthesize the beat V_B(t), band-pass at the mean
/// beat frequency, square, and lock in at the LO difference frequency over
/// an integer number of periods.
inline TimeDomainResult timedomain_scan(const SampledField& signal, const LOConfig& cfg,
                                        const ScanConfig& scan, const DspSpec& dsp) {
    cfg.validate();
    require_valid(signal, "timedomain_scan");
    const double w1 = 2.0 * std::numbers::pi * cfg.beat1();
    const double w2 = 2.0 * std::numbers::pi * cfg.beat2();
    const double fd = cfg.difference();
    const double fmax = std::max(std::abs(cfg.beat1()), std::abs(cfg.beat2()));
    if (dsp.sample_rate <= 8.0 * fmax)
        throw std::invalid_argument(
            "timedomain_scan: sample rate must exceed 8x the highest beat frequency (need > " +
            std::to_string(8.0 * fmax) + ")");
    if (dsp.demod_periods < 16)
        throw std::invalid_argument("timedomain_scan: record must cover >= 16 difference periods");
    if (dsp.warmup_periods < 0)
        throw std::invalid_argument("timedomain_scan: warmup_periods must be >= 0");
    const double samples_per_period = dsp.sample_rate / fd;
    const double demod_samples_d = samples_per_period * dsp.demod_periods;
    if (std::abs(demod_samples_d - std::round(demod_samples_d)) > 1e-6)
        throw std::invalid_argument(
            "timedomain_scan: demod window is not an integer number of samples; "
            "adjust sample_rate or demod_periods");
    const auto n_demod = static_cast<std::size_t>(std::llround(demod_samples_d));
    const auto n_warm =
        static_cast<std::size_t>(std::llround(samples_per_period * dsp.warmup_periods));
    const std::size_t n_total = n_demod + 2 * n_warm;

    const ScanResult ideal = ideal_scan(signal, cfg, scan); // reuses axes and o-products
    TimeDomainResult res;
    res.grid = ideal.grid;

    // recompute overlaps per point (cheap) so the chain stays self-contained
    double n1 = 0.0, n2 = 0.0;
    for (std::size_t j = 0; j < signal.grid.n_points; ++j) {
        const double x = signal.grid.coord(j);
        n1 += std::exp(-x * x / (cfg.a * cfg.a));
        n2 += std::exp(-x * x / (cfg.A * cfg.A));
    }
    const double dxg = signal.grid.spacing();
    n1 = 1.0 / std::sqrt(n1 * dxg);
    n2 = 1.0 / std::sqrt(n2 * dxg);

    // intra-LO mutual overlap, used only when spurs are injected
    double lo_mutual = 0.0;
    if (dsp.with_spurs) {
        const auto shapes = detail::lo_shapes(cfg, signal.grid);
        for (std::size_t j = 0; j < signal.grid.n_points; ++j)
            lo_mutual += shapes.lo1[j] * shapes.lo2[j];
        lo_mutual *= dxg * cfg.alpha;
    }

    const double keff = signal.effective_k();
    auto p0s = scan.p0_values(keff, cfg.focal_length);
    std::sort(p0s.begin(), p0s.end());
    const double f_center = 0.5 * (cfg.beat1() + cfg.beat2());
    const double w_lo_beat = 2.0 * std::numbers::pi * (cfg.freq_lo1 - cfg.freq_lo2);

    std::vector<double> v(n_total);
    const std::size_t np = p0s.size();
    for (std::size_t i = 0; i < scan.dx_values.size(); ++i) {
        for (std::size_t j = 0; j < np; ++j) {
            const auto [o1, o2] =
                detail::overlaps_impl(signal, cfg, scan.dx_values[i], p0s[j], n1, n2);
            const cplx r1 = std::polar(1.0, -w1 / dsp.sample_rate);
            const cplx r2 = std::polar(1.0, -w2 / dsp.sample_rate);
            const cplx rl = std::polar(1.0, -w_lo_beat / dsp.sample_rate);
            cplx z1 = o1, z2 = o2;
            cplx zl{lo_mutual, 0.0};
            const double dc = dsp.with_spurs ? std::norm(o1) + std::norm(o2) : 0.0;
            for (std::size_t n = 0; n < n_total; ++n) {
                double s = 2.0 * z1.real() + 2.0 * z2.real();
                if (dsp.with_spurs) s += dc + 2.0 * zl.real();
                v[n] = s;
                z1 *= r1;
                z2 *= r2;
                if (dsp.with_spurs) zl *= rl;
            }
            dsp::bandpass_zero_phase(v, f_center, cfg.analyzer_bandwidth, dsp.sample_rate);
            for (double& s : v) s *= s; // the squarer
            const auto lk = dsp::lockin(v, n_warm, n_demod, fd, dsp.sample_rate,
                                        dsp.phase_i_deg, dsp.phase_q_deg);
            res.grid.values[i * np + j] = cplx{lk.in_phase, lk.quadrature};
        }
    }

    cplx num{0.0, 0.0};
    double den = 0.0, ref = 0.0;
    for (std::size_t idx = 0; idx < res.grid.values.size(); ++idx) {
        num += std::conj(res.grid.values[idx]) * ideal.grid.values[idx];
        den += std::norm(res.grid.values[idx]);
        ref += std::norm(ideal.grid.values[idx]);
    }
    res.gain_vs_ideal = den > 0.0 ? num / den : cplx{0.0, 0.0};
    double err = 0.0;
    for (std::size_t idx = 0; idx < res.grid.values.size(); ++idx)
        err += std::norm(res.gain_vs_ideal * res.grid.values[idx] - ideal.grid.values[idx]);
    res.rel_l2_vs_ideal = ref > 0.0 ? std::sqrt(err / ref) : 0.0;
    return res;
}

/// Correlation and gain-fitted L2 error of a scan against the K* oracle
/// sampled on the same axes.
struct OracleComparison {
    double correlation = 0.0;  // |<S, K*>| / (|S| |K*|)
    double rel_l2 = 0.0;       // ||K* - g S|| / ||K*|| with least-squares g
    cplx gain{0.0, 0.0};
    cplx center_gain{0.0, 0.0}; // S / K* at the center scan point
    double max_dev_center_gain = 0.0; // max |S/c - K*| / max|K*|
};

inline OracleComparison compare_scan_to_kr(const SampledField& signal,
                                           const PhaseSpaceGrid& scan_grid) {
    const PhaseSpaceGrid oracle =
        kr_conjugate_at(signal, scan_grid.x_grid, scan_grid.p_grid);
    OracleComparison c;
    cplx num{0.0, 0.0};
    double ns = 0.0, nk = 0.0;
    for (std::size_t idx = 0; idx < oracle.values.size(); ++idx) {
        num += scan_grid.values[idx] * std::conj(oracle.values[idx]);
        ns += std::norm(scan_grid.values[idx]);
        nk += std::norm(oracle.values[idx]);
    }
    c.correlation = (ns > 0.0 && nk > 0.0) ? std::abs(num) / std::sqrt(ns * nk) : 0.0;
    cplx gnum{0.0, 0.0};
    for (std::size_t idx = 0; idx < oracle.values.size(); ++idx)
        gnum += std::conj(scan_grid.values[idx]) * oracle.values[idx];
    c.gain = ns > 0.0 ? gnum / ns : cplx{0.0, 0.0};
    double err = 0.0;
    for (std::size_t idx = 0; idx < oracle.values.size(); ++idx)
        err += std::norm(c.gain * scan_grid.values[idx] - oracle.values[idx]);
    c.rel_l2 = nk > 0.0 ? std::sqrt(err / nk) : 0.0;

    const std::size_t ic = scan_grid.n_x() / 2, jc = scan_grid.n_p() / 2;
    const cplx kc = oracle.at(ic, jc);
    if (std::abs(kc) > 0.0) {
        c.center_gain = scan_grid.at(ic, jc) / kc;
        double kmax = oracle.peak_abs(), dev = 0.0;
        if (std::abs(c.center_gain) > 0.0 && kmax > 0.0) {
            for (std::size_t idx = 0; idx < oracle.values.size(); ++idx)
                dev = std::max(dev, std::abs(scan_grid.values[idx] / c.center_gain -
                                             oracle.values[idx]));
            c.max_dev_center_gain = dev / kmax;
        }
    }
    return c;
}

/// LO-resolution convergence study: for each factor m, run ideal_scan with
/// a/m and A*m and report the gain-fitted L2 error against the K* oracle.
struct SweepPoint {
    double factor = 1.0;
    double a = 0.0, A = 0.0;
    double rel_l2 = 0.0;
    double correlation = 0.0;
};

struct SweepReport {
    std::vector<SweepPoint> points;
    bool monotone_nonincreasing = true;
};

inline SweepReport resolution_sweep(const SampledField& signal, const LOConfig& cfg_base,
                                    const ScanConfig& scan,
                                    const std::vector<double>& factors) {
    SweepReport rep;
    for (double m : factors) {
        if (!(m >= 1.0))
            throw std::invalid_argument("resolution_sweep: factors must be >= 1");
        LOConfig cfg = cfg_base;
        cfg.a = cfg_base.a / m;
        cfg.A = cfg_base.A * m;
        const ScanResult run = ideal_scan(signal, cfg, scan);
        const OracleComparison cmp = compare_scan_to_kr(signal, run.grid);
        rep.points.push_back({m, cfg.a, cfg.A, cmp.rel_l2, cmp.correlation});
    }
    for (std::size_t i = 1; i < rep.points.size(); ++i)
        if (rep.points[i].rel_l2 > rep.points[i - 1].rel_l2 * (1.0 + 1e-12))
            rep.monotone_nonincreasing = false;
    return rep;
}

} // namespace krspace
