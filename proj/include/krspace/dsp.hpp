#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

// Small DSP kit for the simulated receiver chain: an RBJ biquad band-pass
// run zero-phase (forward-backward), and a rectangular-window dual-phase
// lock-in.

namespace krspace::dsp {

/// Second-order IIR section, direct form II transposed.
struct Biquad {
    double b0 = 1.0, b1 = 0.0, b2 = 0.0, a1 = 0.0, a2 = 0.0;

    void filter_inplace(std::vector<double>& x) const {
        double s1 = 0.0, s2 = 0.0;
        for (double& v : x) {
            const double in = v;
            const double out = b0 * in + s1;
            s1 = b1 * in - a1 * out + s2;
            s2 = b2 * in - a2 * out;
            v = out;
        }
    }
};

/// RBJ cookbook band-pass (peak gain 1) at center_hz with -3 dB width
/// bandwidth_hz for a single pass.
inline Biquad bandpass_biquad(double center_hz, double bandwidth_hz, double sample_rate) {
    if (!(center_hz > 0.0) || !(bandwidth_hz > 0.0))
        throw std::invalid_argument("bandpass_biquad: center and bandwidth must be > 0");
    if (center_hz >= 0.5 * sample_rate)
        throw std::invalid_argument("bandpass_biquad: center above Nyquist");
    const double w0 = 2.0 * std::numbers::pi * center_hz / sample_rate;
    const double q = center_hz / bandwidth_hz;
    const double alpha = std::sin(w0) / (2.0 * q);
    const double a0 = 1.0 + alpha;
    Biquad bq;
    bq.b0 = alpha / a0;
    bq.b1 = 0.0;
    bq.b2 = -alpha / a0;
    bq.a1 = -2.0 * std::cos(w0) / a0;
    bq.a2 = (1.0 - alpha) / a0;
    return bq;
}

/// Zero-phase band-pass: one forward and one backward pass of the biquad
/// (4th-order magnitude response, no phase skew between quadratures).
inline void bandpass_zero_phase(std::vector<double>& x, double center_hz,
                                double bandwidth_hz, double sample_rate) {
    const Biquad bq = bandpass_biquad(center_hz, bandwidth_hz, sample_rate);
    bq.filter_inplace(x);
    std::reverse(x.begin(), x.end());
    bq.filter_inplace(x);
    std::reverse(x.begin(), x.end());
}

/// Dual-phase lock-in: averages x[n]*ref(t_n) over [first, first+count) with
/// rectangular weighting.  References are cos(w t - ph_i) and cos(w t - ph_q);
/// returns 2/N-scaled in-phase and quadrature outputs.
struct LockinOutput {
    double in_phase = 0.0;
    double quadrature = 0.0;
};

inline LockinOutput lockin(const std::vector<double>& x, std::size_t first,
                           std::size_t count, double ref_hz, double sample_rate,
                           double phase_i_deg, double phase_q_deg) {
    if (first + count > x.size())
        throw std::invalid_argument("lockin: window exceeds record");
    const double w = 2.0 * std::numbers::pi * ref_hz / sample_rate;
    const double pi_rad = phase_i_deg * std::numbers::pi / 180.0;
    const double pq_rad = phase_q_deg * std::numbers::pi / 180.0;
    // phasor recurrence; drift over ~1e6 samples is far below the chain tolerance
    const std::complex<double> step = std::polar(1.0, w);
    std::complex<double> ph = std::polar(1.0, w * static_cast<double>(first));
    double si = 0.0, sq = 0.0;
    const double ci = std::cos(pi_rad), sii = std::sin(pi_rad);
    const double cq = std::cos(pq_rad), sqq = std::sin(pq_rad);
    for (std::size_t n = 0; n < count; ++n, ph *= step) {
        const double c = ph.real(), s = ph.imag();
        const double v = x[first + n];
        si += v * (c * ci + s * sii); // cos(wt - phase_i)
        sq += v * (c * cq + s * sqq);
    }
    const double scale = 2.0 / static_cast<double>(count);
    return {si * scale, sq * scale};
}

} // namespace krspace::dsp
