#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

// Discrete Fourier machinery for centered collocation grids.
//
// Everything here reduces to sums of the form
//     g_m = sum_j f_j * exp(sign * i * u_m * x_j)
// with x_j = (r + j)*dc and u_m = (s + m)*du where du*dc = 2*pi/N.  The
// exponent is then 2*pi*(r+j)*(s+m)/N with integer r, s, so all phases are
// exact N-th roots of unity; no large-argument trig is ever evaluated.

namespace krspace::detail {

using cplx = std::complex<double>;

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// In-place iterative radix-2 FFT: a_k <- sum_j a_j exp(sign*2*pi*i*j*k/n).
inline void fft_pow2(std::vector<cplx>& a, int sign) {
    const std::size_t n = a.size();
    if (n <= 1) return;
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const std::size_t half = len >> 1;
        std::vector<cplx> w(half);
        for (std::size_t m = 0; m < half; ++m)
            w[m] = std::polar(1.0, ang * static_cast<double>(m));
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t m = 0; m < half; ++m) {
                const cplx u = a[i + m];
                const cplx v = a[i + m + half] * w[m];
                a[i + m] = u + v;
                a[i + m + half] = u - v;
            }
        }
    }
}

/// Arbitrary-length DFT via Bluestein's chirp-z reduction to a radix-2 FFT.
inline void fft(std::vector<cplx>& a, int sign) {
    const std::size_t n = a.size();
    if (n <= 1) return;
    if (is_pow2(n)) {
        fft_pow2(a, sign);
        return;
    }
    // chirp c_m = exp(sign*i*pi*m^2/n); reduce m^2 mod 2n to keep arguments small
    const std::size_t n2 = 2 * n;
    std::vector<cplx> chirp(n);
    for (std::size_t m = 0; m < n; ++m) {
        const unsigned long long q = (static_cast<unsigned long long>(m) * m) % n2;
        chirp[m] = std::polar(1.0, sign * std::numbers::pi * static_cast<double>(q) /
                                        static_cast<double>(n));
    }
    std::size_t L = 1;
    while (L < 2 * n - 1) L <<= 1;
    std::vector<cplx> fa(L, cplx{0.0, 0.0}), fb(L, cplx{0.0, 0.0});
    for (std::size_t j = 0; j < n; ++j) fa[j] = a[j] * chirp[j];
    for (std::size_t m = 0; m < n; ++m) {
        fb[m] = std::conj(chirp[m]);
        if (m != 0) fb[L - m] = std::conj(chirp[m]);
    }
    fft_pow2(fa, -1);
    fft_pow2(fb, -1);
    for (std::size_t i = 0; i < L; ++i) fa[i] *= fb[i];
    fft_pow2(fa, +1);
    const double inv = 1.0 / static_cast<double>(L);
    for (std::size_t k = 0; k < n; ++k) a[k] = fa[k] * inv * chirp[k];
}

/// Exponential-sum evaluation on integer-offset collocation grids:
///
///   g_m = sum_{j<N} f_j * w^{(r+j)(s+m)},   w = exp(sign*2*pi*i/N),
///
/// i.e. g_m = sum_j f_j exp(sign*i*u_m*x_j) for x_j=(r+j)*dc, u_m=(s+m)*du
/// with du*dc*N = 2*pi.  All exponents are reduced modulo N in integer
/// arithmetic, so the result is bitwise deterministic.
inline std::vector<cplx> collocated_ft(const std::vector<cplx>& f, long long r,
                                       long long s, int sign) {
    const std::size_t n = f.size();
    const long long nn = static_cast<long long>(n);
    auto modn = [nn](long long v) {
        long long m = v % nn;
        return static_cast<std::size_t>(m < 0 ? m + nn : m);
    };
    std::vector<cplx> roots(n);
    for (std::size_t t = 0; t < n; ++t)
        roots[t] = std::polar(1.0, sign * 2.0 * std::numbers::pi *
                                       static_cast<double>(t) / static_cast<double>(n));

    std::vector<cplx> a(n);
    for (std::size_t j = 0; j < n; ++j)
        a[j] = f[j] * roots[modn(s * static_cast<long long>(j))]; // w^{s j}
    fft(a, sign);                                                 // sum_j a_j w^{m j}
    std::vector<cplx> g(n);
    for (std::size_t m = 0; m < n; ++m)
        g[m] = a[m] * roots[modn(r * (s + static_cast<long long>(m)))]; // w^{r(s+m)}
    return g;
}

/// Derives the integer offsets from grid geometry and checks the 2*pi pact.
struct Collocation {
    long long r;  // input coordinate offset, x_j = (r + j)*dc
    long long s;  // output coordinate offset, u_m = (s + m)*du
};

inline Collocation make_collocation(double c0, double dc, double u0, double du,
                                    std::size_t n) {
    const double pact = du * dc * static_cast<double>(n) / (2.0 * std::numbers::pi);
    if (std::abs(pact - 1.0) > 1e-9)
        throw std::invalid_argument("collocated_ft: du*dc*N != 2*pi (got ratio " +
                                    std::to_string(pact) + ")");
    const double rd = c0 / dc, sd = u0 / du;
    const long long r = std::llround(rd), s = std::llround(sd);
    if (std::abs(rd - static_cast<double>(r)) > 1e-6 ||
        std::abs(sd - static_cast<double>(s)) > 1e-6)
        throw std::invalid_argument("collocated_ft: grid origins are not integer multiples of the spacings");
    return {r, s};
}

/// sum_j f_j exp(sign*i*u_m*x_j) for x_j = c0 + j*dc, u_m = u0 + m*du.
inline std::vector<cplx> ft_samples(const std::vector<cplx>& f, double c0, double dc,
                                    double u0, double du, int sign) {
    const auto [r, s] = make_collocation(c0, dc, u0, du, f.size());
    return collocated_ft(f, r, s, sign);
}

/// Exact trigonometric 2x refinement: N samples on (c0, dc) to 2N samples on
/// (c0, dc/2).  Coefficients are taken on the centered conjugate grid and
/// re-evaluated; exact for data band-limited to the original grid.
inline std::vector<cplx> refine2x(const std::vector<cplx>& f, double c0, double dc) {
    const std::size_t n = f.size();
    const double du = 2.0 * std::numbers::pi / (static_cast<double>(n) * dc);
    const double u0 = -0.5 * static_cast<double>(n) * du;
    std::vector<cplx> coeff = ft_samples(f, c0, dc, u0, du, -1);
    coeff.resize(2 * n, cplx{0.0, 0.0});
    std::vector<cplx> fine = ft_samples(coeff, u0, du, c0, dc / 2.0, +1);
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& v : fine) v *= inv;
    return fine;
}

/// Naive O(N^2) evaluation of the same sum; the test oracle for the FFT path.
inline std::vector<cplx> ft_samples_direct(const std::vector<cplx>& f, double c0,
                                           double dc, double u0, double du, int sign) {
    const std::size_t n = f.size();
    const long long nn = static_cast<long long>(n);
    const auto [r, s] = make_collocation(c0, dc, u0, du, n);
    std::vector<cplx> g(n);
    for (std::size_t m = 0; m < n; ++m) {
        cplx acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            long long e = ((r + static_cast<long long>(j)) % nn) *
                          ((s + static_cast<long long>(m)) % nn) % nn;
            if (e < 0) e += nn;
            acc += f[j] * std::polar(1.0, sign * 2.0 * std::numbers::pi *
                                              static_cast<double>(e) /
                                              static_cast<double>(n));
        }
        g[m] = acc;
    }
    return g;
}

} // namespace krspace::detail
