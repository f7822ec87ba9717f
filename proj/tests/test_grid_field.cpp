// Wave-field construction and the unitary spatial<->momentum transform.
//
// Closed forms used as oracles:
//   normalized Gaussian (sigma = 1):      psi(x) = pi^(-1/4) exp(-x^2/2)
//   its Fourier transform (self-dual):    psitilde(p) = pi^(-1/4) exp(-p^2/2)
//   chirped Gaussian exp(-g x^2/2), g = 1/s^2 - i k/R:
//       psitilde(p) = (pi s^2)^(-1/4) g^(-1/2) exp(-p^2/(2g))
//   obstructed-Gaussian remaining norm on the 512/16 grid (brute-force
//   Riemann sum, frozen):                 0.46584066572149763

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <complex>
#include <krspace/field.hpp>

using namespace krspace;
using Catch::Approx;

namespace {
constexpr double pi_quarter_inv = 0.7511255444649425; // pi^(-1/4)

Grid1D unit_grid(std::size_t n = 512, double extent = 16.0) {
    return Grid1D(n, extent, UnitMode::dimensionless);
}
} // namespace

TEST_CASE("grid geometry and conjugate grid") {
    const Grid1D g(512, 16.0);
    CHECK(g.spacing() == Approx(16.0 / 512).epsilon(1e-15));
    CHECK(g.coord(0) == Approx(-8.0).margin(1e-15));
    CHECK(g.coord(256) == Approx(0.0).margin(1e-15));

    const Grid1D c = g.conjugate();
    CHECK(c.spacing() == Approx(2.0 * std::numbers::pi / 16.0).epsilon(1e-14));
    CHECK(c.min_coord() == Approx(-std::numbers::pi / g.spacing()).epsilon(1e-14));
    // conjugate of the conjugate restores the original extent
    CHECK(c.conjugate().extent == Approx(16.0).epsilon(1e-12));

    CHECK_THROWS_AS(Grid1D(1, 16.0), std::invalid_argument);
    CHECK_THROWS_AS(Grid1D(512, -1.0), std::invalid_argument);
}

TEST_CASE("gaussian at the waist: normalization and symmetry") {
    const SampledField f = make_gaussian(unit_grid(), 1.0);
    CHECK(f.norm_squared() == Approx(1.0).margin(1e-12));
    CHECK(f.amplitudes[256].real() == Approx(pi_quarter_inv).margin(1e-12));

    // R = infinity: exactly real; even under j <-> N-j
    for (const cplx& a : f.amplitudes) CHECK(a.imag() == 0.0);
    for (std::size_t j = 1; j < 512; ++j)
        CHECK(f.amplitudes[j].real() == Approx(f.amplitudes[512 - j].real()).margin(1e-15));
}

TEST_CASE("paper beam preset: 0.85 mm waist in millimeter mode") {
    const Grid1D g(512, 16.0 * 0.85, UnitMode::millimeters);
    const SampledField f = make_gaussian(g, 0.85);
    CHECK(f.norm_squared() == Approx(1.0).margin(1e-12));
    // 1/e-intensity convention: |psi(sigma)|^2 = |psi(0)|^2 / e
    const auto at = [&](double x) {
        return std::norm(f.amplitudes[static_cast<std::size_t>(
            std::llround((x - g.min_coord()) / g.spacing()))]);
    };
    CHECK(at(0.85) / at(0.0) == Approx(std::exp(-1.0)).epsilon(1e-10));
}

TEST_CASE("gaussian rejects a grid that truncates the beam") {
    CHECK_THROWS_WITH(make_gaussian(Grid1D(128, 4.0, UnitMode::dimensionless), 1.0),
                      Catch::Matchers::ContainsSubstring("8.0"));
    CHECK_THROWS_AS(make_gaussian(unit_grid(), -1.0), std::invalid_argument);
}

TEST_CASE("momentum transform is unitary and self-dual on the Gaussian") {
    const SampledField f = make_gaussian(unit_grid(), 1.0);
    const SampledField m = to_momentum(f);

    double linf = 0.0;
    for (std::size_t j = 0; j < m.grid.n_points; ++j) {
        const double p = m.grid.coord(j);
        linf = std::max(
            linf, std::abs(m.amplitudes[j] - cplx{pi_quarter_inv * std::exp(-p * p / 2), 0}));
    }
    CHECK(linf < 1e-10);

    // Parseval and round trip
    CHECK(m.norm_squared() == Approx(f.norm_squared()).margin(1e-10));
    const SampledField back = to_position(m);
    double err2 = 0.0;
    for (std::size_t j = 0; j < f.grid.n_points; ++j)
        err2 += std::norm(back.amplitudes[j] - f.amplitudes[j]);
    CHECK(std::sqrt(err2 * f.grid.spacing()) < 1e-10);
}

TEST_CASE("parseval holds for asymmetric and chirped fields") {
    for (double center : {0.0, 0.7, -1.3}) {
        const SampledField f = make_gaussian(unit_grid(), 1.0, 3.0, center);
        CHECK(to_momentum(f).norm_squared() == Approx(f.norm_squared()).margin(1e-10));
    }
}

TEST_CASE("momentum transform of a chirped Gaussian matches the Gaussian-integral form") {
    // g = 1/s^2 - i k/R with k = 1 in dimensionless mode
    const double s = 1.0, R = 3.0;
    const SampledField f = make_gaussian(unit_grid(1024, 20.0), s, R);
    const SampledField m = to_momentum(f);
    const cplx g{1.0 / (s * s), -1.0 / R};
    const cplx pref = std::pow(cplx{std::numbers::pi * s * s, 0.0}, -0.25) / std::sqrt(g);
    double linf = 0.0;
    for (std::size_t j = 0; j < m.grid.n_points; ++j) {
        const double p = m.grid.coord(j);
        linf = std::max(linf, std::abs(m.amplitudes[j] - pref * std::exp(-p * p / (2.0 * g))));
    }
    CHECK(linf < 1e-10);
}

TEST_CASE("impulse field has a flat magnitude spectrum") {
    SampledField f;
    f.grid = unit_grid(64, 8.0);
    f.amplitudes.assign(64, cplx{0.0, 0.0});
    f.amplitudes[40] = cplx{1.0, 0.0};
    const SampledField m = to_momentum(f);
    const double mag0 = std::abs(m.amplitudes[0]);
    for (const cplx& a : m.amplitudes) CHECK(std::abs(a) == Approx(mag0).epsilon(1e-12));
}

TEST_CASE("obstruction zeroes the blocked region and nothing else") {
    const Grid1D g(512, 16.0 * 0.85, UnitMode::millimeters);
    const SampledField f = make_gaussian(g, 0.85);
    const SampledField w = apply_obstruction(f, 0.5);
    for (std::size_t j = 0; j < g.n_points; ++j) {
        const double x = g.coord(j);
        if (std::abs(x) <= 0.5) {
            CHECK(w.amplitudes[j] == cplx{0.0, 0.0});
        } else {
            CHECK(w.amplitudes[j] == f.amplitudes[j]); // untouched, incl. x = +-0.6
        }
    }
    // deliberately not renormalized
    CHECK(w.norm_squared() < 0.6);
}

TEST_CASE("obstruction is idempotent and half_width 0 is the identity") {
    const SampledField f = make_gaussian(unit_grid(), 1.0);
    const SampledField once = apply_obstruction(f, 0.5);
    const SampledField twice = apply_obstruction(once, 0.5);
    CHECK(once.amplitudes == twice.amplitudes);
    CHECK(apply_obstruction(f, 0.0).amplitudes == f.amplitudes);
    CHECK_THROWS_AS(apply_obstruction(f, 8.0), std::invalid_argument);
}

TEST_CASE("obstructed-Gaussian remaining norm matches the frozen Riemann sum") {
    // brute-force reference computed on this exact grid ahead of the build
    const SampledField w = apply_obstruction(make_gaussian(unit_grid(), 1.0), 0.5);
    CHECK(w.norm_squared() == Approx(0.46584066572149763).margin(1e-12));
}

TEST_CASE("obstructed beam develops interference fringes in momentum") {
    const Grid1D g(512, 16.0 * 0.85, UnitMode::millimeters);
    const SampledField w = normalized(apply_obstruction(make_gaussian(g, 0.85), 0.5));
    const SampledField m = to_momentum(w);
    std::vector<double> I(m.grid.n_points);
    for (std::size_t j = 0; j < I.size(); ++j) I[j] = std::norm(m.amplitudes[j]);
    const double peak = *std::max_element(I.begin(), I.end());
    int maxima = 0;
    for (std::size_t j = 257; j + 1 < I.size(); ++j)
        if (I[j] > I[j - 1] && I[j] > I[j + 1] && I[j] > 1e-4 * peak) ++maxima;
    CHECK(maxima >= 2);
}

TEST_CASE("normalized enforces unit norm and rejects the zero field") {
    SampledField f = make_gaussian(unit_grid(), 1.0);
    for (cplx& a : f.amplitudes) a *= 3.7;
    CHECK(normalized(f).norm_squared() == Approx(1.0).margin(1e-12));
    SampledField z;
    z.grid = unit_grid(64, 8.0);
    z.amplitudes.assign(64, cplx{0.0, 0.0});
    CHECK_THROWS_AS(normalized(z), std::invalid_argument);
}

TEST_CASE("pointwise evaluators agree with grid samples at the nodes") {
    const SampledField f = make_gaussian(unit_grid(256, 16.0), 1.0, 5.0, 0.3);
    const SampledField m = to_momentum(f);
    for (std::size_t j : {std::size_t{10}, std::size_t{100}, std::size_t{128}, std::size_t{200}}) {
        CHECK(std::abs(field_value_at(f, f.grid.coord(j)) - f.amplitudes[j]) < 1e-10);
        CHECK(std::abs(momentum_value_at(f, m.grid.coord(j)) - m.amplitudes[j]) < 1e-10);
    }
}
