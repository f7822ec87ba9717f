// Dual-LO heterodyne: LO synthesis, overlap integrals, the ideal scan and
// its convergence to the K* oracle.
//
// Key limits (unit-norm LO shapes):
//   a -> 0:   o1 -> c1 E_S(d_x) e^{-i p0 d_x}   (focused LO samples position)
//   A -> inf: o2 -> c2 psitilde(p0)             (collimated LO samples momentum)
// so S = conj(o1) o2 -> c K*(x0, p0) with a scan-point-independent c > 0.

#include <catch2/catch_amalgamated.hpp>

#include <krspace/heterodyne.hpp>

using namespace krspace;
using Catch::Approx;

namespace {

SampledField unit_gaussian(std::size_t n = 2048, double extent = 16.0) {
    return make_gaussian(Grid1D(n, extent, UnitMode::dimensionless), 1.0);
}

LOConfig dimensionless_lo(double a, double A) {
    LOConfig lo;
    lo.a = a;
    lo.A = A;
    lo.focal_length = 1.0;
    return lo;
}

} // namespace

TEST_CASE("combined LO field: constructive and destructive superposition") {
    LOConfig lo = dimensionless_lo(0.1, 2.0);
    const Grid1D g(2048, 16.0, UnitMode::dimensionless);
    const SampledField sum = make_lo_field(lo, g, 0.0);
    CHECK(std::abs(sum.amplitudes[1024] - cplx{2.0, 0.0}) < 1e-12);
    const SampledField diff = make_lo_field(lo, g, std::numbers::pi);
    CHECK(std::abs(diff.amplitudes[1024]) < 1e-12);
}

TEST_CASE("paper LO preset: both Gaussians representable, frozen norm") {
    // integral |E_LO|^2 dx = sqrt(pi)(a + A) + 2 sqrt(2 pi) a A / sqrt(a^2+A^2)
    LOConfig lo; // a = 81 um, A = 2.6 mm
    const Grid1D g(2048, 16.9, UnitMode::millimeters);
    const SampledField f = make_lo_field(lo, g, 0.0);
    // the collimated tail beyond +-8.45 mm truncates ~2e-5 of the integral
    CHECK(f.norm_squared() == Approx(5.1578256381794585).epsilon(1e-4));
}

TEST_CASE("LO construction reports the required resolution or extent") {
    LOConfig lo;
    CHECK_THROWS_WITH(make_lo_field(lo, Grid1D(128, 16.9, UnitMode::millimeters), 0.0),
                      Catch::Matchers::ContainsSubstring("n_points"));
    CHECK_THROWS_WITH(make_lo_field(lo, Grid1D(2048, 10.0, UnitMode::millimeters), 0.0),
                      Catch::Matchers::ContainsSubstring("extent"));
}

TEST_CASE("LO config invariants") {
    LOConfig lo;
    lo.A = lo.a;
    CHECK_THROWS_AS(lo.validate(), std::invalid_argument);
    lo = LOConfig{};
    lo.freq_lo1 = lo.freq_lo2;
    CHECK_THROWS_AS(lo.validate(), std::invalid_argument);
    lo = LOConfig{};
    lo.analyzer_bandwidth = 1.0;
    CHECK_THROWS_AS(lo.validate(), std::invalid_argument);
}

TEST_CASE("self-overlap: matched focused LO gives o1 = 1, blocked LO2 gives 0") {
    LOConfig lo = dimensionless_lo(0.7, 3.0);
    lo.alpha = 0.0;
    const Grid1D g(2048, 16.0, UnitMode::dimensionless);
    SampledField sig;
    sig.grid = g;
    sig.amplitudes.resize(g.n_points);
    for (std::size_t j = 0; j < g.n_points; ++j) {
        const double x = g.coord(j);
        sig.amplitudes[j] = std::exp(-x * x / (2.0 * lo.a * lo.a));
    }
    sig = normalized(std::move(sig));
    const auto [o1, o2] = overlap_beat(sig, lo, 0.0, 0.0);
    CHECK(std::abs(o1 - cplx{1.0, 0.0}) < 1e-12);
    CHECK(std::abs(o2) == 0.0);
}

TEST_CASE("delta limit: a tight focused LO samples the field pointwise") {
    const SampledField f = make_gaussian(Grid1D(4096, 16.0, UnitMode::dimensionless),
                                         1.0, 4.0, 0.3);
    LOConfig lo = dimensionless_lo(1.0 / 50.0, 20.0);
    cplx ratio_ref{0.0, 0.0};
    for (const auto& [dx, dp] : std::vector<std::pair<double, double>>{
             {0.0, 0.0}, {0.8, 0.4}, {-1.1, -0.6}, {1.9, 1.2}}) {
        const auto [o1, o2] = overlap_beat(f, lo, dx, dp);
        const double p0 = -dp / lo.focal_length; // k = 1
        const cplx expect = field_value_at(f, dx) * std::polar(1.0, -p0 * dx);
        const cplx ratio = o1 / expect;
        if (ratio_ref == cplx{0.0, 0.0}) ratio_ref = ratio;
        CHECK(std::abs(ratio - ratio_ref) < 0.01 * std::abs(ratio_ref));
    }
}

TEST_CASE("flat limit: a wide collimated LO samples the momentum amplitude") {
    const SampledField f = make_gaussian(Grid1D(4096, 16.0, UnitMode::dimensionless),
                                         1.0, 4.0, 0.3);
    LOConfig lo = dimensionless_lo(1.0 / 20.0, 50.0);
    cplx ratio_ref{0.0, 0.0};
    for (double p0 : {0.0, 0.7, -1.4, 2.2}) {
        const auto [o1, o2] = overlap_beat(f, lo, 0.0, -p0 * lo.focal_length);
        const cplx expect = momentum_value_at(f, p0);
        const cplx ratio = o2 / expect;
        if (ratio_ref == cplx{0.0, 0.0}) ratio_ref = ratio;
        CHECK(std::abs(ratio - ratio_ref) < 0.01 * std::abs(ratio_ref));
    }
}

TEST_CASE("ideal scan correlates with the K* oracle above 0.99") {
    const SampledField f = unit_gaussian();
    const LOConfig lo = dimensionless_lo(1.0 / 20.0, 20.0);
    const ScanConfig scan = ScanConfig::from_phase_space(4.0, 4.0, 41, 41, 1.0, 1.0);
    const ScanResult run = ideal_scan(f, lo, scan);
    const OracleComparison cmp = compare_scan_to_kr(f, run.grid);
    CHECK(cmp.correlation > 0.99);
    CHECK(cmp.max_dev_center_gain < 0.05);
}

TEST_CASE("K* convergence contract holds for an asymmetric chirped field") {
    const SampledField f = make_gaussian(Grid1D(4096, 16.0, UnitMode::dimensionless),
                                         1.0, 3.0, 0.5);
    const ScanConfig scan = ScanConfig::from_phase_space(3.0, 3.0, 21, 21, 1.0, 1.0);

    const ScanResult s20 = ideal_scan(f, dimensionless_lo(1.0 / 20.0, 20.0), scan);
    CHECK(compare_scan_to_kr(f, s20.grid).max_dev_center_gain < 0.05);

    const ScanResult s40 = ideal_scan(f, dimensionless_lo(1.0 / 40.0, 40.0), scan);
    CHECK(compare_scan_to_kr(f, s40.grid).max_dev_center_gain < 0.02);
}

TEST_CASE("scan of a symmetric real field is real at the origin") {
    const SampledField f = unit_gaussian();
    const LOConfig lo = dimensionless_lo(1.0 / 20.0, 20.0);
    const ScanConfig scan = ScanConfig::from_phase_space(2.0, 2.0, 5, 5, 1.0, 1.0);
    const ScanResult run = ideal_scan(f, lo, scan);
    const cplx center = run.grid.at(2, 2);
    CHECK(std::abs(center.imag()) / std::abs(center) < 1e-6);
}

TEST_CASE("wire field: blocked mirror positions give no signal") {
    const SampledField w = normalized(apply_obstruction(
        make_gaussian(Grid1D(4096, 16.0 * 0.85, UnitMode::millimeters), 0.85), 0.5));
    LOConfig lo;
    lo.a = 0.85 / 20.0;
    lo.A = 0.85 * 20.0;
    const double k = w.effective_k();
    const ScanConfig scan = ScanConfig::from_phase_space(3.4, 4.0 / 0.85, 17, 17, k,
                                                         lo.focal_length);
    const ScanResult run = ideal_scan(w, lo, scan);
    const double peak = run.grid.peak_abs();
    for (std::size_t i = 0; i < run.grid.n_x(); ++i) {
        if (std::abs(run.grid.x_grid.coord(i)) > 0.25) continue; // deep inside the wire
        for (std::size_t j = 0; j < run.grid.n_p(); ++j)
            CHECK(std::abs(run.grid.at(i, j)) < 1e-3 * peak);
    }
}

TEST_CASE("scan output is |lambda|^2-homogeneous in the field") {
    SampledField f = unit_gaussian(1024);
    const LOConfig lo = dimensionless_lo(0.2, 8.0);
    const ScanConfig scan = ScanConfig::from_phase_space(2.0, 2.0, 5, 5, 1.0, 1.0);
    const ScanResult base = ideal_scan(f, lo, scan);
    const cplx lambda{0.6, -0.8};
    for (cplx& a : f.amplitudes) a *= lambda;
    const ScanResult scaled = ideal_scan(f, lo, scan);
    for (std::size_t idx = 0; idx < base.grid.values.size(); ++idx)
        CHECK(std::abs(scaled.grid.values[idx] - std::norm(lambda) * base.grid.values[idx]) <
              1e-12);
}

TEST_CASE("resolution sweep: error decreases as the LO pair sharpens") {
    const SampledField f = unit_gaussian();
    const LOConfig base = dimensionless_lo(1.0 / 2.5, 2.5);
    const ScanConfig scan = ScanConfig::from_phase_space(4.0, 4.0, 21, 21, 1.0, 1.0);
    const SweepReport rep = resolution_sweep(f, base, scan, {1.0, 2.0, 4.0, 8.0});
    REQUIRE(rep.points.size() == 4);
    CHECK(rep.monotone_nonincreasing);
    for (std::size_t i = 1; i < rep.points.size(); ++i)
        CHECK(rep.points[i].rel_l2 < rep.points[i - 1].rel_l2);
    // at m = 8 the pair reaches a = sigma/20, A = 20 sigma: the x-resolution
    // times the p-resolution (1/A) sits far below the single-beam bound 1/2
    const SweepPoint& final_pt = rep.points.back();
    CHECK(final_pt.a * (1.0 / final_pt.A) < 0.5);
    CHECK(final_pt.rel_l2 < 0.05);
    CHECK_THROWS_AS(resolution_sweep(f, base, scan, {0.5}), std::invalid_argument);
}

TEST_CASE("scan axes are inclusive, symmetric and correctly oriented") {
    const ScanConfig s = ScanConfig::from_phase_space(4.0, 3.0, 41, 31, 1.0, 1.0);
    CHECK(s.dx_values.front() == Approx(-4.0));
    CHECK(s.dx_values.back() == Approx(4.0));
    CHECK(s.dx_values[20] == Approx(0.0).margin(1e-12));
    const auto p0 = s.p0_values(1.0, 1.0);
    CHECK(p0.front() == Approx(-3.0));
    CHECK(p0.back() == Approx(3.0));

    const ScanConfig d = ScanConfig::defaults(UnitMode::millimeters, 9929.0, 60.0, 0.85);
    CHECK(d.dx_values.back() == Approx(10.0));
    const auto pm = d.p0_values(9929.0, 60.0);
    CHECK(pm.back() == Approx(0.3 * 9929.0).epsilon(1e-12));
}
