// End-to-end walk through the library: build the 0.85 mm beam, compute its
// conjugated KR distribution, recover the Wigner function two ways, fit the
// marginal widths, and run a small ideal heterodyne scan against the oracle.

#include <cstdio>

#include <krspace.hpp>

int main() {
    using namespace krspace;

    RunConfig cfg; // gaussian scenario, sigma = 0.85 mm, 512-point grid
    const SampledField beam = make_scenario_field(cfg);
    std::printf("beam: n=%zu extent=%.3f mm, |psi|^2 integrates to %.12f\n",
                beam.grid.n_points, beam.grid.extent, beam.norm_squared());

    const PhaseSpaceGrid kr = kr_conjugate(beam);
    const MarginalResult m = marginals(kr);
    const GaussianFitResult fx = fit_gaussian_width(m.position, kr.x_grid);
    const GaussianFitResult fp = fit_gaussian_width(m.momentum, kr.p_grid);
    std::printf("KR marginals: waist %.4f mm (position), %.4f mm (1/momentum width)\n",
                fx.width, 1.0 / fp.width);

    const PhaseSpaceGrid w1 = wigner_from_kr(kr);
    const PhaseSpaceGrid w2 = direct_wigner(beam);
    double linf = 0.0;
    for (std::size_t i = 0; i < w1.values.size(); ++i)
        linf = std::max(linf, std::abs(w1.values[i].real() - w2.values[i].real()));
    std::printf("Wigner via characteristic vs direct autocorrelation: Linf = %.3e\n", linf);

    LOConfig lo;
    lo.a = 0.0425;  // sigma/20
    lo.A = 17.0;    // 20 sigma
    const ScanConfig scan = ScanConfig::from_phase_space(
        3.4, 4.0 / 0.85, 21, 21, beam.effective_k(), lo.focal_length);
    const ScanResult run = ideal_scan(beam, lo, scan);
    const OracleComparison cmp = compare_scan_to_kr(beam, run.grid);
    std::printf("ideal heterodyne scan: correlation with K* oracle = %.6f\n",
                cmp.correlation);
    return 0;
}
