#pragma once

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fit.hpp"
#include "io.hpp"
#include "scenario.hpp"

// Scenario-driven command-line front end.  Subcommands compose through
// files: field -> kr -> transform -> marginals/plot, with compare as the
// numeric gate.  Exit codes: 0 ok, 2 configuration error, 3 numeric
// tolerance failure, 4 I/O error.

namespace krspace::cli {

struct ToleranceFailure : Error {
    using Error::Error;
};

inline std::filesystem::path resolve_out(const std::string& p) {
    std::filesystem::path path(p);
    if (const char* env = std::getenv("KRSPACE_OUTDIR"); env && *env && path.is_relative())
        path = std::filesystem::path(env) / path;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    return path;
}

inline bool is_csv(const std::filesystem::path& p) { return p.extension() == ".csv"; }

inline void write_grid_any(const PhaseSpaceGrid& g, const std::filesystem::path& p) {
    if (is_csv(p))
        save_grid_csv(g, p);
    else
        save_grid(g, p);
}

inline PhaseSpaceGrid read_grid_any(const std::filesystem::path& p) {
    return is_csv(p) ? load_grid_csv(p) : load_grid(p);
}

inline SampledField read_field_any(const std::filesystem::path& p) {
    return is_csv(p) ? load_field_csv(p) : load_field(p);
}

namespace cli_detail {

struct CommonFieldArgs {
    std::string config_path;
    std::string scenario;
    std::string field_path;
    // individual overrides; NaN/0 sentinels resolved against the config
    std::optional<double> sigma, extent, center, radius, obstruction;
    std::optional<std::size_t> n_points;
    std::optional<std::string> unit_mode;
};

inline void add_field_options(CLI::App* cmd, CommonFieldArgs& a, bool allow_field_file) {
    cmd->add_option("--config", a.config_path, "key = value configuration file");
    cmd->add_option("--scenario", a.scenario, "gaussian | wire | custom");
    if (allow_field_file)
        cmd->add_option("--field", a.field_path, "load the signal field from a file instead");
    cmd->add_option("--sigma", a.sigma, "beam waist override");
    cmd->add_option("--extent", a.extent, "grid extent override");
    cmd->add_option("--n", a.n_points, "grid point count override");
    cmd->add_option("--center", a.center, "beam center override");
    cmd->add_option("--radius", a.radius, "wavefront curvature radius override (inf = waist)");
    cmd->add_option("--obstruction", a.obstruction, "obstruction half-width override");
    cmd->add_option("--unit-mode", a.unit_mode, "millimeters | dimensionless");
}

inline RunConfig resolve_config(const CommonFieldArgs& a) {
    RunConfig c = a.config_path.empty() ? RunConfig{} : parse_config(a.config_path);
    if (!a.scenario.empty()) c.scenario = a.scenario;
    if (a.sigma) c.sigma = *a.sigma;
    if (a.extent) c.grid_extent = *a.extent;
    if (a.n_points) c.grid_n = *a.n_points;
    if (a.center) c.center = *a.center;
    if (a.radius) c.curvature_radius = *a.radius;
    if (a.obstruction) c.obstruction_half_width = *a.obstruction;
    if (a.unit_mode) {
        if (*a.unit_mode == "millimeters") c.unit_mode = UnitMode::millimeters;
        else if (*a.unit_mode == "dimensionless") c.unit_mode = UnitMode::dimensionless;
        else throw ConfigError("--unit-mode must be millimeters or dimensionless", 0);
    }
    return apply_scenario_presets(c);
}

inline SampledField resolve_field(const CommonFieldArgs& a, RunConfig& cfg_out) {
    cfg_out = resolve_config(a);
    if (!a.field_path.empty()) {
        SampledField f = read_field_any(a.field_path);
        cfg_out.scenario = "custom";
        cfg_out.grid_n = f.grid.n_points;
        cfg_out.grid_extent = f.grid.extent;
        cfg_out.unit_mode = f.grid.unit_mode;
        return normalized(std::move(f));
    }
    return make_scenario_field(cfg_out);
}

inline double default_sigma_ref(const PhaseSpaceGrid& krc) {
    const MarginalResult m = marginals(krc);
    return fit_gaussian_width(m.position, krc.x_grid).width;
}

inline std::string fmt(double v) { return io_detail::fmt_double(v); }

} // namespace cli_detail

// ---------------------------------------------------------------------------
// plot emission (gnuplot text artifacts; rendering is out of process)
// ---------------------------------------------------------------------------

inline void emit_plot(const PhaseSpaceGrid& g, const std::filesystem::path& prefix,
                      const std::string& component) {
    const std::filesystem::path dat = prefix.string() + ".dat";
    const std::filesystem::path gp = prefix.string() + ".gp";
    std::string out;
    out.reserve(g.values.size() * 32);
    for (std::size_t i = 0; i < g.n_x(); ++i) {
        for (std::size_t j = 0; j < g.n_p(); ++j) {
            const cplx& v = g.at(i, j);
            const double val = component == "im"    ? v.imag()
                               : component == "abs" ? std::abs(v)
                                                    : v.real();
            out += cli_detail::fmt(g.x_grid.coord(i)) + " " +
                   cli_detail::fmt(g.p_grid.coord(j)) + " " + cli_detail::fmt(val) + "\n";
        }
        out += "\n"; // pm3d block separator
    }
    io_detail::write_entire(dat, out);

    const bool mm = g.x_grid.unit_mode == UnitMode::millimeters;
    const std::string xlabel = mm ? "x [mm]" : "x";
    const std::string plabel = mm ? "p [rad/mm]" : "p";
    std::string script;
    script += "# gnuplot script: left 2-D map, right 3-D surface\n";
    script += "set terminal pngcairo size 1400,600\n";
    script += "set output '" + prefix.filename().string() + ".png'\n";
    script += "set multiplot layout 1,2 title '" + std::string(to_string(g.kind)) + " (" +
              component + ")'\n";
    script += "set xlabel '" + xlabel + "'\nset ylabel '" + plabel + "'\n";
    script += "set view map\nsplot '" + dat.filename().string() + "' using 1:2:3 with pm3d notitle\n";
    script += "set view 55,40\nsplot '" + dat.filename().string() + "' using 1:2:3 with pm3d notitle\n";
    script += "unset multiplot\n";
    io_detail::write_entire(gp, script);
}

// ---------------------------------------------------------------------------
// driver
// ---------------------------------------------------------------------------

inline int run(const std::vector<std::string>& args) {
    CLI::App app{"Kirkwood-Rihaczek phase-space toolkit"};
    app.require_subcommand(1);

    // ---- field ----
    auto* c_field = app.add_subcommand("field", "construct a signal field and save it");
    cli_detail::CommonFieldArgs fa;
    std::string field_out;
    cli_detail::add_field_options(c_field, fa, false);
    c_field->add_option("--out", field_out, "output path (.csv for text)")->required();

    // ---- kr ----
    auto* c_kr = app.add_subcommand("kr", "compute the conjugated KR distribution K*(x,p)");
    cli_detail::CommonFieldArgs ka;
    std::string kr_out;
    cli_detail::add_field_options(c_kr, ka, true);
    c_kr->add_option("--out", kr_out, "output grid path (.csv for text)")->required();

    // ---- transform ----
    auto* c_tr = app.add_subcommand("transform", "transform a KR grid via its characteristic function");
    std::string tr_in, tr_to, tr_out, tr_method = "chirp", tr_field;
    double tr_sigma_ref = 0.0, tr_eps_floor = 0.0;
    int tr_taper = -1;
    c_tr->add_option("--input", tr_in, "input grid (KRconj or KR)")->required();
    c_tr->add_option("--to", tr_to, "wigner | q | p | char | charw | kr | krconj")->required();
    c_tr->add_option("--out", tr_out, "output grid path")->required();
    c_tr->add_option("--method", tr_method, "wigner route: chirp (default) | direct (needs --field)");
    c_tr->add_option("--field", tr_field, "source field for --method direct");
    c_tr->add_option("--sigma-ref", tr_sigma_ref, "kernel scale for P/Q (default: fitted waist)");
    c_tr->add_option("--eps-floor", tr_eps_floor, "P regularizer floor (default 1e-6)");
    c_tr->add_option("--taper", tr_taper, "P regularizer taper width in samples (default 4)");

    // ---- marginals ----
    auto* c_mg = app.add_subcommand("marginals", "integrate a grid to position/momentum densities");
    std::string mg_in, mg_prefix;
    c_mg->add_option("--input", mg_in, "input grid (KRconj, KR or Wigner)")->required();
    c_mg->add_option("--out-prefix", mg_prefix, "writes <prefix>_x.csv and <prefix>_p.csv")->required();

    // ---- heterodyne ----
    auto* c_het = app.add_subcommand("heterodyne", "simulate the dual-LO balanced heterodyne scan");
    cli_detail::CommonFieldArgs ha;
    cli_detail::add_field_options(c_het, ha, true);
    std::string het_mode = "ideal", het_out;
    std::optional<double> het_a, het_A, het_alpha, het_f, het_bw, het_dx_max, het_dp_max, het_p0_max;
    std::optional<double> het_fs;
    std::optional<std::size_t> het_nx, het_np;
    std::optional<int> het_periods, het_warmup;
    std::optional<double> het_phase_i, het_phase_q;
    bool het_spurs = false;
    c_het->add_option("--mode", het_mode, "ideal | timedomain");
    c_het->add_option("--out", het_out, "output grid path")->required();
    c_het->add_option("--lo-a", het_a, "focused LO waist");
    c_het->add_option("--lo-A", het_A, "collimated LO waist");
    c_het->add_option("--alpha", het_alpha, "collimated LO relative amplitude");
    c_het->add_option("--focal-length", het_f, "imaging lens focal length");
    c_het->add_option("--bandwidth", het_bw, "analyzer bandwidth");
    c_het->add_option("--dx-max", het_dx_max, "mirror scan half-range");
    c_het->add_option("--dp-max", het_dp_max, "lens scan half-range");
    c_het->add_option("--p0-max", het_p0_max, "momentum half-range (overrides --dp-max)");
    c_het->add_option("--nx", het_nx, "scan points along x0");
    c_het->add_option("--np", het_np, "scan points along p0");
    c_het->add_option("--sample-rate", het_fs, "receiver sample rate");
    c_het->add_option("--demod-periods", het_periods, "lock-in window, difference periods");
    c_het->add_option("--warmup-periods", het_warmup, "discarded difference periods per side");
    c_het->add_option("--phase-i", het_phase_i, "lock-in in-phase reference [deg]");
    c_het->add_option("--phase-q", het_phase_q, "lock-in quadrature reference [deg]");
    c_het->add_flag("--with-spurs", het_spurs, "inject DC and intra-LO beats");

    // ---- fit ----
    auto* c_fit = app.add_subcommand("fit", "Gaussian 1/e-intensity width fit of sampled data");
    std::string fit_in;
    std::optional<double> fit_expect, fit_rel_tol;
    c_fit->add_option("--input", fit_in, "samples CSV (x,value)")->required();
    c_fit->add_option("--expect-width", fit_expect, "expected width; exit 3 if outside tolerance");
    c_fit->add_option("--rel-tol", fit_rel_tol, "relative tolerance for --expect-width (default 0.05)");

    // ---- compare ----
    auto* c_cmp = app.add_subcommand("compare", "L2 / Linf / correlation between two grids");
    std::string cmp_in, cmp_b, cmp_against, cmp_field;
    std::optional<double> cmp_max_linf, cmp_max_l2, cmp_min_corr;
    c_cmp->add_option("--input", cmp_in, "grid under test")->required();
    c_cmp->add_option("--b", cmp_b, "reference grid file");
    c_cmp->add_option("--against", cmp_against, "computed reference: kr | direct-wigner (needs --field)");
    c_cmp->add_option("--field", cmp_field, "field file for --against");
    c_cmp->add_option("--max-linf", cmp_max_linf, "fail (exit 3) above this absolute Linf");
    c_cmp->add_option("--max-l2", cmp_max_l2, "fail above this relative L2");
    c_cmp->add_option("--min-corr", cmp_min_corr, "fail below this normalized correlation");

    // ---- plot ----
    auto* c_plot = app.add_subcommand("plot", "emit gnuplot data and script (2-D map + 3-D surface)");
    std::string plot_in, plot_prefix, plot_comp = "re";
    c_plot->add_option("--input", plot_in, "input grid")->required();
    c_plot->add_option("--out-prefix", plot_prefix, "output prefix for .dat/.gp")->required();
    c_plot->add_option("--component", plot_comp, "re | im | abs");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*c_field) {
            RunConfig cfg;
            const SampledField f = cli_detail::resolve_field(fa, cfg);
            const auto out = resolve_out(field_out);
            if (is_csv(out)) save_field_csv(f, out); else save_field(f, out);
            write_manifest(cfg, out.string() + ".manifest",
                           {"command = field", "norm_squared = " + cli_detail::fmt(f.norm_squared())});
            std::cout << "field: " << out.string() << "  n=" << f.grid.n_points
                      << " extent=" << f.grid.extent << " " << to_string(f.grid.unit_mode)
                      << "\n";
        } else if (*c_kr) {
            RunConfig cfg;
            const SampledField f = cli_detail::resolve_field(ka, cfg);
            const PhaseSpaceGrid k = kr_conjugate(f);
            const auto out = resolve_out(kr_out);
            write_grid_any(k, out);
            write_manifest(cfg, out.string() + ".manifest",
                           {"command = kr", "peak_abs = " + cli_detail::fmt(k.peak_abs())});
            std::cout << "kr: " << out.string() << "  " << k.n_x() << "x" << k.n_p()
                      << " peak |K*| = " << k.peak_abs() << "\n";
        } else if (*c_tr) {
            PhaseSpaceGrid in = read_grid_any(tr_in);
            if (in.kind == GridKind::KR) in = kr_from_conjugate(std::move(in));
            const auto out = resolve_out(tr_out);
            RegSpec reg;
            if (tr_eps_floor > 0.0) reg.eps_floor = tr_eps_floor;
            if (tr_taper >= 0) reg.taper_samples = tr_taper;
            if (tr_to == "wigner") {
                if (tr_method == "direct") {
                    if (tr_field.empty())
                        throw ConfigError("transform --method direct needs --field", 0);
                    const SampledField f = normalized(read_field_any(tr_field));
                    write_grid_any(direct_wigner(f), out);
                } else {
                    require_kind(in, {GridKind::KRconj}, "transform --to wigner");
                    write_grid_any(wigner_from_kr(in), out);
                }
            } else if (tr_to == "char") {
                write_grid_any(characteristic_from_kr(in), out);
            } else if (tr_to == "charw") {
                write_grid_any(wigner_characteristic(characteristic_from_kr(in)), out);
            } else if (tr_to == "q" || tr_to == "p") {
                const double sref =
                    tr_sigma_ref > 0.0 ? tr_sigma_ref : cli_detail::default_sigma_ref(in);
                const PhaseSpaceGrid ch = characteristic_from_kr(in);
                if (tr_to == "q") {
                    write_grid_any(q_from_characteristic(ch, sref), out);
                    std::cout << "transform: sigma_ref = " << sref << "\n";
                } else {
                    const PResult pr = p_from_characteristic(ch, sref, reg);
                    write_grid_any(pr.grid, out);
                    std::cout << "transform: sigma_ref = " << sref
                              << "  removed_energy_fraction = " << pr.removed_energy_fraction
                              << (pr.ill_conditioned ? "  ILL-CONDITIONED" : "") << "\n";
                    if (pr.ill_conditioned)
                        std::cout << "warning: P-distribution is not well behaved for this "
                                     "field (regularizer removed most of the characteristic "
                                     "energy)\n";
                }
            } else if (tr_to == "kr" || tr_to == "krconj") {
                // elementwise conjugation toggles between K and K*
                const bool want_kr = tr_to == "kr";
                if ((want_kr && in.kind == GridKind::KRconj) ||
                    (!want_kr && in.kind == GridKind::KR))
                    in = kr_from_conjugate(std::move(in));
                write_grid_any(in, out);
            } else {
                throw ConfigError("transform --to: unknown target '" + tr_to + "'", 0);
            }
            std::cout << "transform: wrote " << out.string() << "\n";
        } else if (*c_mg) {
            const PhaseSpaceGrid g = read_grid_any(mg_in);
            const MarginalResult m = marginals(g);
            const auto px = resolve_out(mg_prefix + "_x.csv");
            const auto pp = resolve_out(mg_prefix + "_p.csv");
            save_samples_csv(m.position, g.x_grid, "position marginal", px);
            save_samples_csv(m.momentum, g.p_grid, "momentum marginal", pp);
            std::cout << "marginals: " << px.string() << ", " << pp.string()
                      << "  residual_imag = " << m.residual_imag << "\n";
        } else if (*c_het) {
            RunConfig cfg;
            const SampledField f = cli_detail::resolve_field(ha, cfg);
            if (het_a) cfg.lo.a = *het_a;
            if (het_A) cfg.lo.A = *het_A;
            if (het_alpha) cfg.lo.alpha = *het_alpha;
            if (het_f) cfg.lo.focal_length = *het_f;
            if (het_bw) cfg.lo.analyzer_bandwidth = *het_bw;
            if (het_dx_max) cfg.scan_dx_max = *het_dx_max;
            if (het_dp_max) cfg.scan_dp_max = *het_dp_max;
            if (het_p0_max)
                cfg.scan_dp_max = *het_p0_max * cfg.lo.focal_length / cfg.effective_k();
            if (het_nx) cfg.scan_nx = *het_nx;
            if (het_np) cfg.scan_np = *het_np;
            if (het_fs) cfg.dsp.sample_rate = *het_fs;
            if (het_periods) cfg.dsp.demod_periods = *het_periods;
            if (het_warmup) cfg.dsp.warmup_periods = *het_warmup;
            if (het_phase_i) cfg.dsp.phase_i_deg = *het_phase_i;
            if (het_phase_q) cfg.dsp.phase_q_deg = *het_phase_q;
            if (het_spurs) cfg.dsp.with_spurs = true;
            const ScanConfig scan = make_scan_config(cfg);
            const auto out = resolve_out(het_out);
            std::vector<std::string> notes{"command = heterodyne", "mode = " + het_mode};
            if (het_mode == "ideal") {
                const ScanResult r = ideal_scan(f, cfg.lo, scan);
                const OracleComparison cmp = compare_scan_to_kr(f, r.grid);
                write_grid_any(r.grid, out);
                notes.push_back("oracle_correlation = " + cli_detail::fmt(cmp.correlation));
                notes.push_back("oracle_rel_l2 = " + cli_detail::fmt(cmp.rel_l2));
                notes.push_back("oracle_gain = " + cli_detail::fmt(std::abs(cmp.gain)));
                std::cout << "heterodyne ideal: corr=" << cmp.correlation
                          << " rel_l2=" << cmp.rel_l2 << " -> " << out.string() << "\n";
            } else if (het_mode == "timedomain") {
                const TimeDomainResult r = timedomain_scan(f, cfg.lo, scan, cfg.dsp);
                const OracleComparison cmp = compare_scan_to_kr(f, r.grid);
                write_grid_any(r.grid, out);
                notes.push_back("gain_vs_ideal_abs = " + cli_detail::fmt(std::abs(r.gain_vs_ideal)));
                notes.push_back("rel_l2_vs_ideal = " + cli_detail::fmt(r.rel_l2_vs_ideal));
                notes.push_back("oracle_correlation = " + cli_detail::fmt(cmp.correlation));
                std::cout << "heterodyne timedomain: rel_l2_vs_ideal=" << r.rel_l2_vs_ideal
                          << " corr=" << cmp.correlation << " -> " << out.string() << "\n";
            } else {
                throw ConfigError("heterodyne --mode must be ideal or timedomain", 0);
            }
            write_manifest(cfg, out.string() + ".manifest", notes);
        } else if (*c_fit) {
            const SampleSet s = load_samples_csv(fit_in);
            const GaussianFitResult r = fit_gaussian_width(s.y, s.x);
            std::cout << "fit: amplitude=" << r.amplitude << " center=" << r.center
                      << " width=" << r.width << " residual_l2=" << r.residual_l2 << "\n";
            if (s.label.find("momentum") != std::string::npos && r.width > 0.0)
                std::cout << "fit: equivalent_waist=" << 1.0 / r.width << "\n";
            if (fit_expect) {
                const double tol = fit_rel_tol.value_or(0.05);
                if (std::abs(r.width - *fit_expect) > tol * *fit_expect)
                    throw ToleranceFailure("fitted width " + cli_detail::fmt(r.width) +
                                           " outside " + cli_detail::fmt(tol * 100) +
                                           "% of expected " + cli_detail::fmt(*fit_expect));
            }
        } else if (*c_cmp) {
            const PhaseSpaceGrid a = read_grid_any(cmp_in);
            PhaseSpaceGrid b;
            if (!cmp_b.empty()) {
                b = read_grid_any(cmp_b);
            } else if (cmp_against == "kr") {
                if (cmp_field.empty()) throw ConfigError("compare --against needs --field", 0);
                b = kr_conjugate_at(normalized(read_field_any(cmp_field)), a.x_grid, a.p_grid);
            } else if (cmp_against == "direct-wigner") {
                if (cmp_field.empty()) throw ConfigError("compare --against needs --field", 0);
                b = direct_wigner(normalized(read_field_any(cmp_field)));
            } else {
                throw ConfigError("compare: give --b or --against kr|direct-wigner", 0);
            }
            if (a.n_x() != b.n_x() || a.n_p() != b.n_p())
                throw ConfigError("compare: grid shapes differ", 0);
            double linf = 0.0, num = 0.0, den = 0.0;
            cplx dot{0.0, 0.0};
            double na = 0.0, nb = 0.0;
            for (std::size_t i = 0; i < a.values.size(); ++i) {
                linf = std::max(linf, std::abs(a.values[i] - b.values[i]));
                num += std::norm(a.values[i] - b.values[i]);
                den += std::norm(b.values[i]);
                dot += a.values[i] * std::conj(b.values[i]);
                na += std::norm(a.values[i]);
                nb += std::norm(b.values[i]);
            }
            const double l2 = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
            const double corr =
                (na > 0.0 && nb > 0.0) ? std::abs(dot) / std::sqrt(na * nb) : 0.0;
            std::cout << "compare: L2=" << l2 << " Linf=" << linf << " corr=" << corr << "\n";
            if (cmp_max_linf && linf > *cmp_max_linf)
                throw ToleranceFailure("Linf " + cli_detail::fmt(linf) + " exceeds " +
                                       cli_detail::fmt(*cmp_max_linf));
            if (cmp_max_l2 && l2 > *cmp_max_l2)
                throw ToleranceFailure("L2 " + cli_detail::fmt(l2) + " exceeds " +
                                       cli_detail::fmt(*cmp_max_l2));
            if (cmp_min_corr && corr < *cmp_min_corr)
                throw ToleranceFailure("correlation " + cli_detail::fmt(corr) + " below " +
                                       cli_detail::fmt(*cmp_min_corr));
        } else if (*c_plot) {
            const PhaseSpaceGrid g = read_grid_any(plot_in);
            if (plot_comp != "re" && plot_comp != "im" && plot_comp != "abs")
                throw ConfigError("plot --component must be re, im or abs", 0);
            const auto prefix = resolve_out(plot_prefix);
            emit_plot(g, prefix, plot_comp);
            std::cout << "plot: " << prefix.string() << ".dat, " << prefix.string()
                      << ".gp (render with gnuplot)\n";
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const ToleranceFailure& e) {
        std::cerr << "tolerance failure: " << e.what() << "\n";
        return 3;
    } catch (const FitError& e) {
        std::cerr << "fit error: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

inline int run_main(int argc, char** argv) {
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

} // namespace krspace::cli
