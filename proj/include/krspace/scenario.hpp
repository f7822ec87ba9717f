#pragma once

#include <stdexcept>
#include <string>

#include "field.hpp"
#include "heterodyne.hpp"
#include "io.hpp"

namespace krspace {

// Scenario presets.
//   gaussian: TEM00 beam at its waist, sigma = 0.85 mm, R = inf.
//   wire:     the same beam obscured by a 1 mm wire (field zero for
//             |x| <= 0.5 mm), a superposition of two displaced beams.
//   custom:   everything from the config.

inline RunConfig apply_scenario_presets(RunConfig c) {
    if (c.scenario == "gaussian") {
        c.obstruction_half_width = 0.0;
    } else if (c.scenario == "wire") {
        if (c.obstruction_half_width <= 0.0) c.obstruction_half_width = 0.5;
    } else if (c.scenario != "custom") {
        throw Error("unknown scenario '" + c.scenario + "'");
    }
    return c;
}

/// Builds the signal field a config describes (normalized; the wire field is
/// renormalized after the slit so downstream transforms see a unit field).
inline SampledField make_scenario_field(const RunConfig& cfg) {
    const RunConfig c = apply_scenario_presets(cfg);
    const Grid1D grid(c.grid_n, c.extent_or_auto(), c.unit_mode);
    SampledField f = make_gaussian(grid, c.sigma, c.curvature_radius, c.center,
                                   c.wavenumber());
    if (c.obstruction_half_width > 0.0)
        f = normalized(apply_obstruction(std::move(f), c.obstruction_half_width));
    return f;
}

inline ScanConfig make_scan_config(const RunConfig& c) {
    return ScanConfig::from_actuators(c.scan_dx_max_resolved(), c.scan_dp_max_resolved(),
                                      c.scan_nx, c.scan_np);
}

} // namespace krspace
