#pragma once

// Umbrella header for the krspace library: 1-D complex wave fields, their
// Kirkwood-Rihaczek / Wigner / P / Q phase-space distributions, and the
// two-local-oscillator balanced heterodyne measurement simulation.

#include "krspace/grid.hpp"
#include "krspace/dft.hpp"
#include "krspace/field.hpp"
#include "krspace/phasespace.hpp"
#include "krspace/fit.hpp"
#include "krspace/dsp.hpp"
#include "krspace/heterodyne.hpp"
#include "krspace/io.hpp"
#include "krspace/scenario.hpp"
