#pragma once

// Umbrella header: conditional covariance dynamics of a stroboscopically
// probed mechanical resonator, with squeezing metrics, two-mode entanglement,
// parameter sweeps, and text/plot output.

#include "strobe/config.hpp"
#include "strobe/constants.hpp"
#include "strobe/csv.hpp"
#include "strobe/dynamics.hpp"
#include "strobe/errors.hpp"
#include "strobe/format.hpp"
#include "strobe/metrics.hpp"
#include "strobe/params.hpp"
#include "strobe/schedule.hpp"
#include "strobe/svg.hpp"
#include "strobe/sweep.hpp"
#include "strobe/twomode.hpp"
