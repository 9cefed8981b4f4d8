#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "strobe/constants.hpp"
#include "strobe/errors.hpp"

// Time-dependent measurement strength kappa^2(t) implementing the
// stroboscopic probing protocol, plus closed-form pulse-edge enumeration so
// the integrator can align its steps with the discontinuities.

namespace strobe {

enum class PulseMode { off, continuous, stroboscopic };

// Gating law: in stroboscopic mode the probe is on while
// |cos(omega*t - phase)| > threshold, i.e. two rectangular pulses per
// mechanical period centered on omega*t = phase (mod pi), starting after an
// initial warmup delay.
struct PulseSchedule {
  PulseMode mode = PulseMode::stroboscopic;
  double threshold = 0.9;      // gating threshold c in (0,1)
  double phase = 0.0;          // gating phase offset, rad
  double kappa_sq_peak = 0.0;  // kappa^2 while a pulse is on, 1/s
  double warmup = 0.0;         // delay before the first pulse, s
};

inline void validate(const PulseSchedule& s) {
  if (!(s.threshold > 0.0 && s.threshold < 1.0))
    throw ConfigError("pulse.threshold must be in (0,1)");
  if (!(s.kappa_sq_peak >= 0.0)) throw ConfigError("pulse kappa_sq_peak must be >= 0");
  if (!(s.warmup >= 0.0)) throw ConfigError("pulse warmup must be >= 0");
  if (!std::isfinite(s.phase)) throw ConfigError("pulse.phase must be finite");
}

// Instantaneous measurement strength. Total function: 0 before warmup and
// outside pulses, kappa_sq_peak inside (strict threshold comparison).
inline double kappa_sq_at(const PulseSchedule& s, double omega, double t) {
  if (s.mode == PulseMode::off) return 0.0;
  if (t < s.warmup) return 0.0;
  if (s.mode == PulseMode::continuous) return s.kappa_sq_peak;
  return std::fabs(std::cos(omega * t - s.phase)) > s.threshold ? s.kappa_sq_peak : 0.0;
}

// Fraction of each period with kappa^2 > 0. Two pulses per period, each of
// half-width acos(threshold) in gate phase.
inline double duty_cycle(const PulseSchedule& s) {
  if (s.mode == PulseMode::off) return 0.0;
  if (s.mode == PulseMode::continuous) return 1.0;
  return 2.0 * std::acos(s.threshold) / PI;
}

// All times in (t0,t1) where kappa^2(t) switches between 0 and
// kappa_sq_peak, strictly increasing. Edges are computed in closed form:
// |cos(omega*t - phase)| = threshold at omega*t = k*pi + phase +- acos(threshold).
// The warmup instant is itself an edge when it falls inside an on-window.
inline std::vector<double> pulse_edges(const PulseSchedule& s, double omega,
                                       double t0, double t1) {
  if (!(t0 < t1)) throw ConfigError("pulse_edges: require t0 < t1");
  std::vector<double> edges;
  if (s.mode == PulseMode::off || s.kappa_sq_peak == 0.0) return edges;
  if (s.mode == PulseMode::continuous) {
    if (t0 < s.warmup && s.warmup < t1) edges.push_back(s.warmup);
    return edges;
  }
  const double alpha = std::acos(s.threshold);
  const double lo = std::max(t0, s.warmup);
  const long k0 = static_cast<long>(std::floor((omega * lo - s.phase) / PI)) - 1;
  const long k1 = static_cast<long>(std::ceil((omega * t1 - s.phase) / PI)) + 1;
  for (long k = k0; k <= k1; ++k) {
    for (double sign : {-1.0, 1.0}) {
      const double t = (static_cast<double>(k) * PI + s.phase + sign * alpha) / omega;
      if (t > lo && t < t1) edges.push_back(t);
    }
  }
  if (t0 < s.warmup && s.warmup < t1 &&
      std::fabs(std::cos(omega * s.warmup - s.phase)) > s.threshold) {
    edges.push_back(s.warmup);
  }
  std::sort(edges.begin(), edges.end());
  // Collapse coincidences (e.g. warmup landing exactly on a gate edge).
  const double tiny = 1e-15;
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [tiny](double a, double b) { return b - a < tiny; }),
              edges.end());
  return edges;
}

}  // namespace strobe
