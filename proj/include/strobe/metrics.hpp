#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "strobe/constants.hpp"
#include "strobe/dynamics.hpp"
#include "strobe/errors.hpp"

// Squeezing diagnostics: the 2*sigma quantities plotted against time, the
// sqrt(2) squeezing criterion, the uncertainty product, per-period envelopes
// for long runs, and the Duan two-mode entanglement witness.

namespace strobe {

// Snapshot diagnostics of one covariance state. A quadrature is squeezed
// when its doubled standard deviation drops strictly below sqrt(2), the
// ground-state value.
struct SqueezingReport {
  double two_sigma_x = 0.0;   // 2 sigma(X_m) = sqrt(2 a11)
  double two_sigma_p = 0.0;   // 2 sigma(P_m) = sqrt(2 a22)
  double min_two_sigma = 0.0;
  double det = 0.0;           // a11 a22 - a12 a21 >= 1 for physical states
  bool squeezed = false;
};

inline SqueezingReport report(const CovarianceState& s) {
  SqueezingReport r;
  r.two_sigma_x = std::sqrt(2.0 * s.a11);
  r.two_sigma_p = std::sqrt(2.0 * s.a22);
  r.min_two_sigma = std::min(r.two_sigma_x, r.two_sigma_p);
  r.det = uncertainty_det(s);
  r.squeezed = r.min_two_sigma < SQRT2;
  return r;
}

// Per-period extrema of the two plotted quantities; long runs display these
// as a filled band once the oscillations blur together.
struct PeriodExtrema {
  std::size_t period_index = 0;
  double min_x = 0.0, max_x = 0.0;
  double min_p = 0.0, max_p = 0.0;
};

struct Envelope {
  std::vector<PeriodExtrema> periods;
  double global_min = 0.0;    // min over both quadratures and all samples
  double global_min_t = 0.0;
};

// Partition the samples into consecutive whole mechanical periods from t=0
// and record extrema per period. A trailing partial period folds into the
// last whole one so every sample is covered.
inline Envelope envelope(const Trajectory& traj, double omega) {
  const double period = 2.0 * PI / omega;
  if (traj.samples.empty() || traj.samples.back().state.t < period)
    throw ConfigError("envelope: trajectory must span at least one mechanical period");
  if (traj.grid_dt > period / 50.0)
    throw ConfigError("envelope: grid_dt must be <= period/50 to resolve the oscillation");

  const double t_last = traj.samples.back().state.t;
  const std::size_t n_buckets =
      static_cast<std::size_t>(std::floor(t_last / period + 1e-9));
  Envelope env;
  env.periods.resize(n_buckets);
  for (std::size_t i = 0; i < n_buckets; ++i) {
    env.periods[i].period_index = i;
    env.periods[i].min_x = env.periods[i].min_p = 1e300;
    env.periods[i].max_x = env.periods[i].max_p = -1e300;
  }
  env.global_min = 1e300;
  for (const auto& s : traj.samples) {
    const SqueezingReport r = report(s.state);
    std::size_t idx =
        static_cast<std::size_t>(std::floor(s.state.t / period + 1e-9));
    if (idx >= n_buckets) idx = n_buckets - 1;
    PeriodExtrema& pe = env.periods[idx];
    pe.min_x = std::min(pe.min_x, r.two_sigma_x);
    pe.max_x = std::max(pe.max_x, r.two_sigma_x);
    pe.min_p = std::min(pe.min_p, r.two_sigma_p);
    pe.max_p = std::max(pe.max_p, r.two_sigma_p);
    if (r.min_two_sigma < env.global_min) {
      env.global_min = r.min_two_sigma;
      env.global_min_t = s.state.t;
    }
  }
  return env;
}

/// The single number quoted per run: the instantaneous 2*sigma oscillates, so
// the stable reading is the minimum over the final whole mechanical period.
inline double final_period_min(const Trajectory& traj, double omega) {
  const double period = 2.0 * PI / omega;
  if (traj.samples.empty() || traj.samples.back().state.t < period)
    throw ConfigError("final_period_min: trajectory must span at least one period");
  const double t_from = traj.samples.back().state.t - period * (1.0 + 1e-9);
  double best = 1e300;
  for (const auto& s : traj.samples) {
    if (s.state.t < t_from) continue;
    best = std::min(best, report(s.state).min_two_sigma);
  }
  return best;
}

// First sample time at which either quadrature is squeezed, if any.
inline std::optional<double> first_squeezing_time(const Trajectory& traj) {
  for (const auto& s : traj.samples) {
    if (report(s.state).squeezed) return s.state.t;
  }
  return std::nullopt;
}

// Duan criterion: the collective state is entangled when
// Var(X_plus) + Var(P_minus) < 1 (strictly).
struct DuanWitness {
  double sum = 0.0;
  bool entangled = false;
};

inline DuanWitness duan_sum(double var_x_plus, double var_p_minus) {
  if (!(var_x_plus >= 0.0) || !(var_p_minus >= 0.0))
    throw std::invalid_argument("duan_sum: variances must be >= 0");
  const double sum = var_x_plus + var_p_minus;
  return DuanWitness{sum, sum < 1.0};
}

}  // namespace strobe
