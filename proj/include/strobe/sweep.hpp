#pragma once

// Parameter sweeps and derived searches built on top of single runs:
//  - run_sweep: evaluate a list of axis values, optionally across worker
//    threads, with per-row error capture and an order that never depends on
//    scheduling;
//  - find_threshold: bisect an axis for the value where the final-period
//    squeezing reading crosses sqrt(2), with a certificate re-check;
//  - optimize_pulse: coarse grid plus golden-section refinement over gate
//    threshold and phase.

#include <atomic>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "strobe/config.hpp"
#include "strobe/constants.hpp"
#include "strobe/dynamics.hpp"
#include "strobe/errors.hpp"
#include "strobe/metrics.hpp"

namespace strobe {

enum class SweepAxis { temperature, gamma, kappa_sq_avg, threshold, eta };

inline const char* axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::temperature: return "temperature";
    case SweepAxis::gamma: return "gamma";
    case SweepAxis::kappa_sq_avg: return "kappa_sq_avg";
    case SweepAxis::threshold: return "threshold";
    case SweepAxis::eta: return "eta";
  }
  return "?";
}

inline SweepAxis axis_from_string(const std::string& s) {
  if (s == "temperature") return SweepAxis::temperature;
  if (s == "gamma") return SweepAxis::gamma;
  if (s == "kappa_sq_avg") return SweepAxis::kappa_sq_avg;
  if (s == "threshold") return SweepAxis::threshold;
  if (s == "eta") return SweepAxis::eta;
  throw ConfigError("unknown sweep axis '" + s +
                    "' (expected temperature, gamma, kappa_sq_avg, threshold, eta)");
}

inline RunConfig apply_axis(RunConfig base, SweepAxis axis, double v) {
  switch (axis) {
    case SweepAxis::temperature: base.phys.temperature = v; break;
    case SweepAxis::gamma: base.phys.gamma = v; break;
    case SweepAxis::kappa_sq_avg:
      base.has_kappa_override = true;
      base.kappa_sq_avg_override = v;
      break;
    case SweepAxis::threshold: base.threshold = v; break;
    case SweepAxis::eta: base.phys.eta = v; break;
  }
  return base;
}

struct SweepRow {
  double value = 0.0;
  bool ok = false;
  std::string error;  // empty when ok
  double final_period_min = 0.0;
  std::optional<double> first_squeezing_t;
  double global_min = 0.0;
  double det_end = 0.0;
  std::string config_echo;  // resolved configuration used for this row
};

struct SweepResult {
  SweepAxis axis = SweepAxis::temperature;
  std::vector<SweepRow> rows;
};

namespace detail {

inline SweepRow sweep_one(const RunConfig& base, SweepAxis axis, double v) {
  SweepRow row;
  row.value = v;
  try {
    const ResolvedRun rr = resolve(apply_axis(base, axis, v));
    row.config_echo = echo_config(rr);
    const Trajectory traj = run(rr);
    row.final_period_min = final_period_min(traj, rr.config.phys.omega);
    row.first_squeezing_t = first_squeezing_time(traj);
    row.global_min = envelope(traj, rr.config.phys.omega).global_min;
    row.det_end = uncertainty_det(traj.samples.back().state);
    row.ok = true;
  } catch (const std::exception& e) {
    row.ok = false;
    row.error = e.what();
  }
  return row;
}

}  // namespace detail

// Rows come back in input order regardless of worker count: each row is a
// pure function of (base, axis, value) written into a preallocated slot.
inline SweepResult run_sweep(const RunConfig& base, SweepAxis axis,
                             const std::vector<double>& values,
                             int workers = 1) {
  if (values.empty()) throw ConfigError("sweep: values list must be non-empty");
  for (double v : values)
    if (!std::isfinite(v)) throw ConfigError("sweep: values must be finite");
  if (workers < 1) throw ConfigError("sweep: workers must be >= 1");

  SweepResult result;
  result.axis = axis;
  result.rows.resize(values.size());

  const std::size_t n = values.size();
  const std::size_t nworkers =
      std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  if (nworkers <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      result.rows[i] = detail::sweep_one(base, axis, values[i]);
    return result;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(nworkers);
  for (std::size_t w = 0; w < nworkers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        result.rows[i] = detail::sweep_one(base, axis, values[i]);
      }
    });
  }
  for (auto& th : pool) th.join();
  return result;
}

struct ThresholdSearchResult {
  double value = 0.0;           // estimated crossing point on the axis
  double bracket_lo = 0.0;      // final bisection bracket
  double bracket_hi = 0.0;
  double cert_lo = 0.0;         // certificate points re-simulated at the end
  double cert_hi = 0.0;
  double metric_cert_lo = 0.0;  // final-period reading at the certificate points
  double metric_cert_hi = 0.0;
};

namespace detail {

inline double final_reading(const RunConfig& base, SweepAxis axis, double v) {
  const ResolvedRun rr = resolve(apply_axis(base, axis, v));
  return final_period_min(run(rr), rr.config.phys.omega);
}

}  // namespace detail

// Bisect for the axis value where the run stops (or starts) being squeezed.
// Requires the two endpoints to disagree; refines to 1e-3 relative on the
// axis value and then certifies the answer by direct simulation on both sides
// of the returned value.
inline ThresholdSearchResult find_threshold(const RunConfig& base,
                                            SweepAxis axis, double lo,
                                            double hi) {
  if (!(lo < hi))
    throw ConfigError("threshold search: requires lo < hi");
  const double lo0 = lo, hi0 = hi;
  const bool squeezed_lo = detail::final_reading(base, axis, lo) < SQRT2;
  const bool squeezed_hi = detail::final_reading(base, axis, hi) < SQRT2;
  if (squeezed_lo == squeezed_hi)
    throw ConfigError(
        "threshold search: runs at both endpoints are on the same side of "
        "the squeezing boundary; no crossing to bracket");

  bool side_lo = squeezed_lo;
  int iter = 0;
  while (hi - lo > 1e-3 * std::max(std::fabs(hi), 1e-300) && iter < 200) {
    const double mid = 0.5 * (lo + hi);
    const bool squeezed_mid = detail::final_reading(base, axis, mid) < SQRT2;
    if (squeezed_mid == side_lo)
      lo = mid;
    else
      hi = mid;
    ++iter;
  }

  ThresholdSearchResult r;
  r.value = 0.5 * (lo + hi);
  r.bracket_lo = lo;
  r.bracket_hi = hi;

  // Certificate: a direct run on each side of the estimate must reproduce the
  // two regimes, otherwise the reading is not monotone across the bracket.
  double clo = std::max(lo0, r.value - 0.1 * std::fabs(r.value));
  double chi = std::min(hi0, r.value + 0.1 * std::fabs(r.value));
  if (!(clo < r.value) || !(r.value < chi)) {
    clo = lo;
    chi = hi;
  }
  r.cert_lo = clo;
  r.cert_hi = chi;
  r.metric_cert_lo = detail::final_reading(base, axis, clo);
  r.metric_cert_hi = detail::final_reading(base, axis, chi);
  const bool cert_lo_squeezed = r.metric_cert_lo < SQRT2;
  const bool cert_hi_squeezed = r.metric_cert_hi < SQRT2;
  if (cert_lo_squeezed == cert_hi_squeezed)
    throw ConfigError(
        "threshold search: certificate failed, the squeezing reading is not "
        "monotone around the estimated crossing");
  return r;
}

struct OptimizeResult {
  double threshold = 0.0;
  double phase = 0.0;
  double objective = 0.0;  // final-period squeezing reading (lower is better)
  std::size_t evaluations = 0;
};

namespace detail {

// Golden-section minimization that reports every probe through `eval`.
template <typename F>
inline double golden_min(double a, double b, F&& eval) {
  if (!(a < b)) return a;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  const double tol = 1e-3 * (b - a);
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  for (int i = 0; i < 80 && (b - a) > tol; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = eval(d);
    }
  }
  return fc < fd ? c : d;
}

}  // namespace detail

// Coarse grid over (threshold, phase) followed by golden-section refinement
// along each coordinate. Deterministic given the grids; returns the best
// point ever evaluated, which is never worse than the best grid point.
inline OptimizeResult optimize_pulse(const RunConfig& base,
                                     const std::vector<double>& thresholds,
                                     const std::vector<double>& phases) {
  if (thresholds.empty() || phases.empty())
    throw ConfigError("pulse optimization: threshold and phase grids must be non-empty");
  for (double c : thresholds)
    if (!(c > 0.0 && c < 1.0))
      throw ConfigError("pulse optimization: thresholds must lie in (0,1)");
  for (double p : phases)
    if (!std::isfinite(p))
      throw ConfigError("pulse optimization: phases must be finite");

  OptimizeResult best;
  best.objective = 1e300;
  std::size_t evals = 0;
  auto probe = [&](double c, double p) {
    RunConfig cfg = base;
    cfg.threshold = c;
    cfg.phase = p;
    const ResolvedRun rr = resolve(cfg);
    const double obj = final_period_min(run(rr), rr.config.phys.omega);
    ++evals;
    if (obj < best.objective) {
      best.objective = obj;
      best.threshold = c;
      best.phase = p;
    }
    return obj;
  };

  std::size_t best_i = 0, best_j = 0;
  double grid_best = 1e300;
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    for (std::size_t j = 0; j < phases.size(); ++j) {
      const double obj = probe(thresholds[i], phases[j]);
      if (obj < grid_best) {
        grid_best = obj;
        best_i = i;
        best_j = j;
      }
    }
  }

  // Refine the threshold around its best grid neighbor interval, then the
  // phase around its own, holding the other coordinate at its current best.
  if (thresholds.size() > 1) {
    const double lo = thresholds[best_i > 0 ? best_i - 1 : 0];
    const double hi = thresholds[std::min(best_i + 1, thresholds.size() - 1)];
    if (lo < hi)
      detail::golden_min(lo, hi,
                         [&](double c) { return probe(c, best.phase); });
  }
  if (phases.size() > 1) {
    const double lo = phases[best_j > 0 ? best_j - 1 : 0];
    const double hi = phases[std::min(best_j + 1, phases.size() - 1)];
    if (lo < hi)
      detail::golden_min(lo, hi,
                         [&](double p) { return probe(best.threshold, p); });
  }
  best.evaluations = evals;
  return best;
}

}  // namespace strobe
