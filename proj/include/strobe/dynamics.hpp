#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "strobe/errors.hpp"
#include "strobe/params.hpp"
#include "strobe/schedule.hpp"

// Integration of the four coupled covariance equations of motion under a
// pulse schedule, plus analytic closed forms for the two special regimes
// (free evolution and measurement-only) used as test oracles.

namespace strobe {

// Covariance parameters at one instant: a11 = 2 Var(X_m), a22 = 2 Var(P_m),
// a12 = a21 = 2 Cov(X_m, P_m) for symmetric initial data.
struct CovarianceState {
  double t = 0.0;
  double a11 = 1.0;
  double a12 = 0.0;
  double a21 = 0.0;
  double a22 = 1.0;
};

inline CovarianceState thermal_state(double capN) {
  return CovarianceState{0.0, capN, 0.0, 0.0, capN};
}

inline double uncertainty_det(const CovarianceState& s) {
  return s.a11 * s.a22 - s.a12 * s.a21;
}

struct TrajectorySample {
  CovarianceState state;
  double kappa_sq = 0.0;  // measurement strength at the sample time
};

struct Trajectory {
  std::vector<TrajectorySample> samples;  // strictly increasing t, first at t=0
  double grid_dt = 0.0;
  int steps_per_period = 0;
  PhysicalParams phys;
  DerivedParams derived;
  PulseSchedule schedule;
  bool uncertainty_warning = false;   // det dropped below 1 - 1e-3
  double uncertainty_warning_t = 0.0; // first sample time where it did
};

// Time derivatives of (a11, a12, a21, a22): measurement conditioning of the
// position variance, back-action on the momentum variance, harmonic rotation
// mixing the components, and relaxation toward the thermal value N.
inline std::array<double, 4> rhs(const CovarianceState& s, double kappa_sq,
                                 double omega, double gamma, double eta,
                                 double capN) {
  const double a11 = s.a11, a12 = s.a12, a21 = s.a21, a22 = s.a22;
  return {
      -eta * kappa_sq * a11 * a11 + omega * (a21 + a12) - gamma * (a11 - capN),
      -eta * kappa_sq * a11 * a12 - omega * (a11 - a22) - gamma * a12,
      -eta * kappa_sq * a11 * a21 - omega * (a11 - a22) - gamma * a21,
      kappa_sq - eta * kappa_sq * a12 * a21 - omega * (a21 + a12) - gamma * (a22 - capN),
  };
}

namespace detail {

inline std::array<double, 4> rhs4(const std::array<double, 4>& a, double ksq,
                                  double omega, double gamma, double eta,
                                  double capN) {
  const double a11 = a[0], a12 = a[1], a21 = a[2], a22 = a[3];
  return {
      -eta * ksq * a11 * a11 + omega * (a21 + a12) - gamma * (a11 - capN),
      -eta * ksq * a11 * a12 - omega * (a11 - a22) - gamma * a12,
      -eta * ksq * a11 * a21 - omega * (a11 - a22) - gamma * a21,
      ksq - eta * ksq * a12 * a21 - omega * (a21 + a12) - gamma * (a22 - capN),
  };
}

// One fixed step of the 6-stage fifth-order Cash-Karp Runge-Kutta scheme.
// Fifth order is needed to hold the free-rotation phase error below 1e-8
// over hundreds of periods at the default step of 1/1000 period; the scheme
// stays fully deterministic (no adaptive control).
inline std::array<double, 4> ck5_step(const std::array<double, 4>& y, double h,
                                      double ksq, double omega, double gamma,
                                      double eta, double capN) {
  constexpr double B21 = 1.0 / 5.0;
  constexpr double B31 = 3.0 / 40.0, B32 = 9.0 / 40.0;
  constexpr double B41 = 3.0 / 10.0, B42 = -9.0 / 10.0, B43 = 6.0 / 5.0;
  constexpr double B51 = -11.0 / 54.0, B52 = 5.0 / 2.0, B53 = -70.0 / 27.0,
                   B54 = 35.0 / 27.0;
  constexpr double B61 = 1631.0 / 55296.0, B62 = 175.0 / 512.0,
                   B63 = 575.0 / 13824.0, B64 = 44275.0 / 110592.0,
                   B65 = 253.0 / 4096.0;
  constexpr double C1 = 37.0 / 378.0, C3 = 250.0 / 621.0, C4 = 125.0 / 594.0,
                   C6 = 512.0 / 1771.0;

  std::array<double, 4> w{};
  const auto k1 = rhs4(y, ksq, omega, gamma, eta, capN);
  for (int i = 0; i < 4; ++i) w[i] = y[i] + h * (B21 * k1[i]);
  const auto k2 = rhs4(w, ksq, omega, gamma, eta, capN);
  for (int i = 0; i < 4; ++i) w[i] = y[i] + h * (B31 * k1[i] + B32 * k2[i]);
  const auto k3 = rhs4(w, ksq, omega, gamma, eta, capN);
  for (int i = 0; i < 4; ++i)
    w[i] = y[i] + h * (B41 * k1[i] + B42 * k2[i] + B43 * k3[i]);
  const auto k4 = rhs4(w, ksq, omega, gamma, eta, capN);
  for (int i = 0; i < 4; ++i)
    w[i] = y[i] + h * (B51 * k1[i] + B52 * k2[i] + B53 * k3[i] + B54 * k4[i]);
  const auto k5 = rhs4(w, ksq, omega, gamma, eta, capN);
  for (int i = 0; i < 4; ++i)
    w[i] = y[i] + h * (B61 * k1[i] + B62 * k2[i] + B63 * k3[i] + B64 * k4[i] +
                       B65 * k5[i]);
  const auto k6 = rhs4(w, ksq, omega, gamma, eta, capN);
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i)
    out[i] = y[i] + h * (C1 * k1[i] + C3 * k3[i] + C4 * k4[i] + C6 * k6[i]);
  return out;
}

inline void check_finite(const std::array<double, 4>& a, double t) {
  if (!std::isfinite(a[0] + a[1] + a[2] + a[3]) || a[0] > 1e12 || a[3] > 1e12) {
    throw DivergenceError("covariance diverged at t = " + std::to_string(t) +
                          " s (a11 = " + std::to_string(a[0]) +
                          ", a22 = " + std::to_string(a[3]) + ")");
  }
}

struct Event {
  double t;
  bool sample;
};

}  // namespace detail

// Fixed-step integration of the covariance equations over [0, duration].
// Breakpoints are the union of pulse edges and the uniform output grid; every
// stretch between consecutive breakpoints is covered with base steps of
// period/steps_per_period, the last step shortened to land exactly on the
// breakpoint, so no step ever straddles a discontinuity of kappa^2(t) and
// every grid sample is an integration endpoint (no interpolation).
inline Trajectory integrate(const CovarianceState& initial,
                            const PulseSchedule& schedule,
                            const PhysicalParams& phys,
                            const DerivedParams& derived, double duration,
                            double grid_dt, int steps_per_period) {
  // omega = 0 is allowed here (rotation-free regime used by the
  // measurement-only oracle); the base step then degenerates to one step per
  // breakpoint interval, so the output grid controls the resolution.
  if (!(phys.omega >= 0.0) || !std::isfinite(phys.omega))
    throw ConfigError("resonator.omega_rad_s must be >= 0 and finite");
  if (!(phys.gamma >= 0.0)) throw ConfigError("bath.gamma_rad_s must be >= 0");
  if (!(phys.eta >= 0.0 && phys.eta <= 1.0))
    throw ConfigError("measurement.eta must be in [0,1]");
  validate(schedule);
  if (!(duration > 0.0)) throw ConfigError("run.duration_s must be > 0");
  if (!(grid_dt > 0.0)) throw ConfigError("run.grid_dt_s must be > 0");
  if (steps_per_period < 100)
    throw ConfigError("run.steps_per_period must be >= 100");

  const double period = 2.0 * PI / phys.omega;  // +inf when omega == 0
  const double h = period / static_cast<double>(steps_per_period);

  // Assemble the breakpoint stream: grid times (samples) plus pulse edges.
  std::vector<detail::Event> events;
  const long n_grid = static_cast<long>(std::floor(duration / grid_dt + 1e-9));
  events.reserve(static_cast<std::size_t>(n_grid) + 64);
  for (long i = 1; i <= n_grid; ++i)
    events.push_back({static_cast<double>(i) * grid_dt, true});
  if (events.empty() || duration - events.back().t > 1e-9 * grid_dt)
    events.push_back({duration, true});
  const double t_end = events.back().t;
  for (double e : pulse_edges(schedule, phys.omega, 0.0, t_end))
    events.push_back({e, false});
  std::sort(events.begin(), events.end(),
            [](const detail::Event& a, const detail::Event& b) { return a.t < b.t; });
  // Merge events that coincide up to rounding; a merged event keeps the
  // sample flag so grid output is never lost.
  std::vector<detail::Event> merged;
  merged.reserve(events.size());
  for (const auto& e : events) {
    if (!merged.empty() && e.t - merged.back().t < 1e-15) {
      merged.back().sample = merged.back().sample || e.sample;
    } else {
      merged.push_back(e);
    }
  }

  Trajectory traj;
  traj.grid_dt = grid_dt;
  traj.steps_per_period = steps_per_period;
  traj.phys = phys;
  traj.derived = derived;
  traj.schedule = schedule;

  std::array<double, 4> y{initial.a11, initial.a12, initial.a21, initial.a22};
  detail::check_finite(y, 0.0);
  auto emit = [&traj, &schedule, &phys](double t, const std::array<double, 4>& a) {
    TrajectorySample s;
    s.state = CovarianceState{t, a[0], a[1], a[2], a[3]};
    s.kappa_sq = kappa_sq_at(schedule, phys.omega, t);
    if (!traj.uncertainty_warning && uncertainty_det(s.state) < 1.0 - 1e-3) {
      traj.uncertainty_warning = true;
      traj.uncertainty_warning_t = t;
    }
    traj.samples.push_back(s);
  };
  emit(0.0, y);

  double t_prev = 0.0;
  for (const auto& ev : merged) {
    const double dt = ev.t - t_prev;
    // kappa^2 is constant between breakpoints; sample it at the midpoint to
    // stay clear of the boundary values.
    const double ksq = kappa_sq_at(schedule, phys.omega, t_prev + 0.5 * dt);
    const long n_full = static_cast<long>(std::floor(dt / h + 1e-12));
    for (long i = 0; i < n_full; ++i) {
      y = detail::ck5_step(y, h, ksq, phys.omega, phys.gamma, phys.eta, derived.capN);
      detail::check_finite(y, t_prev + static_cast<double>(i + 1) * h);
    }
    const double rem = (n_full > 0) ? dt - static_cast<double>(n_full) * h : dt;
    if (rem > 1e-9 * std::min(h, dt)) {
      y = detail::ck5_step(y, rem, ksq, phys.omega, phys.gamma, phys.eta, derived.capN);
      detail::check_finite(y, ev.t);
    }
    t_prev = ev.t;
    if (ev.sample) emit(ev.t, y);
  }
  return traj;
}

// Exact solution of the kappa = 0 flow: the trace relaxes toward 2N while the
// difference and covariance components spiral down at twice the mechanical
// frequency. Requires symmetric covariances (a12 = a21).
inline CovarianceState free_evolution_closed_form(const CovarianceState& s0,
                                                  double omega, double gamma,
                                                  double capN, double t) {
  if (std::fabs(s0.a12 - s0.a21) > 1e-12 * std::max(1.0, std::fabs(s0.a12)))
    throw std::invalid_argument("free_evolution_closed_form: requires a12 == a21");
  const double u0 = s0.a11 + s0.a22;
  const double v0 = s0.a11 - s0.a22;
  const double w0 = s0.a12 + s0.a21;
  const double decay = std::exp(-gamma * t);
  const double c2 = std::cos(2.0 * omega * t);
  const double s2 = std::sin(2.0 * omega * t);
  const double u = 2.0 * capN + (u0 - 2.0 * capN) * decay;
  const double v = decay * (v0 * c2 + w0 * s2);
  const double w = decay * (-v0 * s2 + w0 * c2);
  return CovarianceState{s0.t + t, 0.5 * (u + v), 0.5 * w, 0.5 * w, 0.5 * (u - v)};
}

// Exact solution of the omega = gamma = 0 flow under constant kappa^2: pure
// conditioning of a11 (hyperbolic decay) and back-action growth of a22.
inline CovarianceState measurement_only_closed_form(const CovarianceState& s0,
                                                    double eta, double kappa_sq,
                                                    double tau) {
  if (std::fabs(s0.a12 - s0.a21) > 1e-12 * std::max(1.0, std::fabs(s0.a12)))
    throw std::invalid_argument("measurement_only_closed_form: requires a12 == a21");
  const double c = eta * kappa_sq * s0.a11;
  const double den = 1.0 + c * tau;
  const double a11 = s0.a11 / den;
  const double a12 = s0.a12 / den;
  const double a22 =
      s0.a22 + kappa_sq * tau - eta * kappa_sq * s0.a12 * s0.a12 * tau / den;
  return CovarianceState{s0.t + tau, a11, a12, a12, a22};
}

}  // namespace strobe
