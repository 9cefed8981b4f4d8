#include <cmath>
#include <vector>

#include "doctest.h"
#include "strobe/schedule.hpp"

using namespace strobe;

namespace {

const double OMEGA = 2.0 * PI * 1e6;
const double T = 2.0 * PI / OMEGA;

PulseSchedule strobo(double threshold, double peak, double warmup = 0.0,
                     double phase = 0.0) {
  PulseSchedule s;
  s.mode = PulseMode::stroboscopic;
  s.threshold = threshold;
  s.phase = phase;
  s.kappa_sq_peak = peak;
  s.warmup = warmup;
  return s;
}

}  // namespace

TEST_CASE("gate value at characteristic instants") {
  const PulseSchedule s = strobo(0.9, 7.0);
  CHECK(kappa_sq_at(s, OMEGA, 0.0) == 7.0);           // pulse center
  CHECK(kappa_sq_at(s, OMEGA, 0.25 * T) == 0.0);      // quadrature node
  CHECK(kappa_sq_at(s, OMEGA, 0.5 * T) == 7.0);       // second pulse per period

  const PulseSchedule w = strobo(0.9, 7.0, 2.5 * T);
  CHECK(kappa_sq_at(w, OMEGA, 1.0 * T) == 0.0);       // still warming up
  CHECK(kappa_sq_at(w, OMEGA, 2.5 * T) == 7.0);       // warmup boundary is inclusive
}

TEST_CASE("off and continuous modes") {
  PulseSchedule s = strobo(0.9, 7.0);
  s.mode = PulseMode::off;
  CHECK(kappa_sq_at(s, OMEGA, 0.0) == 0.0);
  CHECK(duty_cycle(s) == 0.0);
  CHECK(pulse_edges(s, OMEGA, 0.0, 10 * T).empty());

  s.mode = PulseMode::continuous;
  CHECK(kappa_sq_at(s, OMEGA, 0.37 * T) == 7.0);
  CHECK(duty_cycle(s) == 1.0);
  CHECK(pulse_edges(s, OMEGA, 0.0, 10 * T).empty());  // no warmup, no switching

  s.warmup = 3e-7;
  const auto e = pulse_edges(s, OMEGA, 0.0, 10 * T);
  REQUIRE(e.size() == 1);
  CHECK(e[0] == 3e-7);
  CHECK(kappa_sq_at(s, OMEGA, 2e-7) == 0.0);
  CHECK(kappa_sq_at(s, OMEGA, 4e-7) == 7.0);
}

TEST_CASE("duty cycle: frozen reference values and limits") {
  CHECK(std::fabs(duty_cycle(strobo(0.9, 1.0)) - 0.2871325862574125) < 1e-12);
  CHECK(std::fabs(duty_cycle(strobo(std::sqrt(0.9), 1.0)) - 0.20483276469913353) < 1e-12);
  CHECK(duty_cycle(strobo(1.0 - 1e-9, 1.0)) < 1e-4);       // narrow-pulse limit
  CHECK(duty_cycle(strobo(1e-6, 1.0)) > 1.0 - 1e-5);       // almost-always-on limit
}

TEST_CASE("duty cycle equals the measure of the on-set") {
  for (double c : {0.9, std::sqrt(0.9), 0.5, 0.99}) {
    const PulseSchedule s = strobo(c, 1.0);
    const auto edges = pulse_edges(s, OMEGA, 0.0, T);
    // Walk the edges accumulating the on-time within one period.
    bool on = kappa_sq_at(s, OMEGA, 1e-12) > 0.0;
    double prev = 0.0, measure = 0.0;
    for (double e : edges) {
      if (on) measure += e - prev;
      on = !on;
      prev = e;
    }
    if (on) measure += T - prev;
    CHECK(std::fabs(measure - duty_cycle(s) * T) < 1e-12 * T);

    // Independent sampled estimate agrees coarsely.
    int hits = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
      if (kappa_sq_at(s, OMEGA, (i + 0.5) * T / n) > 0.0) ++hits;
    }
    CHECK(std::fabs(static_cast<double>(hits) / n - duty_cycle(s)) < 5e-3);
  }
}

TEST_CASE("pulse edges over one period: four switchings, strictly increasing") {
  const PulseSchedule s = strobo(0.9, 1.0);
  const auto edges = pulse_edges(s, OMEGA, 0.0, T);
  REQUIRE(edges.size() == 4);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    CHECK(edges[i] > 0.0);
    CHECK(edges[i] < T);
    if (i > 0) CHECK(edges[i] > edges[i - 1]);
  }
  // The gate actually switches across every edge.
  const double eps = 1e-11;
  for (double e : edges) {
    CHECK(kappa_sq_at(s, OMEGA, e - eps) != kappa_sq_at(s, OMEGA, e + eps));
  }
  // Constant between consecutive edges.
  std::vector<double> walls{0.0};
  walls.insert(walls.end(), edges.begin(), edges.end());
  walls.push_back(T);
  for (std::size_t i = 0; i + 1 < walls.size(); ++i) {
    const double mid = 0.5 * (walls[i] + walls[i + 1]);
    const double q1 = 0.75 * walls[i] + 0.25 * walls[i + 1];
    const double q3 = 0.25 * walls[i] + 0.75 * walls[i + 1];
    CHECK(kappa_sq_at(s, OMEGA, mid) == kappa_sq_at(s, OMEGA, q1));
    CHECK(kappa_sq_at(s, OMEGA, mid) == kappa_sq_at(s, OMEGA, q3));
  }
}

TEST_CASE("gate is half-period periodic after warmup") {
  const PulseSchedule s = strobo(0.9, 1.0);
  for (int i = 0; i < 997; ++i) {
    const double t = i * T / 997.0;
    // Skip points so close to an edge that the float phase is ambiguous.
    if (std::fabs(std::fabs(std::cos(OMEGA * t)) - s.threshold) < 1e-9) continue;
    CHECK(kappa_sq_at(s, OMEGA, t) == kappa_sq_at(s, OMEGA, t + 0.5 * T));
  }
}

TEST_CASE("warmup instant is an edge exactly when it lands inside a pulse") {
  // phase 0: |cos(omega * 2.5 T)| = |cos(5 pi)| = 1 > c, so warmup switches
  // the gate on and must be reported.
  const PulseSchedule s1 = strobo(0.9, 1.0, 2.5 * T);
  const auto e1 = pulse_edges(s1, OMEGA, 0.0, 5.0 * T);
  REQUIRE(!e1.empty());
  bool has_warmup = false;
  for (double e : e1) has_warmup = has_warmup || std::fabs(e - 2.5 * T) < 1e-18;
  CHECK(has_warmup);
  for (double e : e1) CHECK(e >= 2.5 * T);  // nothing switches before warmup

  // phase pi/2: |cos(5 pi - pi/2)| = 0 < c, warmup falls between pulses and
  // is not a switching time.
  const PulseSchedule s2 = strobo(0.9, 1.0, 2.5 * T, 0.5 * PI);
  for (double e : pulse_edges(s2, OMEGA, 0.0, 5.0 * T)) {
    CHECK(std::fabs(e - 2.5 * T) > 1e-9 * T);
  }
}

TEST_CASE("edge enumeration respects the requested window") {
  const PulseSchedule s = strobo(0.9, 1.0);
  const auto edges = pulse_edges(s, OMEGA, 3.2 * T, 7.8 * T);
  for (double e : edges) {
    CHECK(e > 3.2 * T);
    CHECK(e < 7.8 * T);
  }
  CHECK_THROWS_AS(pulse_edges(s, OMEGA, 1.0, 1.0), ConfigError);
}

TEST_CASE("schedule validation") {
  CHECK_THROWS_AS(validate(strobo(0.0, 1.0)), ConfigError);
  CHECK_THROWS_AS(validate(strobo(1.0, 1.0)), ConfigError);
  CHECK_THROWS_AS(validate(strobo(1.5, 1.0)), ConfigError);
  CHECK_THROWS_AS(validate(strobo(0.9, -1.0)), ConfigError);
  CHECK_THROWS_AS(validate(strobo(0.9, 1.0, -1e-9)), ConfigError);
  PulseSchedule nan_phase = strobo(0.9, 1.0);
  nan_phase.phase = std::nan("");
  CHECK_THROWS_AS(validate(nan_phase), ConfigError);
  CHECK_NOTHROW(validate(strobo(0.9, 0.0)));
  CHECK_NOTHROW(validate(strobo(std::sqrt(0.9), 24674.0, 2.5 * T)));
}
