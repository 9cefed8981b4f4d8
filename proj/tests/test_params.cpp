#include <cmath>

#include "doctest.h"
#include "strobe/params.hpp"

using namespace strobe;

namespace {
double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }
}  // namespace

TEST_CASE("zero-point amplitudes satisfy x0 * p0 = hbar") {
  for (double mass : {1e-12, 1.1e-11, 5e-10}) {
    for (double omega : {2.0 * PI * 1e5, 2.0 * PI * 1e6, 2.0 * PI * 3e7}) {
      PhysicalParams p;
      p.mass = mass;
      p.omega = omega;
      const DerivedParams d = derive(p);
      CHECK(rel(d.x0 * d.p0, HBAR) < 1e-12);
    }
  }
}

TEST_CASE("zero-point amplitude of the reference resonator") {
  PhysicalParams p;  // defaults: 1 MHz, 1.1e-11 kg
  const DerivedParams d = derive(p);
  // Independently computed sqrt(hbar / (m omega)).
  CHECK(rel(d.x0, 1.2352412996545607e-15) < 1e-10);
  CHECK(rel(d.p0, 8.537374983292046e-20) < 1e-10);
}

TEST_CASE("thermal occupation: frozen reference values") {
  const double omega = 2.0 * PI * 1e6;
  CHECK(thermal_occupation(0.0, omega) == 0.0);
  // 50 uK sits near the crossover where the occupation is of order one.
  const double n50 = thermal_occupation(50e-6, omega);
  CHECK(rel(n50, 0.6206164582293086) < 1e-10);
  CHECK(n50 > 0.5);
  CHECK(n50 < 1.5);
  CHECK(rel(thermal_occupation(0.7e-3, omega), 14.091346332322347) < 1e-10);
  CHECK(rel(thermal_occupation(10e-3, omega), 207.86659129771473) < 1e-10);
}

TEST_CASE("thermal occupation: monotone in temperature and continuous at zero") {
  const double omega = 2.0 * PI * 1e6;
  double prev = -1.0;
  for (double T : {1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1}) {
    const double n = thermal_occupation(T, omega);
    CHECK(n > prev);
    prev = n;
  }
  // High-temperature tail approaches kT / (hbar omega).
  const double n = thermal_occupation(1.0, omega);
  const double classical = KB * 1.0 / (HBAR * omega);
  CHECK(rel(n, classical - 0.5) < 1e-4);
  // Just above zero the occupation is exponentially small, not a jump.
  CHECK(thermal_occupation(1e-7, omega) < 1e-100);
}

TEST_CASE("thermal occupation rejects invalid arguments") {
  CHECK_THROWS_AS(thermal_occupation(-1e-3, 2.0 * PI * 1e6), ConfigError);
  CHECK_THROWS_AS(thermal_occupation(1e-3, 0.0), ConfigError);
  CHECK_THROWS_AS(thermal_occupation(1e-3, -5.0), ConfigError);
}

TEST_CASE("derived N doubles the occupation plus vacuum") {
  PhysicalParams p;
  p.temperature = 10e-3;
  const DerivedParams d = derive(p);
  CHECK(rel(d.nbar, 207.86659129771473) < 1e-10);
  CHECK(rel(d.capN, 416.73318259542947) < 1e-10);
  CHECK(d.capN == 2.0 * d.nbar + 1.0);

  p.temperature = 0.0;
  CHECK(derive(p).capN == 1.0);
}

TEST_CASE("measurement strength formula") {
  PhysicalParams p;  // beta = 0.65e-6 rad, flux = 2.92e15 /s
  const DerivedParams d = derive(p);
  CHECK(rel(d.kappa_sq_avg, 2467.4) < 1e-12);
  // Doubling the phase shift per displacement quadruples the rate.
  p.beta *= 2.0;
  CHECK(rel(derive(p).kappa_sq_avg, 4.0 * 2467.4) < 1e-12);
}

TEST_CASE("derive is deterministic") {
  PhysicalParams p;
  p.temperature = 0.7e-3;
  const DerivedParams d1 = derive(p);
  const DerivedParams d2 = derive(p);
  CHECK(d1.x0 == d2.x0);
  CHECK(d1.p0 == d2.p0);
  CHECK(d1.nbar == d2.nbar);
  CHECK(d1.capN == d2.capN);
  CHECK(d1.kappa_sq_avg == d2.kappa_sq_avg);
}

TEST_CASE("validation rejects out-of-range physical parameters") {
  auto bad = [](auto&& mutate) {
    PhysicalParams p;
    mutate(p);
    CHECK_THROWS_AS(validate(p), ConfigError);
  };
  bad([](PhysicalParams& p) { p.omega = 0.0; });
  bad([](PhysicalParams& p) { p.omega = -1.0; });
  bad([](PhysicalParams& p) { p.mass = 0.0; });
  bad([](PhysicalParams& p) { p.gamma = -1.0; });
  bad([](PhysicalParams& p) { p.eta = -0.1; });
  bad([](PhysicalParams& p) { p.eta = 1.1; });
  bad([](PhysicalParams& p) { p.temperature = -1e-6; });
  bad([](PhysicalParams& p) { p.beta = -1e-9; });
  bad([](PhysicalParams& p) { p.photon_flux = -1.0; });

  PhysicalParams ok;
  CHECK_NOTHROW(validate(ok));
  ok.eta = 0.0;
  CHECK_NOTHROW(validate(ok));
  ok.eta = 1.0;
  CHECK_NOTHROW(validate(ok));
  ok.gamma = 0.0;
  CHECK_NOTHROW(validate(ok));
}
