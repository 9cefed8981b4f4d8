#pragma once

#include <cmath>
#include <string>

#include "strobe/constants.hpp"
#include "strobe/errors.hpp"

// Physical configuration of the probed resonator and the quantities derived
// from it (zero-point scales, thermal occupation, measurement strength).

namespace strobe {

// User-facing physical constants of the experiment. All rates are stored in
// angular units (rad/s); values quoted in Hz elsewhere enter as 2*pi*X.
struct PhysicalParams {
  double omega = 2.0 * PI * 1e6;    // mechanical angular frequency, rad/s
  double mass = 1.1e-11;            // effective mass, kg
  double gamma = 2.0 * PI * 10.0;   // bath coupling rate, rad/s
  double eta = 1.0;                 // measurement efficiency, in [0,1]
  double temperature = 0.0;         // bath temperature, K
  double beta = 0.65e-6;            // phase shift per unit dimensionless displacement, rad
  double photon_flux = 2.92e15;     // probe photon flux, 1/s
};

inline void validate(const PhysicalParams& p) {
  if (!(p.omega > 0.0)) throw ConfigError("resonator.omega_rad_s must be > 0");
  if (!(p.mass > 0.0)) throw ConfigError("resonator.mass_kg must be > 0");
  if (!(p.gamma >= 0.0)) throw ConfigError("bath.gamma_rad_s must be >= 0");
  if (!(p.eta >= 0.0 && p.eta <= 1.0)) throw ConfigError("measurement.eta must be in [0,1]");
  if (!(p.temperature >= 0.0)) throw ConfigError("bath.temperature_K must be >= 0");
  if (!(p.beta >= 0.0)) throw ConfigError("measurement.beta_rad must be >= 0");
  if (!(p.photon_flux >= 0.0)) throw ConfigError("measurement.photon_flux must be >= 0");
}

// Bose-Einstein occupation of the bath mode; exactly 0 at T = 0.
inline double thermal_occupation(double temperature, double omega) {
  if (!(temperature >= 0.0)) throw ConfigError("thermal_occupation: temperature must be >= 0");
  if (!(omega > 0.0)) throw ConfigError("thermal_occupation: omega must be > 0");
  if (temperature == 0.0) return 0.0;
  // expm1 keeps precision in the high-temperature limit hbar*omega << kB*T.
  return 1.0 / std::expm1(HBAR * omega / (KB * temperature));
}

// Quantities computed from PhysicalParams.
struct DerivedParams {
  double x0 = 0.0;            // zero-point length sqrt(hbar/(m*omega)), m
  double p0 = 0.0;            // zero-point momentum sqrt(hbar*m*omega), kg*m/s
  double nbar = 0.0;          // thermal occupation, dimensionless
  double capN = 1.0;          // thermal variance parameter N = 2*nbar + 1
  double kappa_sq_avg = 0.0;  // orbit-averaged measurement strength, 1/s
};

inline DerivedParams derive(const PhysicalParams& p) {
  validate(p);
  DerivedParams d;
  d.x0 = std::sqrt(HBAR / (p.mass * p.omega));
  d.p0 = std::sqrt(HBAR * p.mass * p.omega);
  d.nbar = thermal_occupation(p.temperature, p.omega);
  d.capN = 2.0 * d.nbar + 1.0;
  d.kappa_sq_avg = 2.0 * p.beta * p.beta * p.photon_flux;
  return d;
}

}  // namespace strobe
