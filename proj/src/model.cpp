#include "pkick/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pkick {

BathSpec build_bath(double omega0, double gamma, int n_modes, double delta) {
  if (omega0 <= 0.0) throw std::invalid_argument("build_bath: omega0 must be positive");
  if (gamma <= 0.0) throw std::invalid_argument("build_bath: gamma must be positive");
  if (n_modes < 3 || n_modes % 2 == 0)
    throw std::invalid_argument("build_bath: n_modes must be odd and >= 3");
  if (delta <= 0.0) throw std::invalid_argument("build_bath: delta must be positive");

  const int half = (n_modes - 1) / 2;
  if (omega0 - half * delta < 0.0)
    throw std::invalid_argument("build_bath: lowest mode frequency would be negative");

  BathSpec bath;
  bath.omega0 = omega0;
  bath.delta = delta;
  bath.gamma = gamma;
  bath.k_min = -half;
  bath.k_max = half;
  bath.omega_cutoff = omega0 + half * delta;
  bath.mode_frequencies.resize(n_modes);
  for (int i = 0; i < n_modes; ++i)
    bath.mode_frequencies[i] = omega0 + (bath.k_min + i) * delta;
  bath.couplings =
      VectorXd::Constant(n_modes, std::sqrt(gamma * delta / (2.0 * std::numbers::pi)));
  return bath;
}

double bose_occupation(double omega, double temperature, const PhysicalConstants& constants) {
  if (omega <= 0.0)
    throw std::invalid_argument("bose_occupation: omega must be positive");
  if (temperature < 0.0)
    throw std::invalid_argument("bose_occupation: temperature must be nonnegative");
  if (temperature == 0.0) return 0.0;
  return 1.0 / std::expm1(constants.hbar * omega / (constants.k_boltzmann * temperature));
}

OccupationVector build_occupations(const BathSpec& bath, double temperature,
                                   ZeroModePolicy policy, const PhysicalConstants& constants) {
  if (temperature < 0.0)
    throw std::invalid_argument("build_occupations: temperature must be nonnegative");

  OccupationVector occ;
  occ.temperature = temperature;
  occ.occupations = VectorXd::Zero(bath.mode_count());
  if (temperature == 0.0) return occ;

  for (int i = 0; i < bath.mode_count(); ++i) {
    double omega = bath.mode_frequencies[i];
    if (omega < bath.delta) {
      // the Bose occupation diverges toward omega = 0
      if (policy == ZeroModePolicy::Drop) continue;
      omega = bath.delta;
    }
    occ.occupations[i] = bose_occupation(omega, temperature, constants);
  }
  return occ;
}

KickSchedule make_schedule(double cycle_time, double kick_fraction, int n_cycles) {
  if (cycle_time <= 0.0)
    throw std::invalid_argument("make_schedule: cycle_time must be positive");
  if (kick_fraction <= 0.0 || kick_fraction >= 1.0)
    throw std::invalid_argument("make_schedule: kick_fraction must lie in (0,1)");
  if (n_cycles < 0)
    throw std::invalid_argument("make_schedule: n_cycles must be nonnegative");

  KickSchedule schedule;
  schedule.cycle_time = cycle_time;
  schedule.kick_duration = kick_fraction * cycle_time;
  schedule.frequency_shift = std::numbers::pi / schedule.kick_duration;
  schedule.n_cycles = n_cycles;
  return schedule;
}

double CatStateSpec::normalization() const {
  const double denom = 2.0 + 2.0 * std::exp(-2.0 * std::norm(alpha0)) * std::cos(phi);
  if (denom <= 0.0)
    throw std::domain_error("CatStateSpec: normalization denominator is not positive");
  return 1.0 / std::sqrt(denom);
}

}  // namespace pkick
