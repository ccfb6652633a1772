#pragma once

#include <Eigen/Dense>
#include <complex>

namespace pkick {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

/// CODATA defaults; overridable for replication studies with rounded constants.
struct PhysicalConstants {
  double hbar = 1.054571817e-34;      // J s
  double k_boltzmann = 1.380649e-23;  // J / K
};

/// Discretized bosonic environment: an equally spaced frequency grid
/// symmetric around the system frequency, with a flat coupling spectrum.
struct BathSpec {
  double omega0 = 0.0;        // system frequency, rad/s
  double delta = 0.0;         // grid spacing, rad/s
  double gamma = 0.0;         // energy damping rate, rad/s
  double omega_cutoff = 0.0;  // highest bath frequency, rad/s
  int k_min = 0;
  int k_max = 0;
  VectorXd mode_frequencies;  // omega0 + k*delta, strictly increasing
  VectorXd couplings;         // gamma_k, rad/s

  int mode_count() const { return static_cast<int>(mode_frequencies.size()); }
};

/// Flat-spectrum bath: gamma_k = sqrt(gamma*delta/2pi) on a symmetric grid.
/// n_modes must be odd so the grid is centered on omega0; parameter sets that
/// would place a mode at negative frequency are rejected.
BathSpec build_bath(double omega0, double gamma, int n_modes, double delta);

/// Bose-Einstein occupation N(omega) = 1/(exp(hbar*omega/kB*T) - 1).
/// Rejects omega <= 0 (divergent); clamping is the caller's responsibility.
double bose_occupation(double omega, double temperature,
                       const PhysicalConstants& constants = {});

/// How to treat the omega = 0 grid mode, where the Bose occupation diverges:
/// clamp its frequency to delta for occupation purposes, or give it zero
/// occupation. The mode stays in the unitary dynamics either way.
enum class ZeroModePolicy { Clamp, Drop };

struct OccupationVector {
  double temperature = 0.0;  // K
  VectorXd occupations;      // N_k per bath mode, same order as the bath grid
};

OccupationVector build_occupations(const BathSpec& bath, double temperature,
                                   ZeroModePolicy policy = ZeroModePolicy::Clamp,
                                   const PhysicalConstants& constants = {});

/// Decoupling cycle timing. The kick shifts the oscillation frequency by
/// frequency_shift for kick_duration at the end of each cycle; the parity
/// condition frequency_shift * kick_duration = pi holds by construction.
struct KickSchedule {
  double cycle_time = 0.0;       // T_c, s
  double kick_duration = 0.0;    // tau, s
  double frequency_shift = 0.0;  // delta_omega, rad/s
  int n_cycles = 0;
};

KickSchedule make_schedule(double cycle_time, double kick_fraction, int n_cycles);

/// Superposition of two coherent states with opposite phase,
/// N_phi * (|alpha0> + e^{i phi} |-alpha0>).
struct CatStateSpec {
  Complex alpha0{0.0, 0.0};
  double phi = 0.0;

  double normalization() const;  // N_phi
};

}  // namespace pkick
