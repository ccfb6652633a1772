#pragma once

#include <string>
#include <vector>

#include "pkick/model.hpp"
#include "pkick/propagator.hpp"

namespace pkick {

struct OracleReport {
  std::string name;
  std::string instance;
  double max_abs_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Classical RK4 for dU/dt = -i*gen*U from the identity. No unitarity
/// enforcement; drift is part of the diagnostic. Rejects steps coarser than
/// 2*pi/(50*max|diagonal|).
TransferMatrix rk4_propagate(const GeneratorMatrix& gen, double duration, double step);

/// L_0k(t) by trapezoidal quadrature of the resolvent convolution
///   -i*gamma_k * int_0^t ds exp(-i*(omega_k - omega0 - dw)*s) * L00'(t-s),
/// where L00' is the system amplitude in the frame that absorbs the kick
/// shift into the bath detunings; the common-frame phase is restored at the
/// end, so the result is directly comparable to segment_unitary entry (0,k).
Complex convolution_L0k(const BathSpec& bath, double frequency_shift, int mode_index,
                        double t, double quadrature_step);

/// Recurrence of the finite equally spaced bath near T_rev = 2*pi/delta.
/// The coupling perturbs the spacing, so the echo peaks after T_rev; the check
/// locates the peak in [T_rev, 1.5 T_rev] and requires it to stand far above
/// the continuum decay, with no comparable recurrence at T_rev/2.
OracleReport revival_check(const BathSpec& bath);

/// Cross-check suite on reduced instances; every report is independent of the
/// spectral propagation path it validates (beyond generator construction).
std::vector<OracleReport> run_validation_suite(const BathSpec& bath,
                                               const PhysicalConstants& constants = {});

}  // namespace pkick
