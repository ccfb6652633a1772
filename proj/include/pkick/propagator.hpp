#pragma once

#include <vector>

#include "pkick/model.hpp"

namespace pkick {

/// Arrowhead generator of the coherent-amplitude dynamics in the frame
/// rotating at omega0: entry (0,0) is the kick shift (0 for a free segment),
/// bath diagonals are the detunings omega_k - omega0, and the border carries
/// the couplings. Real symmetric by construction, so Hermitian.
struct GeneratorMatrix {
  MatrixXd entries;  // rad/s; index 0 = system mode, 1..n = bath modes
  double frequency_shift = 0.0;

  int dimension() const { return static_cast<int>(entries.rows()); }
};

GeneratorMatrix build_generator(const BathSpec& bath, double frequency_shift);

/// Unitary matrix of coherent-amplitude transfer coefficients.
struct TransferMatrix {
  MatrixXcd entries;  // dimensionless
  double elapsed = 0.0;

  int dimension() const { return static_cast<int>(entries.rows()); }
};

/// First row C_0j(t) of a transfer matrix; sufficient statistic for all
/// system observables.
struct AmplitudeRow {
  VectorXcd entries;
  double elapsed = 0.0;
};

/// Exact propagation via the cached eigendecomposition of a (real symmetric)
/// generator: U(t) = V exp(-i diag(lambda) t) V^T.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const GeneratorMatrix& gen);

  TransferMatrix evolve(double duration) const;
  VectorXcd system_row(double t) const;    // C_0j(t), O(dim^2)
  Complex system_amplitude(double t) const;  // C_00(t), O(dim)

  const VectorXd& eigenvalues() const { return values_; }
  int dimension() const { return static_cast<int>(values_.size()); }

 private:
  VectorXcd phases(double t) const;

  VectorXd values_;
  MatrixXd vectors_;
};

/// One-shot exp(-i*gen*t); throws if the result fails the unitarity check.
TransferMatrix segment_unitary(const GeneratorMatrix& gen, double duration);

/// Free-then-kick is the default: the kick closes the cycle.
enum class CycleOrder { FreeThenKick, KickThenFree };

TransferMatrix cycle_matrix(const BathSpec& bath, const KickSchedule& schedule,
                            CycleOrder order = CycleOrder::FreeThenKick);
TransferMatrix cycle_matrix(const SpectralPropagator& free_prop,
                            const SpectralPropagator& kick_prop,
                            const KickSchedule& schedule,
                            CycleOrder order = CycleOrder::FreeThenKick);

/// Rows e0^T * cycle^n for n = 0..n_cycles, propagated row-by-row
/// (O(n_cycles * dim^2); no explicit matrix powers).
std::vector<AmplitudeRow> stroboscopic_rows(const TransferMatrix& cycle, int n_cycles);

/// C_0j(t) for the uncontrolled evolution at arbitrary times.
std::vector<AmplitudeRow> free_evolution_rows(const BathSpec& bath,
                                              const std::vector<double>& times);

/// max |(U U^dag - I)_ij|
double unitarity_defect(const TransferMatrix& u);

/// pi/delta: beyond this the finite bath recurs instead of dissipating.
double validity_horizon(const BathSpec& bath);

inline constexpr double kUnitarityTolerance = 1e-10;

}  // namespace pkick
