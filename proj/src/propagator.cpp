#include "pkick/propagator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pkick {

GeneratorMatrix build_generator(const BathSpec& bath, double frequency_shift) {
  const int n = bath.mode_count();
  GeneratorMatrix gen;
  gen.frequency_shift = frequency_shift;
  gen.entries = MatrixXd::Zero(n + 1, n + 1);
  gen.entries(0, 0) = frequency_shift;
  for (int k = 0; k < n; ++k) {
    gen.entries(k + 1, k + 1) = bath.mode_frequencies[k] - bath.omega0;
    gen.entries(0, k + 1) = bath.couplings[k];
    gen.entries(k + 1, 0) = bath.couplings[k];
  }
  return gen;
}

SpectralPropagator::SpectralPropagator(const GeneratorMatrix& gen) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(gen.entries);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("SpectralPropagator: eigendecomposition did not converge");
  values_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

VectorXcd SpectralPropagator::phases(double t) const {
  return (Complex(0.0, -t) * values_.cast<Complex>().array()).exp();
}

TransferMatrix SpectralPropagator::evolve(double duration) const {
  if (duration < 0.0)
    throw std::invalid_argument("SpectralPropagator::evolve: duration must be nonnegative");
  TransferMatrix u;
  u.elapsed = duration;
  const VectorXcd ph = phases(duration);
  u.entries = vectors_.cast<Complex>() * ph.asDiagonal() * vectors_.transpose().cast<Complex>();
  return u;
}

VectorXcd SpectralPropagator::system_row(double t) const {
  const VectorXcd weighted =
      phases(t).cwiseProduct(vectors_.row(0).transpose().cast<Complex>());
  return vectors_.cast<Complex>() * weighted;
}

Complex SpectralPropagator::system_amplitude(double t) const {
  return vectors_.row(0).cast<Complex>() * phases(t).cwiseProduct(
             vectors_.row(0).transpose().cast<Complex>());
}

TransferMatrix segment_unitary(const GeneratorMatrix& gen, double duration) {
  SpectralPropagator prop(gen);
  TransferMatrix u = prop.evolve(duration);
  if (const double defect = unitarity_defect(u); defect > kUnitarityTolerance)
    throw std::runtime_error("segment_unitary: unitarity defect " + std::to_string(defect));
  return u;
}

namespace {

void validate_schedule(const KickSchedule& schedule) {
  if (schedule.kick_duration <= 0.0 || schedule.kick_duration >= schedule.cycle_time)
    throw std::invalid_argument("cycle_matrix: kick duration must lie in (0, cycle_time)");
  const double parity = schedule.frequency_shift * schedule.kick_duration;
  if (std::abs(parity - std::numbers::pi) > 1e-12 * std::numbers::pi)
    throw std::invalid_argument("cycle_matrix: parity condition delta_omega*tau = pi violated");
}

}  // namespace

TransferMatrix cycle_matrix(const SpectralPropagator& free_prop,
                            const SpectralPropagator& kick_prop,
                            const KickSchedule& schedule, CycleOrder order) {
  validate_schedule(schedule);
  const TransferMatrix free_u = free_prop.evolve(schedule.cycle_time - schedule.kick_duration);
  const TransferMatrix kick_u = kick_prop.evolve(schedule.kick_duration);

  TransferMatrix cycle;
  cycle.elapsed = schedule.cycle_time;
  cycle.entries = (order == CycleOrder::FreeThenKick)
                      ? MatrixXcd(kick_u.entries * free_u.entries)
                      : MatrixXcd(free_u.entries * kick_u.entries);
  if (const double defect = unitarity_defect(cycle); defect > kUnitarityTolerance)
    throw std::runtime_error("cycle_matrix: unitarity defect " + std::to_string(defect));
  return cycle;
}

TransferMatrix cycle_matrix(const BathSpec& bath, const KickSchedule& schedule,
                            CycleOrder order) {
  const SpectralPropagator free_prop(build_generator(bath, 0.0));
  const SpectralPropagator kick_prop(build_generator(bath, schedule.frequency_shift));
  return cycle_matrix(free_prop, kick_prop, schedule, order);
}

std::vector<AmplitudeRow> stroboscopic_rows(const TransferMatrix& cycle, int n_cycles) {
  if (n_cycles < 0)
    throw std::invalid_argument("stroboscopic_rows: n_cycles must be nonnegative");
  const int dim = cycle.dimension();
  std::vector<AmplitudeRow> rows;
  rows.reserve(n_cycles + 1);

  Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(dim);
  row(0) = 1.0;
  rows.push_back({row.transpose(), 0.0});
  for (int n = 1; n <= n_cycles; ++n) {
    row = row * cycle.entries;
    rows.push_back({row.transpose(), n * cycle.elapsed});
  }
  return rows;
}

std::vector<AmplitudeRow> free_evolution_rows(const BathSpec& bath,
                                              const std::vector<double>& times) {
  const SpectralPropagator prop(build_generator(bath, 0.0));
  std::vector<AmplitudeRow> rows;
  rows.reserve(times.size());
  for (double t : times) {
    if (t < 0.0)
      throw std::invalid_argument("free_evolution_rows: times must be nonnegative");
    rows.push_back({prop.system_row(t), t});
  }
  return rows;
}

double unitarity_defect(const TransferMatrix& u) {
  const int dim = u.dimension();
  return (u.entries * u.entries.adjoint() - MatrixXcd::Identity(dim, dim))
      .cwiseAbs()
      .maxCoeff();
}

double validity_horizon(const BathSpec& bath) { return std::numbers::pi / bath.delta; }

}  // namespace pkick
