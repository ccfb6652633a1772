#include "pkick/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pkick {

double mean_vibrational_number(const AmplitudeRow& row, const OccupationVector& occ) {
  const int n_modes = static_cast<int>(occ.occupations.size());
  if (row.entries.size() != n_modes + 1)
    throw std::invalid_argument("mean_vibrational_number: row/occupation dimension mismatch");
  return row.entries.tail(n_modes).cwiseAbs2().dot(occ.occupations);
}

double fringe_visibility(Complex c00, double nu) {
  if (nu < 0.0) throw std::invalid_argument("fringe_visibility: nu must be nonnegative");
  const double abs2 = std::norm(c00);
  if (abs2 > 1.0 + 1e-10)
    throw std::invalid_argument("fringe_visibility: |c00| exceeds 1 beyond tolerance");
  const double eta = 1.0 - abs2 / (1.0 + 2.0 * nu);
  if (eta < -1e-9 || eta > 1.0 + 1e-9)
    throw std::runtime_error("fringe_visibility: value outside [0,1] beyond tolerance");
  return std::clamp(eta, 0.0, 1.0);
}

double markov_heating(double t, double gamma, double n_omega0) {
  if (t < 0.0) throw std::invalid_argument("markov_heating: t must be nonnegative");
  return n_omega0 * (-std::expm1(-gamma * t));
}

double markov_visibility(double t, double gamma, double n_omega0) {
  if (t < 0.0) throw std::invalid_argument("markov_visibility: t must be nonnegative");
  const double decay = std::exp(-gamma * t);
  return 1.0 - decay / (1.0 + 2.0 * n_omega0 * (1.0 - decay));
}

ThresholdPrediction predict_threshold(double temperature, const BathSpec& bath,
                                      const PhysicalConstants& constants) {
  ThresholdPrediction prediction;
  prediction.n_omega0 =
      temperature > 0.0 ? bose_occupation(bath.omega0, temperature, constants) : 0.0;
  const double cutoff_time = 2.0 * std::numbers::pi / bath.omega_cutoff;
  const double thermal_time = 1.0 / (bath.gamma * (1.0 + 2.0 * prediction.n_omega0));
  if (thermal_time < cutoff_time) {
    prediction.cycle_time = thermal_time;
    prediction.branch = ThresholdBranch::Thermal;
  } else {
    prediction.cycle_time = cutoff_time;
    prediction.branch = ThresholdBranch::Cutoff;
  }
  return prediction;
}

double WignerGrid::re_at(int j) const {
  return spec.re_min + j * (spec.re_max - spec.re_min) / (spec.resolution - 1);
}

double WignerGrid::im_at(int i) const {
  return spec.im_min + i * (spec.im_max - spec.im_min) / (spec.resolution - 1);
}

WignerGrid wigner_cat(const WignerGridSpec& spec, const CatStateSpec& cat, Complex c00,
                      double nu) {
  if (spec.resolution < 2)
    throw std::invalid_argument("wigner_cat: resolution must be at least 2");
  if (nu < 0.0) throw std::invalid_argument("wigner_cat: nu must be nonnegative");

  const double sigma = 1.0 + 2.0 * nu;
  const double n_phi = cat.normalization();
  const double prefactor = 2.0 * n_phi * n_phi / (std::numbers::pi * sigma);
  const Complex displaced = cat.alpha0 * c00;
  const double eta = fringe_visibility(c00, nu);
  const double fringe_weight = 2.0 * std::exp(-2.0 * std::norm(cat.alpha0) * eta);

  WignerGrid grid;
  grid.spec = spec;
  grid.values.resize(spec.resolution, spec.resolution);
  for (int i = 0; i < spec.resolution; ++i) {
    for (int j = 0; j < spec.resolution; ++j) {
      const Complex alpha(grid.re_at(j), grid.im_at(i));
      const double peaks = std::exp(-2.0 * std::norm(alpha - displaced) / sigma) +
                           std::exp(-2.0 * std::norm(alpha + displaced) / sigma);
      const double ridge =
          fringe_weight * std::exp(-2.0 * std::norm(alpha) / sigma) *
          std::cos(cat.phi + 4.0 * std::imag(alpha * displaced) / sigma);
      grid.values(i, j) = prefactor * (peaks + ridge);
    }
  }
  return grid;
}

double wigner_integral(const WignerGrid& grid) {
  const double dre = (grid.spec.re_max - grid.spec.re_min) / (grid.spec.resolution - 1);
  const double dim = (grid.spec.im_max - grid.spec.im_min) / (grid.spec.resolution - 1);
  return grid.values.sum() * dre * dim;
}

namespace {

ObservableSeries series_from_rows(const std::vector<AmplitudeRow>& rows,
                                  const OccupationVector& occ, std::string label) {
  ObservableSeries series;
  series.label = std::move(label);
  series.temperature = occ.temperature;
  series.times.reserve(rows.size());
  for (const AmplitudeRow& row : rows) {
    const double nu = mean_vibrational_number(row, occ);
    const Complex c00 = row.entries(0);
    series.times.push_back(row.elapsed);
    series.nu.push_back(nu);
    series.eta.push_back(fringe_visibility(c00, nu));
    series.c00_abs2.push_back(std::norm(c00));
  }
  return series;
}

}  // namespace

ObservableSeries kicked_series(const BathSpec& bath, const KickSchedule& schedule,
                               const OccupationVector& occ, CycleOrder order) {
  const TransferMatrix cycle = cycle_matrix(bath, schedule, order);
  return series_from_rows(stroboscopic_rows(cycle, schedule.n_cycles), occ, "kicked");
}

ObservableSeries free_series(const BathSpec& bath, const std::vector<double>& times,
                             const OccupationVector& occ) {
  return series_from_rows(free_evolution_rows(bath, times), occ, "free");
}

ObservableSeries markov_series(const std::vector<double>& times, double gamma,
                               double n_omega0, double temperature) {
  ObservableSeries series;
  series.label = "markov";
  series.temperature = temperature;
  for (double t : times) {
    const double nu = markov_heating(t, gamma, n_omega0);
    series.times.push_back(t);
    series.nu.push_back(nu);
    series.eta.push_back(markov_visibility(t, gamma, n_omega0));
    series.c00_abs2.push_back(std::exp(-gamma * t));
  }
  return series;
}

}  // namespace pkick
