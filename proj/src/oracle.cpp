#include "pkick/oracle.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "pkick/observables.hpp"

namespace pkick {

TransferMatrix rk4_propagate(const GeneratorMatrix& gen, double duration, double step) {
  if (duration < 0.0)
    throw std::invalid_argument("rk4_propagate: duration must be nonnegative");
  if (step <= 0.0) throw std::invalid_argument("rk4_propagate: step must be positive");
  const double max_diag = gen.entries.diagonal().cwiseAbs().maxCoeff();
  if (max_diag > 0.0 && step > 2.0 * std::numbers::pi / (50.0 * max_diag))
    throw std::invalid_argument("rk4_propagate: step too large for the fastest diagonal frequency");

  const int dim = gen.dimension();
  TransferMatrix u;
  u.elapsed = duration;
  u.entries = MatrixXcd::Identity(dim, dim);
  if (duration == 0.0) return u;

  const MatrixXcd a = Complex(0.0, -1.0) * gen.entries.cast<Complex>();
  const long n_steps = static_cast<long>(std::ceil(duration / step));
  const double h = duration / static_cast<double>(n_steps);
  for (long i = 0; i < n_steps; ++i) {
    const MatrixXcd k1 = a * u.entries;
    const MatrixXcd k2 = a * (u.entries + (0.5 * h) * k1);
    const MatrixXcd k3 = a * (u.entries + (0.5 * h) * k2);
    const MatrixXcd k4 = a * (u.entries + h * k3);
    u.entries += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return u;
}

Complex convolution_L0k(const BathSpec& bath, double frequency_shift, int mode_index,
                        double t, double quadrature_step) {
  if (mode_index < 0 || mode_index >= bath.mode_count())
    throw std::invalid_argument("convolution_L0k: mode index out of range");
  if (t < 0.0) throw std::invalid_argument("convolution_L0k: t must be nonnegative");
  if (t == 0.0) return 0.0;
  if (quadrature_step <= 0.0 || quadrature_step > t / 1000.0)
    throw std::invalid_argument("convolution_L0k: quadrature step must be <= t/1000");

  const SpectralPropagator prop(build_generator(bath, frequency_shift));
  const double gamma_k = bath.couplings[mode_index];
  const double detuning = bath.mode_frequencies[mode_index] - bath.omega0 - frequency_shift;

  const long n = std::lround(t / quadrature_step);
  const double h = t / static_cast<double>(n);
  Complex sum = 0.0;
  for (long i = 0; i <= n; ++i) {
    const double s = i * h;
    // shifted-frame integrand: L00'(u) = exp(+i*dw*u) * L00(u)
    const Complex l00_shifted =
        std::exp(Complex(0.0, frequency_shift * (t - s))) * prop.system_amplitude(t - s);
    const Complex term = std::exp(Complex(0.0, -detuning * s)) * l00_shifted;
    sum += (i == 0 || i == n) ? 0.5 * term : term;
  }
  const Complex shifted_result = Complex(0.0, -gamma_k) * h * sum;
  return std::exp(Complex(0.0, -frequency_shift * t)) * shifted_result;
}

OracleReport revival_check(const BathSpec& bath) {
  const SpectralPropagator prop(build_generator(bath, 0.0));
  const double t_rev = 2.0 * std::numbers::pi / bath.delta;

  // The coupling perturbs the equal spacing, so the recurrence echo builds up
  // after T_rev rather than exactly at it. Locate the peak in [T_rev, 1.5 T_rev].
  double peak = 0.0;
  double peak_time = t_rev;
  for (int i = 0; i <= 500; ++i) {
    const double t = t_rev * (1.0 + 0.5 * i / 500.0);
    const double amplitude = std::abs(prop.system_amplitude(t));
    if (amplitude > peak) {
      peak = amplitude;
      peak_time = t;
    }
  }
  const double at_half = std::abs(prop.system_amplitude(0.5 * t_rev));
  const double continuum_at_peak = std::exp(-0.5 * bath.gamma * peak_time);

  OracleReport report;
  report.name = "revival";
  std::ostringstream desc;
  desc << bath.mode_count() << "-mode bath: recurrence peak |C00| = " << peak
       << " at t = " << peak_time / t_rev << " T_rev (continuum decay there: "
       << continuum_at_peak << "), |C00(T_rev/2)| = " << at_half;
  report.instance = desc.str();
  report.max_abs_error = 1.0 - peak;
  report.tolerance = 0.5;
  report.passed = peak >= 0.5 && peak >= 10.0 * continuum_at_peak &&
                  at_half <= 0.3;
  return report;
}

namespace {

OracleReport make_report(std::string name, std::string instance, double error,
                         double tolerance) {
  OracleReport report;
  report.name = std::move(name);
  report.instance = std::move(instance);
  report.max_abs_error = error;
  report.tolerance = tolerance;
  report.passed = error <= tolerance;
  return report;
}

double rk4_vs_spectral_error(const GeneratorMatrix& gen, double t, double step) {
  const TransferMatrix reference = segment_unitary(gen, t);
  const TransferMatrix integrated = rk4_propagate(gen, t, step);
  return (reference.entries - integrated.entries).cwiseAbs().maxCoeff();
}

}  // namespace

std::vector<OracleReport> run_validation_suite(const BathSpec& bath,
                                               const PhysicalConstants& constants) {
  std::vector<OracleReport> reports;

  // reduced instance: same frequencies and damping, 11 modes on a coarser grid
  const BathSpec small = build_bath(bath.omega0, bath.gamma, 11, bath.omega0 / 5.0);
  const double relax = 1.0 / bath.gamma;
  const KickSchedule fast_cycle = make_schedule(157e-9, 1.0 / 7.0, 1);
  const GeneratorMatrix small_free = build_generator(small, 0.0);
  const GeneratorMatrix small_kick = build_generator(small, fast_cycle.frequency_shift);

  reports.push_back(make_report(
      "rk4_equivalence_free", "11 modes, t = 1/gamma, step 8e-10 s",
      rk4_vs_spectral_error(small_free, relax, 8e-10), 1e-8));
  reports.push_back(make_report(
      "rk4_equivalence_kick", "11 modes, t = tau, step 3.5e-11 s",
      rk4_vs_spectral_error(small_kick, fast_cycle.kick_duration, 3.5e-11), 1e-8));

  {
    const double t = 1e-6;
    const double coarse = rk4_vs_spectral_error(small_free, t, 4e-9);
    const double fine = rk4_vs_spectral_error(small_free, t, 2e-9);
    const double ratio = coarse / fine;
    std::ostringstream desc;
    desc << "step 4e-9 vs 2e-9 s over t = 1e-6 s: error ratio " << ratio;
    // pass iff halving the step cuts the error by at least 12x
    reports.push_back(make_report("rk4_convergence_order", desc.str(),
                                  ratio >= 12.0 ? 0.0 : 12.0 - ratio, 0.0));
  }

  {
    double worst_free = 0.0;
    double worst_kick = 0.0;
    const SpectralPropagator free_prop(small_free);
    const SpectralPropagator kick_prop(small_kick);
    const TransferMatrix free_u = free_prop.evolve(relax);
    const TransferMatrix kick_u = kick_prop.evolve(fast_cycle.kick_duration);
    for (int k = 0; k < small.mode_count(); ++k) {
      const Complex via_quadrature = convolution_L0k(small, 0.0, k, relax, relax / 1e4);
      worst_free = std::max(worst_free, std::abs(via_quadrature - free_u.entries(0, k + 1)));
      const Complex via_quadrature_kick = convolution_L0k(
          small, fast_cycle.frequency_shift, k, fast_cycle.kick_duration, fast_cycle.kick_duration / 1e4);
      worst_kick =
          std::max(worst_kick, std::abs(via_quadrature_kick - kick_u.entries(0, k + 1)));
    }
    reports.push_back(make_report("convolution_L0k_free",
                                  "11 modes, t = 1/gamma, step t/1e4", worst_free, 1e-6));
    reports.push_back(make_report("convolution_L0k_kick",
                                  "11 modes, t = tau, step t/1e4", worst_kick, 1e-6));
  }

  {
    const KickSchedule schedule = make_schedule(157e-9, 1.0 / 7.0, 1);
    const double defect_free = unitarity_defect(segment_unitary(build_generator(bath, 0.0), relax));
    const double defect_cycle = unitarity_defect(cycle_matrix(bath, schedule));
    std::ostringstream desc;
    desc << bath.mode_count() << "-mode bath, free segment at 1/gamma and 157 ns decoupling cycle";
    reports.push_back(make_report("unitarity", desc.str(),
                                  std::max(defect_free, defect_cycle), 1e-10));
  }

  {
    // free-evolution heating vs the Markov reference at 10 mK
    const double temperature = 0.01;
    const OccupationVector occ = build_occupations(bath, temperature,
                                                   ZeroModePolicy::Clamp, constants);
    const double n0 = bose_occupation(bath.omega0, temperature, constants);
    std::vector<double> times;
    for (int i = 0; i <= 25; ++i) times.push_back((0.1 + i * (3.0 - 0.1) / 25.0) / bath.gamma);
    const ObservableSeries free_curve = free_series(bath, times, occ);
    // Deviation measured as a fraction of the equilibrium occupation N(w0).
    // Pointwise relative error is dominated early in the window by the
    // far-detuned low-frequency modes, whose occupation grows like 1/w; that
    // transient is real model behavior, not a fault, so it must not trip a
    // regression check aimed at code defects.
    double worst = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double reference = markov_heating(times[i], bath.gamma, n0);
      worst = std::max(worst, std::abs(free_curve.nu[i] - reference) / n0);
    }
    reports.push_back(make_report(
        "markov_heating_regression",
        "free nu(t) vs N(w0)(1-e^{-gt}), t in [0.1,3]/gamma, T = 10 mK, error / N(w0)",
        worst, 0.05));
  }

  reports.push_back(revival_check(bath));
  return reports;
}

}  // namespace pkick
