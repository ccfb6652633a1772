// Acceptance suite: end-to-end checks of the simulator against its expected
// physical behavior. Prints one PASS/FAIL line per criterion.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pkick/harness.hpp"

using namespace pkick;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void criterion(const std::string& name, const std::function<std::string()>& body) {
  std::string detail;
  bool passed = true;
  try {
    detail = body();
  } catch (const std::exception& e) {
    passed = false;
    detail = std::string("exception: ") + e.what();
  }
  if (detail.rfind("FAIL:", 0) == 0) passed = false;
  std::printf("[%s] %s  %s\n", passed ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!passed) ++g_failures;
}

std::string ok(const std::ostringstream& ss) { return ss.str(); }

nlohmann::json load_baselines() {
  const fs::path path = fs::path(PKICK_DATA_DIR) / "regression_baselines.json";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing baselines file " + path.string());
  return nlohmann::json::parse(in);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("pkick_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

constexpr double kTemperatures[3] = {0.01, 0.1, 1.0};

}  // namespace

int main() {
  const RunConfig defaults;
  const BathSpec bath = build_bath(defaults.omega0, defaults.gamma, defaults.n_modes,
                                   defaults.delta);
  const double relax = 1.0 / bath.gamma;

  criterion("1 thermal occupations at the reference temperatures", [&] {
    const double paper[3] = {130.0, 1302.0, 13144.0};
    std::ostringstream ss;
    for (int i = 0; i < 3; ++i) {
      const double codata = bose_occupation(bath.omega0, kTemperatures[i]);
      const double gap = std::abs(codata - paper[i]) / codata;
      ss << "N(" << kTemperatures[i] << " K)=" << codata << " gap=" << gap * 100 << "% ";
      if (gap > 0.01) return "FAIL: " + ss.str();
    }
    return ok(ss);
  });

  criterion("2 Markov heating regression, free nu(t), all temperatures", [&] {
    std::vector<double> times;
    for (int i = 0; i <= 29; ++i) times.push_back((0.1 + i * 2.9 / 29.0) * relax);
    double worst = 0.0;
    double worst_time = 0.0;
    double worst_of_equilibrium = 0.0;
    for (double temperature : kTemperatures) {
      const OccupationVector occ = build_occupations(bath, temperature);
      const double n0 = bose_occupation(bath.omega0, temperature);
      const ObservableSeries free_curve = free_series(bath, times, occ);
      for (std::size_t i = 0; i < times.size(); ++i) {
        const double reference = markov_heating(times[i], bath.gamma, n0);
        const double deviation = std::abs(free_curve.nu[i] - reference);
        if (deviation / reference > worst) {
          worst = deviation / reference;
          worst_time = times[i] * bath.gamma;
        }
        worst_of_equilibrium = std::max(worst_of_equilibrium, deviation / n0);
      }
    }
    std::ostringstream ss;
    ss << "max relative deviation " << worst * 100 << "% at gamma*t = " << worst_time
       << " (tol 5%); as a fraction of N(omega0) the worst deviation is "
       << worst_of_equilibrium * 100
       << "% -- the early-window excess comes from far-detuned low-frequency modes "
          "whose thermal occupation grows like 1/omega";
    return worst <= 0.05 ? ok(ss) : "FAIL: " + ss.str();
  });

  criterion("3 Markov decoherence regression, free eta(t), T = 10 mK", [&] {
    std::vector<double> times;
    for (int i = 0; i <= 29; ++i) times.push_back((0.1 + i * 2.9 / 29.0) * relax);
    const OccupationVector occ = build_occupations(bath, 0.01);
    const double n0 = bose_occupation(bath.omega0, 0.01);
    const ObservableSeries free_curve = free_series(bath, times, occ);
    double worst = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double reference = markov_visibility(times[i], bath.gamma, n0);
      worst = std::max(worst, std::abs(free_curve.eta[i] - reference) / reference);
    }
    std::ostringstream ss;
    ss << "max relative deviation " << worst * 100 << "% (tol 5%)";
    return worst <= 0.05 ? ok(ss) : "FAIL: " + ss.str();
  });

  criterion("4 heating suppression at T_c = 157 ns, T = 10 mK", [&] {
    const nlohmann::json baselines = load_baselines();
    const double frozen = baselines.at("heating_suppression_ratio_157ns").get<double>();
    const OccupationVector occ = build_occupations(bath, 0.01);
    const int n_cycles = static_cast<int>(std::floor(relax / 157e-9));
    const KickSchedule schedule = make_schedule(157e-9, 1.0 / 7.0, n_cycles);
    const ObservableSeries kicked = kicked_series(bath, schedule, occ);
    const ObservableSeries free_curve = free_series(bath, {kicked.times.back()}, occ);
    const double ratio = kicked.nu.back() / free_curve.nu.back();
    std::ostringstream ss;
    ss << "nu_kicked/nu_free = " << ratio << " (bound 0.05, frozen pilot " << frozen << ")";
    const bool within_baseline = std::abs(ratio - frozen) <= 0.25 * frozen;
    return (ratio <= 0.05 && within_baseline) ? ok(ss) : "FAIL: " + ss.str();
  });

  // shared sweep data for criteria 5 and 6
  RunConfig sweep_config = defaults;
  const std::vector<SweepPoint> heating_points =
      compute_sweep(sweep_config, SweepObservable::Heating);
  const std::vector<SweepPoint> decoherence_points =
      compute_sweep(sweep_config, SweepObservable::Decoherence);

  criterion("5 heating threshold and temperature collapse", [&] {
    std::ostringstream ss;
    for (double temperature : kTemperatures) {
      double crossing = -1.0;
      for (const SweepPoint& p : heating_points) {
        if (p.temperature != temperature) continue;
        if (p.value <= 0.1 * p.free_value) crossing = std::max(crossing, p.rescaled);
      }
      ss << "T=" << temperature << "K crossing at wcTc/2pi=" << crossing << " ";
      if (crossing < 0.5 || crossing > 2.0) return "FAIL: " + ss.str();
    }
    // pointwise collapse of nu/N(omega0) across the three temperatures
    double worst = 0.0;
    for (const SweepPoint& a : heating_points) {
      if (a.temperature != kTemperatures[0]) continue;
      const double na = a.value / bose_occupation(bath.omega0, a.temperature);
      for (const SweepPoint& b : heating_points) {
        if (b.temperature == kTemperatures[0] || b.rescaled != a.rescaled) continue;
        const double nb = b.value / bose_occupation(bath.omega0, b.temperature);
        worst = std::max(worst, std::abs(na - nb) / std::max(na, nb));
      }
    }
    ss << "max normalized spread " << worst * 100 << "% (tol 5%)";
    return worst <= 0.05 ? ok(ss) : "FAIL: " + ss.str();
  });

  criterion("6 decoherence temperature dependence", [&] {
    std::ostringstream ss;
    // eta(1/gamma) strictly increasing in T at fixed wcTc/2pi = 0.25
    RunConfig fixed = defaults;
    fixed.sweep.rescaled_min = fixed.sweep.rescaled_max = 0.25;
    fixed.sweep.count = 1;
    const std::vector<SweepPoint> at_quarter =
        compute_sweep(fixed, SweepObservable::Decoherence);
    ss << "eta(0.25) = ";
    for (const SweepPoint& p : at_quarter) ss << p.value << " ";
    for (std::size_t i = 1; i < at_quarter.size(); ++i)
      if (!(at_quarter[i].value > at_quarter[i - 1].value)) return "FAIL: " + ss.str();

    // visible threshold near wcTc/2pi = 1 at 10 mK: the knee where eta leaves
    // the free plateau, i.e. the largest cycle time with visible suppression
    double knee = -1.0;
    for (const SweepPoint& p : decoherence_points) {
      if (p.temperature != 0.01) continue;
      if (p.value <= 0.95) knee = std::max(knee, p.rescaled);
      if (p.rescaled >= 2.0 && p.value < 0.99) {
        ss << "| 10 mK plateau broken at " << p.rescaled;
        return "FAIL: " + ss.str();
      }
    }
    ss << "| 10 mK suppression knee at " << knee << " ";
    if (knee < 0.5 || knee > 2.0) return "FAIL: " + ss.str();

    // at 1 K, no swept T_c beats the Eq.-(39)-style threshold, so eta stays high
    const ThresholdPrediction hot = predict_threshold(1.0, bath);
    for (const SweepPoint& p : decoherence_points) {
      if (p.temperature != 1.0) continue;
      if (p.cycle_time >= hot.cycle_time && p.value < 0.5) {
        ss << "| 1 K point below 0.5 at Tc=" << p.cycle_time;
        return "FAIL: " + ss.str();
      }
    }
    ss << "| 1 K threshold " << hot.cycle_time << " s below sweep range";
    return ok(ss);
  });

  criterion("7 oracle equivalence (RK4, convolution, convergence)", [&] {
    const std::vector<OracleReport> reports = run_validation_suite(bath);
    std::ostringstream ss;
    for (const OracleReport& report : reports) {
      if (report.name.rfind("rk4", 0) != 0 && report.name.rfind("convolution", 0) != 0)
        continue;
      ss << report.name << "=" << report.max_abs_error << " ";
      if (!report.passed) return "FAIL: " + ss.str();
    }
    return ok(ss);
  });

  criterion("8 property suite", [&] {
    std::ostringstream ss;
    const KickSchedule schedule = make_schedule(157e-9, 1.0 / 7.0, 63);

    // unitarity and row norms
    const TransferMatrix cycle = cycle_matrix(bath, schedule);
    const TransferMatrix segment = segment_unitary(build_generator(bath, 0.0), relax);
    if (unitarity_defect(cycle) > 1e-10 || unitarity_defect(segment) > 1e-10)
      return std::string("FAIL: unitarity defect above 1e-10");
    for (const AmplitudeRow& row : stroboscopic_rows(cycle, 63))
      if (std::abs(row.entries.norm() - 1.0) > 1e-10)
        return std::string("FAIL: row norm drifted beyond 1e-10");

    // T = 0: nu = 0 and eta = 1 - |C00|^2
    const OccupationVector cold = build_occupations(bath, 0.0);
    const ObservableSeries frozen = kicked_series(bath, schedule, cold);
    for (std::size_t i = 0; i < frozen.times.size(); ++i) {
      if (frozen.nu[i] != 0.0) return std::string("FAIL: nu nonzero at T=0");
      if (std::abs(frozen.eta[i] - (1.0 - frozen.c00_abs2[i])) > 1e-12)
        return std::string("FAIL: eta != 1-|C00|^2 at T=0");
    }

    // decoupled limit: C00 after N cycles = (-1)^N
    BathSpec decoupled = bath;
    decoupled.couplings.setZero();
    const auto rows = stroboscopic_rows(cycle_matrix(decoupled, schedule), 5);
    for (int n = 0; n <= 5; ++n) {
      const Complex expected(n % 2 == 0 ? 1.0 : -1.0, 0.0);
      if (std::abs(rows[n].entries(0) - expected) > 1e-12)
        return std::string("FAIL: decoupled cycle C00 != (-1)^N");
    }

    // eta independent of alpha0 (byte-identical decoherence output)
    RunConfig small = defaults;
    small.n_modes = 41;
    small.delta = defaults.omega0 / 20.0;
    small.total_time = 2e-6;
    small.temperatures = {0.01};
    const fs::path dir_a = fresh_dir("cat_a");
    const fs::path dir_b = fresh_dir("cat_b");
    run_decoherence(small, dir_a);
    small.cat.alpha0 *= 2.0;
    run_decoherence(small, dir_b);
    if (slurp(dir_a / "decoherence.csv") != slurp(dir_b / "decoherence.csv"))
      return std::string("FAIL: eta depends on alpha0");

    // zero-mode policy sensitivity: <= 2% on nu(1/gamma) at all temperatures
    double worst = 0.0;
    for (double temperature : kTemperatures) {
      const OccupationVector clamped =
          build_occupations(bath, temperature, ZeroModePolicy::Clamp);
      const OccupationVector dropped =
          build_occupations(bath, temperature, ZeroModePolicy::Drop);
      const auto row = free_evolution_rows(bath, {relax});
      const double nu_clamp = mean_vibrational_number(row[0], clamped);
      const double nu_drop = mean_vibrational_number(row[0], dropped);
      worst = std::max(worst, std::abs(nu_clamp - nu_drop) / nu_clamp);
    }
    ss << "zero-mode policy effect " << worst * 100 << "% (tol 2%)";
    return worst <= 0.02 ? ok(ss) : "FAIL: " + ss.str();
  });

  criterion("9 determinism: byte-identical CSVs", [&] {
    RunConfig config = defaults;
    config.temperatures = {0.01};
    const fs::path dir_a = fresh_dir("det_a");
    const fs::path dir_b = fresh_dir("det_b");
    run_heating(config, dir_a);
    run_heating(config, dir_b);
    run_decoherence(config, dir_a);
    run_decoherence(config, dir_b);
    if (slurp(dir_a / "heating.csv") != slurp(dir_b / "heating.csv"))
      return std::string("FAIL: heating.csv differs between runs");
    if (slurp(dir_a / "decoherence.csv") != slurp(dir_b / "decoherence.csv"))
      return std::string("FAIL: decoherence.csv differs between runs");
    return std::string("heating.csv and decoherence.csv identical across runs");
  });

  std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
