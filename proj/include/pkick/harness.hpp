#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "pkick/model.hpp"
#include "pkick/observables.hpp"
#include "pkick/oracle.hpp"
#include "pkick/propagator.hpp"

namespace pkick {

struct SweepGridSpec {
  double rescaled_min = 0.05;  // omega_c * T_c / 2pi at the low end
  double rescaled_max = 5.0;
  int count = 24;
  bool log_spaced = true;
};

struct WignerRunSpec {
  WignerGridSpec grid;
  std::vector<int> cycle_counts{0, 63};
};

struct RunConfig {
  double omega0 = 1e7;   // rad/s
  double gamma = 1e5;    // rad/s
  int n_modes = 201;
  double delta = 1e5;    // rad/s
  std::vector<double> temperatures{0.01, 0.1, 1.0};  // K
  double cycle_time = 157e-9;                        // s
  double kick_fraction = 1.0 / 7.0;
  double total_time = 1e-5;  // s
  SweepGridSpec sweep;
  CatStateSpec cat{Complex(3.0, 0.0), 0.0};
  WignerRunSpec wigner;
  CycleOrder cycle_order = CycleOrder::FreeThenKick;
  ZeroModePolicy zero_mode_policy = ZeroModePolicy::Clamp;
  bool override_horizon = false;
  bool sweep_log_y = false;
  PhysicalConstants constants;
};

/// Strict parse: unknown keys are rejected with the offending path.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config_file(const std::filesystem::path& path);
nlohmann::json config_to_json(const RunConfig& config);

/// Throws unless total_time fits inside the finite-bath validity horizon
/// (pi/delta) or the override flag is set; other cross-field checks too.
void validate_config(const RunConfig& config);

/// 12-significant-digit scientific notation used in every CSV cell.
std::string csv_number(double v);

enum class SweepObservable { Heating, Decoherence };

struct SweepPoint {
  double cycle_time = 0.0;   // T_c, s
  double rescaled = 0.0;     // omega_c * T_c / 2pi
  double temperature = 0.0;  // K
  double value = 0.0;        // nu(1/gamma) or eta(1/gamma)
  double free_value = 0.0;   // same observable, no kicks, same elapsed time
  double elapsed = 0.0;      // n_cycles * T_c, s
  int n_cycles = 0;
};

/// Sweep evaluation, sorted by (temperature, cycle_time).
std::vector<SweepPoint> compute_sweep(const RunConfig& config, SweepObservable observable);

void run_heating(const RunConfig& config, const std::filesystem::path& out_dir);
void run_decoherence(const RunConfig& config, const std::filesystem::path& out_dir);
void run_sweep(const RunConfig& config, SweepObservable observable,
               const std::filesystem::path& out_dir);
void run_wigner(const RunConfig& config, const std::filesystem::path& out_dir);

/// Runs the oracle suite; prints one pass/fail line per check.
/// Returns the number of failed checks.
int run_validate(const RunConfig& config);

}  // namespace pkick
