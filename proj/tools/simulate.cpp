#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "pkick/harness.hpp"

namespace {

pkick::RunConfig make_config(const std::string& config_path, bool override_horizon) {
  pkick::RunConfig config;
  if (!config_path.empty()) config = pkick::load_config_file(config_path);
  if (override_horizon) config.override_horizon = true;
  pkick::validate_config(config);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parity-kick decoupling simulator for a damped vibrational mode"};
  app.require_subcommand(1);
  app.fallthrough();  // accept the global options after the subcommand too

  std::string config_path;
  std::string out_dir = "out";
  bool override_horizon = false;
  app.add_option("--config", config_path, "JSON config file (defaults used if omitted)")
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory");
  app.add_flag("--override-horizon", override_horizon,
               "allow times beyond the finite-bath validity horizon pi/delta");

  auto* heating = app.add_subcommand("heating", "nu(t): kicked vs free vs Markov");
  auto* decoherence = app.add_subcommand("decoherence", "eta(t): kicked vs free vs Markov");
  auto* sweep_heating =
      app.add_subcommand("sweep-heating", "nu(1/gamma) over a cycle-time grid");
  auto* sweep_decoherence =
      app.add_subcommand("sweep-decoherence", "eta(1/gamma) over a cycle-time grid");
  auto* wigner = app.add_subcommand("wigner", "Wigner function snapshots of the cat state");
  auto* validate = app.add_subcommand("validate", "run the oracle cross-check suite");

  CLI11_PARSE(app, argc, argv);

  try {
    const pkick::RunConfig config = make_config(config_path, override_horizon);
    if (heating->parsed()) {
      pkick::run_heating(config, out_dir);
    } else if (decoherence->parsed()) {
      pkick::run_decoherence(config, out_dir);
    } else if (sweep_heating->parsed()) {
      pkick::run_sweep(config, pkick::SweepObservable::Heating, out_dir);
    } else if (sweep_decoherence->parsed()) {
      pkick::run_sweep(config, pkick::SweepObservable::Decoherence, out_dir);
    } else if (wigner->parsed()) {
      pkick::run_wigner(config, out_dir);
    } else if (validate->parsed()) {
      return pkick::run_validate(config) == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
