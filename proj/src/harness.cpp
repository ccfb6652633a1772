#include "pkick/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "pkick/svg_plot.hpp"

namespace pkick {

namespace {

constexpr const char* kVersion = "pkick 0.1.0";

using nlohmann::json;

void reject_unknown_keys(const json& j, const std::string& path,
                         std::initializer_list<const char*> known) {
  for (const auto& item : j.items()) {
    if (std::none_of(known.begin(), known.end(),
                     [&](const char* k) { return item.key() == k; }))
      throw std::invalid_argument("config: unknown key '" + path + item.key() + "'");
  }
}

template <typename T>
void read_if(const json& j, const char* key, T& value) {
  if (j.contains(key)) value = j.at(key).get<T>();
}

}  // namespace

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: top level must be a JSON object");
  reject_unknown_keys(j, "",
                      {"omega0", "gamma", "n_modes", "delta", "temperatures", "cycle_time",
                       "kick_fraction", "total_time", "sweep", "cat", "wigner", "cycle_order",
                       "zero_mode_policy", "override_horizon", "sweep_log_y", "constants"});
  RunConfig config;
  read_if(j, "omega0", config.omega0);
  read_if(j, "gamma", config.gamma);
  read_if(j, "n_modes", config.n_modes);
  read_if(j, "delta", config.delta);
  read_if(j, "temperatures", config.temperatures);
  read_if(j, "cycle_time", config.cycle_time);
  read_if(j, "kick_fraction", config.kick_fraction);
  read_if(j, "total_time", config.total_time);
  read_if(j, "override_horizon", config.override_horizon);
  read_if(j, "sweep_log_y", config.sweep_log_y);

  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    reject_unknown_keys(s, "sweep.", {"rescaled_min", "rescaled_max", "count", "scale"});
    read_if(s, "rescaled_min", config.sweep.rescaled_min);
    read_if(s, "rescaled_max", config.sweep.rescaled_max);
    read_if(s, "count", config.sweep.count);
    if (s.contains("scale")) {
      const std::string scale = s.at("scale").get<std::string>();
      if (scale == "log")
        config.sweep.log_spaced = true;
      else if (scale == "linear")
        config.sweep.log_spaced = false;
      else
        throw std::invalid_argument("config: sweep.scale must be 'log' or 'linear'");
    }
  }
  if (j.contains("cat")) {
    const json& c = j.at("cat");
    reject_unknown_keys(c, "cat.", {"alpha0_re", "alpha0_im", "phi"});
    double re = config.cat.alpha0.real(), im = config.cat.alpha0.imag();
    read_if(c, "alpha0_re", re);
    read_if(c, "alpha0_im", im);
    config.cat.alpha0 = Complex(re, im);
    read_if(c, "phi", config.cat.phi);
  }
  if (j.contains("wigner")) {
    const json& w = j.at("wigner");
    reject_unknown_keys(w, "wigner.",
                        {"re_min", "re_max", "im_min", "im_max", "resolution", "cycles"});
    read_if(w, "re_min", config.wigner.grid.re_min);
    read_if(w, "re_max", config.wigner.grid.re_max);
    read_if(w, "im_min", config.wigner.grid.im_min);
    read_if(w, "im_max", config.wigner.grid.im_max);
    read_if(w, "resolution", config.wigner.grid.resolution);
    read_if(w, "cycles", config.wigner.cycle_counts);
  }
  if (j.contains("cycle_order")) {
    const std::string order = j.at("cycle_order").get<std::string>();
    if (order == "free_first")
      config.cycle_order = CycleOrder::FreeThenKick;
    else if (order == "kick_first")
      config.cycle_order = CycleOrder::KickThenFree;
    else
      throw std::invalid_argument("config: cycle_order must be 'free_first' or 'kick_first'");
  }
  if (j.contains("zero_mode_policy")) {
    const std::string policy = j.at("zero_mode_policy").get<std::string>();
    if (policy == "clamp")
      config.zero_mode_policy = ZeroModePolicy::Clamp;
    else if (policy == "drop")
      config.zero_mode_policy = ZeroModePolicy::Drop;
    else
      throw std::invalid_argument("config: zero_mode_policy must be 'clamp' or 'drop'");
  }
  if (j.contains("constants")) {
    const json& c = j.at("constants");
    reject_unknown_keys(c, "constants.", {"hbar", "k_boltzmann"});
    read_if(c, "hbar", config.constants.hbar);
    read_if(c, "k_boltzmann", config.constants.k_boltzmann);
    if (config.constants.hbar <= 0.0 || config.constants.k_boltzmann <= 0.0)
      throw std::invalid_argument("config: constants must be strictly positive");
  }
  validate_config(config);
  return config;
}

RunConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config parse error in " + path.string() + ": " + e.what());
  }
  return parse_config(j);
}

json config_to_json(const RunConfig& c) {
  return json{
      {"omega0", c.omega0},
      {"gamma", c.gamma},
      {"n_modes", c.n_modes},
      {"delta", c.delta},
      {"temperatures", c.temperatures},
      {"cycle_time", c.cycle_time},
      {"kick_fraction", c.kick_fraction},
      {"total_time", c.total_time},
      {"sweep",
       {{"rescaled_min", c.sweep.rescaled_min},
        {"rescaled_max", c.sweep.rescaled_max},
        {"count", c.sweep.count},
        {"scale", c.sweep.log_spaced ? "log" : "linear"}}},
      {"cat",
       {{"alpha0_re", c.cat.alpha0.real()},
        {"alpha0_im", c.cat.alpha0.imag()},
        {"phi", c.cat.phi}}},
      {"wigner",
       {{"re_min", c.wigner.grid.re_min},
        {"re_max", c.wigner.grid.re_max},
        {"im_min", c.wigner.grid.im_min},
        {"im_max", c.wigner.grid.im_max},
        {"resolution", c.wigner.grid.resolution},
        {"cycles", c.wigner.cycle_counts}}},
      {"cycle_order", c.cycle_order == CycleOrder::FreeThenKick ? "free_first" : "kick_first"},
      {"zero_mode_policy", c.zero_mode_policy == ZeroModePolicy::Clamp ? "clamp" : "drop"},
      {"override_horizon", c.override_horizon},
      {"sweep_log_y", c.sweep_log_y},
      {"constants", {{"hbar", c.constants.hbar}, {"k_boltzmann", c.constants.k_boltzmann}}}};
}

void validate_config(const RunConfig& config) {
  if (config.temperatures.empty())
    throw std::invalid_argument("config: temperatures must be nonempty");
  for (double t : config.temperatures)
    if (t < 0.0) throw std::invalid_argument("config: temperatures must be nonnegative");
  if (config.total_time <= 0.0)
    throw std::invalid_argument("config: total_time must be positive");
  if (config.cycle_time <= 0.0)
    throw std::invalid_argument("config: cycle_time must be positive");
  if (config.sweep.count < 1)
    throw std::invalid_argument("config: sweep.count must be at least 1");
  if (config.sweep.rescaled_min <= 0.0 || config.sweep.rescaled_max < config.sweep.rescaled_min)
    throw std::invalid_argument("config: sweep range must satisfy 0 < min <= max");
  if (config.wigner.grid.resolution < 2)
    throw std::invalid_argument("config: wigner.resolution must be at least 2");

  const double horizon = std::numbers::pi / config.delta;
  if (config.total_time > horizon && !config.override_horizon)
    throw std::invalid_argument(
        "config: total_time exceeds the validity horizon pi/delta; "
        "set override_horizon to proceed");
  // bath preconditions surface early, with config wording
  build_bath(config.omega0, config.gamma, config.n_modes, config.delta);
}

std::string csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.11e", v);
  return buf;
}

namespace {

BathSpec config_bath(const RunConfig& c) {
  return build_bath(c.omega0, c.gamma, c.n_modes, c.delta);
}

int cycles_within(double total_time, double cycle_time) {
  return std::max(1, static_cast<int>(std::floor(total_time / cycle_time + 1e-9)));
}

std::vector<std::string> horizon_warnings(const RunConfig& config, const BathSpec& bath,
                                          double last_time) {
  std::vector<std::string> warnings;
  if (last_time > validity_horizon(bath)) {
    std::ostringstream msg;
    msg << "requested time " << last_time << " s exceeds the finite-bath validity horizon "
        << validity_horizon(bath) << " s; late-time values reflect bath recurrences";
    warnings.push_back(msg.str());
  }
  return warnings;
}

void write_manifest(const RunConfig& config, const std::string& command,
                    const std::filesystem::path& out_dir,
                    const std::vector<std::string>& warnings) {
  json manifest{{"command", command},
                {"version", kVersion},
                {"config", config_to_json(config)},
                {"warnings", warnings}};
  std::ofstream out(out_dir / "run_manifest.json");
  if (!out) throw std::runtime_error("cannot write run manifest in " + out_dir.string());
  out << manifest.dump(2) << "\n";
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
}

std::filesystem::path prepare_out_dir(const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir))
    throw std::runtime_error("output directory " + out_dir.string() + " is not writable");
  return out_dir;
}

struct TimeSeriesBundle {
  ObservableSeries kicked, free, markov;
};

TimeSeriesBundle compute_time_series(const RunConfig& config, const BathSpec& bath) {
  const double temperature = config.temperatures.front();
  const OccupationVector occ =
      build_occupations(bath, temperature, config.zero_mode_policy, config.constants);

  KickSchedule schedule = make_schedule(config.cycle_time, config.kick_fraction,
                                        cycles_within(config.total_time, config.cycle_time));
  TimeSeriesBundle bundle;
  bundle.kicked = kicked_series(bath, schedule, occ, config.cycle_order);
  bundle.free = free_series(bath, bundle.kicked.times, occ);
  const double n0 = temperature > 0.0
                        ? bose_occupation(bath.omega0, temperature, config.constants)
                        : 0.0;
  bundle.markov = markov_series(bundle.kicked.times, bath.gamma, n0, temperature);
  return bundle;
}

void write_series_csv(const std::filesystem::path& path, const std::string& column,
                      const TimeSeriesBundle& bundle,
                      const std::vector<double>& kicked, const std::vector<double>& free,
                      const std::vector<double>& markov) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "t_s," << column << "_kicked," << column << "_free," << column << "_markov\n";
  for (std::size_t i = 0; i < bundle.kicked.times.size(); ++i)
    out << csv_number(bundle.kicked.times[i]) << "," << csv_number(kicked[i]) << ","
        << csv_number(free[i]) << "," << csv_number(markov[i]) << "\n";
}

}  // namespace

void run_heating(const RunConfig& config, const std::filesystem::path& out_dir) {
  prepare_out_dir(out_dir);
  const BathSpec bath = config_bath(config);
  const TimeSeriesBundle bundle = compute_time_series(config, bath);

  write_series_csv(out_dir / "heating.csv", "nu", bundle, bundle.kicked.nu, bundle.free.nu,
                   bundle.markov.nu);

  LineChart chart("Mean vibrational number vs time", "t [s]", "nu");
  chart.add_series("kicked", bundle.kicked.times, bundle.kicked.nu);
  chart.add_series("free", bundle.free.times, bundle.free.nu);
  chart.add_series("markov", bundle.markov.times, bundle.markov.nu);
  chart.write(out_dir / "heating.svg");

  write_manifest(config, "heating", out_dir,
                 horizon_warnings(config, bath, bundle.kicked.times.back()));
}

void run_decoherence(const RunConfig& config, const std::filesystem::path& out_dir) {
  prepare_out_dir(out_dir);
  const BathSpec bath = config_bath(config);
  (void)config.cat.normalization();  // reject degenerate cat specs up front
  const TimeSeriesBundle bundle = compute_time_series(config, bath);

  write_series_csv(out_dir / "decoherence.csv", "eta", bundle, bundle.kicked.eta,
                   bundle.free.eta, bundle.markov.eta);

  LineChart chart("Fringe visibility vs time", "t [s]", "eta");
  chart.add_series("kicked", bundle.kicked.times, bundle.kicked.eta);
  chart.add_series("free", bundle.free.times, bundle.free.eta);
  chart.add_series("markov", bundle.markov.times, bundle.markov.eta);
  chart.write(out_dir / "decoherence.svg");

  write_manifest(config, "decoherence", out_dir,
                 horizon_warnings(config, bath, bundle.kicked.times.back()));
}

std::vector<SweepPoint> compute_sweep(const RunConfig& config, SweepObservable observable) {
  const BathSpec bath = config_bath(config);
  const SpectralPropagator free_prop(build_generator(bath, 0.0));

  std::vector<double> rescaled_grid;
  for (int i = 0; i < config.sweep.count; ++i) {
    const double f = config.sweep.count == 1
                         ? 0.0
                         : static_cast<double>(i) / (config.sweep.count - 1);
    rescaled_grid.push_back(
        config.sweep.log_spaced
            ? config.sweep.rescaled_min *
                  std::pow(config.sweep.rescaled_max / config.sweep.rescaled_min, f)
            : config.sweep.rescaled_min +
                  f * (config.sweep.rescaled_max - config.sweep.rescaled_min));
  }

  std::vector<OccupationVector> occupations;
  for (double temperature : config.temperatures)
    occupations.push_back(
        build_occupations(bath, temperature, config.zero_mode_policy, config.constants));

  std::vector<SweepPoint> points;
  for (double rescaled : rescaled_grid) {
    const double cycle_time = 2.0 * std::numbers::pi * rescaled / bath.omega_cutoff;
    const int n_cycles = cycles_within(config.total_time, cycle_time);
    const KickSchedule schedule = make_schedule(cycle_time, config.kick_fraction, n_cycles);
    const SpectralPropagator kick_prop(build_generator(bath, schedule.frequency_shift));
    const TransferMatrix cycle =
        cycle_matrix(free_prop, kick_prop, schedule, config.cycle_order);

    Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(cycle.dimension());
    row(0) = 1.0;
    for (int n = 0; n < n_cycles; ++n) row = row * cycle.entries;
    const double elapsed = n_cycles * cycle_time;
    const AmplitudeRow kicked{row.transpose(), elapsed};
    const AmplitudeRow free_row{free_prop.system_row(elapsed), elapsed};

    for (const OccupationVector& occ : occupations) {
      SweepPoint point;
      point.cycle_time = cycle_time;
      point.rescaled = rescaled;
      point.temperature = occ.temperature;
      point.elapsed = elapsed;
      point.n_cycles = n_cycles;
      const double nu_kicked = mean_vibrational_number(kicked, occ);
      const double nu_free = mean_vibrational_number(free_row, occ);
      if (observable == SweepObservable::Heating) {
        point.value = nu_kicked;
        point.free_value = nu_free;
      } else {
        point.value = fringe_visibility(kicked.entries(0), nu_kicked);
        point.free_value = fringe_visibility(free_row.entries(0), nu_free);
      }
      points.push_back(point);
    }
  }

  std::sort(points.begin(), points.end(), [](const SweepPoint& a, const SweepPoint& b) {
    if (a.temperature != b.temperature) return a.temperature < b.temperature;
    return a.cycle_time < b.cycle_time;
  });
  return points;
}

void run_sweep(const RunConfig& config, SweepObservable observable,
               const std::filesystem::path& out_dir) {
  prepare_out_dir(out_dir);
  const BathSpec bath = config_bath(config);
  const std::vector<SweepPoint> points = compute_sweep(config, observable);
  const std::string name =
      observable == SweepObservable::Heating ? "heating" : "decoherence";

  {
    std::ofstream out(out_dir / ("sweep_" + name + ".csv"));
    if (!out) throw std::runtime_error("cannot write sweep CSV in " + out_dir.string());
    out << "Tc_s,wcTc_over_2pi,T_K,value\n";
    for (const SweepPoint& p : points)
      out << csv_number(p.cycle_time) << "," << csv_number(p.rescaled) << ","
          << csv_number(p.temperature) << "," << csv_number(p.value) << "\n";
  }

  const std::string observable_label =
      observable == SweepObservable::Heating ? "nu(1/gamma)" : "eta(1/gamma)";
  LineChart combined("Sweep: " + observable_label +
                         (observable == SweepObservable::Heating ? ", normalized by N(w0)" : ""),
                     "wc*Tc/2pi", observable_label);
  combined.set_log_x(true);
  combined.set_log_y(config.sweep_log_y);

  for (double temperature : config.temperatures) {
    std::vector<double> xs, ys, ys_normalized;
    for (const SweepPoint& p : points) {
      if (p.temperature != temperature) continue;
      xs.push_back(p.rescaled);
      ys.push_back(p.value);
      const double n0 = temperature > 0.0
                            ? bose_occupation(bath.omega0, temperature, config.constants)
                            : 1.0;
      ys_normalized.push_back(observable == SweepObservable::Heating ? p.value / n0 : p.value);
    }
    std::ostringstream label;
    label << "T = " << temperature << " K";
    combined.add_series(label.str(), xs, ys_normalized);

    LineChart single("Sweep: " + observable_label + " at " + label.str(), "wc*Tc/2pi",
                     observable_label);
    single.set_log_x(true);
    single.set_log_y(config.sweep_log_y);
    single.add_series(label.str(), xs, ys);
    std::ostringstream file;
    file << "sweep_" << name << "_T" << temperature << "K.svg";
    single.write(out_dir / file.str());
  }
  combined.write(out_dir / ("sweep_" + name + "_combined.svg"));

  write_manifest(config, "sweep-" + name, out_dir, {});
}

void run_wigner(const RunConfig& config, const std::filesystem::path& out_dir) {
  prepare_out_dir(out_dir);
  const BathSpec bath = config_bath(config);
  const double temperature = config.temperatures.front();
  const OccupationVector occ =
      build_occupations(bath, temperature, config.zero_mode_policy, config.constants);

  const int max_cycles =
      *std::max_element(config.wigner.cycle_counts.begin(), config.wigner.cycle_counts.end());
  const KickSchedule schedule =
      make_schedule(config.cycle_time, config.kick_fraction, max_cycles);
  const TransferMatrix cycle = cycle_matrix(bath, schedule, config.cycle_order);
  const std::vector<AmplitudeRow> rows = stroboscopic_rows(cycle, max_cycles);

  for (int n : config.wigner.cycle_counts) {
    if (n < 0 || n > max_cycles)
      throw std::invalid_argument("run_wigner: invalid cycle count in config");
    const AmplitudeRow& row = rows[static_cast<std::size_t>(n)];
    const double nu = mean_vibrational_number(row, occ);
    const WignerGrid grid = wigner_cat(config.wigner.grid, config.cat, row.entries(0), nu);

    std::ostringstream base;
    base << "wigner_N" << n;
    {
      std::ofstream out(out_dir / (base.str() + ".csv"));
      if (!out) throw std::runtime_error("cannot write Wigner CSV in " + out_dir.string());
      out << "# re_min=" << csv_number(grid.spec.re_min)
          << ",re_max=" << csv_number(grid.spec.re_max)
          << ",im_min=" << csv_number(grid.spec.im_min)
          << ",im_max=" << csv_number(grid.spec.im_max)
          << ",resolution=" << grid.spec.resolution << ",cycles=" << n << "\n";
      for (int i = 0; i < grid.spec.resolution; ++i) {
        for (int j = 0; j < grid.spec.resolution; ++j) {
          if (j > 0) out << ",";
          out << csv_number(grid.values(i, j));
        }
        out << "\n";
      }
    }
    std::ostringstream title;
    title << "Wigner function after " << n << " cycles";
    write_heatmap_svg(out_dir / (base.str() + ".svg"), grid, title.str());
  }

  write_manifest(config, "wigner", out_dir,
                 horizon_warnings(config, bath, max_cycles * config.cycle_time));
}

int run_validate(const RunConfig& config) {
  const BathSpec bath = config_bath(config);
  const std::vector<OracleReport> reports = run_validation_suite(bath, config.constants);
  int failures = 0;
  for (const OracleReport& report : reports) {
    std::printf("%s %-28s max_err=%.3e tol=%.3e  (%s)\n", report.passed ? "PASS" : "FAIL",
                report.name.c_str(), report.max_abs_error, report.tolerance,
                report.instance.c_str());
    if (!report.passed) ++failures;
  }
  return failures;
}

}  // namespace pkick
