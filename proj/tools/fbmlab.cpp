// fbmlab: constants, simulations, parameter sweeps and the acceptance suite for the
// two-front competition model.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "fbm/config.hpp"
#include "fbm/report.hpp"
#include "fbm/semiwave.hpp"
#include "fbm/verify.hpp"

namespace fs = std::filesystem;
using namespace fbm;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string preset;
  std::string out_dir;
  std::vector<std::string> overrides;  // NAME=VALUE applied to [model]
  int jobs = 1;
};

RunConfig resolve(const CommonArgs& args) {
  RunConfig config;
  if (!args.config_path.empty()) {
    config = load_config(args.config_path);
    if (!args.preset.empty() && regime_from_string(args.preset) != config.scenario.regime) {
      throw Error(ErrorKind::InvalidConfig, "--preset disagrees with the preset in " + args.config_path);
    }
  } else {
    config = config_for_preset(args.preset.empty() ? Regime::weak_strong_A2 : regime_from_string(args.preset));
  }
  for (const std::string& item : args.overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::InvalidConfig, "--set expects NAME=VALUE, got " + item);
    const std::string name = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    try {
      if (name == "N") {
        config.scenario.params.N = std::stoi(value);
      } else {
        param_by_name(config.scenario.params, name) = std::stod(value);
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::InvalidConfig, "--set " + name + ": not a number: " + value);
    }
  }
  if (!args.out_dir.empty()) config.output.dir = args.out_dir;
  return config;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int cmd_constants(const CommonArgs& args) {
  const RunConfig config = resolve(args);
  const std::string text = dump(constants_report(config.scenario.params));
  std::cout << text;
  if (!args.out_dir.empty()) write_file(fs::path(config.output.dir) / "constants.json", text);
  return 0;
}

Trajectory simulate(const ScenarioSpec& spec) {
  switch (spec.regime) {
    case Regime::problem_Q: return run_Q(spec.params, build_Q_data(spec), spec.numerics);
    case Regime::single_species: return run_P(spec.params, build_initial_state(spec), spec.numerics);
    default: return run_P(spec.params, build_initial_data(spec), spec.numerics);
  }
}

/// Runs one configuration and writes everything it asks for under `dir`.
void simulate_into(const RunConfig& config, const fs::path& dir) {
  const ScenarioSpec& spec = config.scenario;
  spec.params.validate();
  spec.numerics.validate();
  write_file(dir / "config.ini", to_text(config));
  const Trajectory traj = simulate(spec);

  if (config.output.fronts) {
    std::ostringstream csv;
    write_fronts_csv(csv, traj);
    write_file(dir / "fronts.csv", csv.str());
  }
  if (config.output.snapshots) {
    for (size_t i = 0; i < traj.snapshots.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "snapshot_%05zu.csv", i);
      std::ostringstream csv;
      write_snapshot_csv(csv, traj.snapshots[i]);
      write_file(dir / "snapshots" / name, csv.str());
    }
  }
  if (!config.output.reports) return;

  Json speeds = Json::array();
  Json segregation = nullptr;
  if (spec.params.weak_strong()) {
    const double c = compute_c_star(spec.params);
    const double s = compute_s_star(1.0, 1.0, 1.0, spec.params.mu2);
    auto speed = [&](Species species, double predicted) {
      try {
        speeds.push_back(to_json(speed_report(traj, species, predicted)));
      } catch (const Error& e) {
        speeds.push_back({{"species", to_string(species)}, {"predicted", predicted}, {"error", e.what()}});
      }
    };
    speed(Species::U, c);
    if (traj.problem == Problem::TwoFronts) speed(Species::V, s);
    if (traj.problem == Problem::TwoFronts) {
      try {
        segregation = to_json(segregation_metrics(traj.snapshots.back(), c, s));
      } catch (const Error& e) {
        segregation = {{"error", e.what()}};
      }
    }
  }
  write_file(dir / "speed_report.json", dump(speeds));
  write_file(dir / "segregation.json", dump(segregation));
  write_file(dir / "outcome.json", dump(to_json(classify_outcome(traj))));
}

int cmd_simulate(const CommonArgs& args) {
  const RunConfig config = resolve(args);
  simulate_into(config, config.output.dir);
  std::cout << "wrote " << config.output.dir << "\n";
  return 0;
}

int cmd_sweep(const CommonArgs& args, const std::string& param, const std::vector<double>& values) {
  RunConfig config = resolve(args);
  if (!param.empty()) config.sweep.param = param;
  if (!values.empty()) config.sweep.values = values;
  if (config.sweep.values.empty()) throw Error(ErrorKind::InvalidConfig, "sweep needs at least one value");

  const size_t n = config.sweep.values.size();
  std::vector<Json> rows(n);
  std::vector<bool> ok(n, true);
  auto task = [&](size_t i) {
    RunConfig point = config;
    param_by_name(point.scenario.params, config.sweep.param) = config.sweep.values[i];
    Json row{{"param", config.sweep.param}, {"value", config.sweep.values[i]}};
    try {
      row["constants"] = constants_report(point.scenario.params);
      if (config.sweep.simulate) {
        char name[32];
        std::snprintf(name, sizeof(name), "run_%03zu", i);
        simulate_into(point, fs::path(config.output.dir) / name);
        row["run_dir"] = name;
      }
    } catch (const std::exception& e) {
      row["error"] = e.what();
      ok[i] = false;
    }
    rows[i] = row;
  };

  const size_t jobs = std::max<size_t>(1, std::min<size_t>(args.jobs, n));
  for (size_t start = 0; start < n; start += jobs) {
    std::vector<std::future<void>> batch;
    for (size_t i = start; i < std::min(n, start + jobs); ++i) batch.push_back(std::async(std::launch::async, task, i));
    for (auto& f : batch) f.get();
  }

  Json all = Json::array();
  std::ostringstream csv;
  csv << config.sweep.param << ",c_star,s_star,margin,regime\n";
  for (size_t i = 0; i < n; ++i) {
    all.push_back(rows[i]);
    const Json& c = rows[i].contains("constants") ? rows[i]["constants"] : Json::object();
    auto field = [&](const char* key) {
      return c.contains(key) && c[key].is_number() ? c[key].dump() : std::string();
    };
    csv << rows[i]["value"].dump() << ',' << field("c_star") << ',' << field("s_star") << ','
        << field("margin") << ',' << (c.contains("regime") ? c["regime"].get<std::string>() : "error") << '\n';
  }
  write_file(fs::path(config.output.dir) / "sweep.json", dump(all));
  write_file(fs::path(config.output.dir) / "sweep.csv", csv.str());
  std::cout << csv.str();
  return std::all_of(ok.begin(), ok.end(), [](bool b) { return b; }) ? 0 : 1;
}

int cmd_verify(const CommonArgs& args, const std::string& level, std::optional<double> r_star) {
  VerifyOptions options;
  options.level = level == "full" ? VerifyLevel::Full : VerifyLevel::Fast;
  options.jobs = args.jobs;
  options.r_star_override = r_star;
  const VerifyReport report = run_verify(options);
  std::cout << report.table();
  if (!args.out_dir.empty()) write_file(fs::path(args.out_dir) / "verify.json", dump(report.to_json()));
  std::cout << (report.all_passed() ? "all criteria passed\n" : "some criteria failed\n");
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fbmlab: spreading speeds and simulations for a two-front competition model"};
  app.require_subcommand(1);
  CommonArgs args;
  args.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", args.config_path, "INI configuration file")->check(CLI::ExistingFile);
    sub->add_option("--preset", args.preset, "named scenario preset");
    sub->add_option("--out", args.out_dir, "output directory");
    sub->add_option("--set", args.overrides, "override a model parameter, NAME=VALUE");
  };

  CLI::App* constants = app.add_subcommand("constants", "compute c*, s*, R* and the regime");
  add_common(constants);

  CLI::App* simulate = app.add_subcommand("simulate", "run one scenario and write CSV and JSON");
  add_common(simulate);

  std::string sweep_param;
  std::vector<double> sweep_values;
  CLI::App* sweep = app.add_subcommand("sweep", "constants (and optionally runs) over a parameter list");
  add_common(sweep);
  sweep->add_option("--param", sweep_param, "parameter to vary");
  sweep->add_option("--values", sweep_values, "values to visit");
  sweep->add_option("--jobs", args.jobs, "concurrent points")->check(CLI::PositiveNumber);

  std::string level = "fast";
  std::optional<double> r_star;
  CLI::App* verify = app.add_subcommand("verify", "run the acceptance criteria");
  verify->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  verify->add_option("--jobs", args.jobs, "concurrent PDE runs")->check(CLI::PositiveNumber);
  verify->add_option("--out", args.out_dir, "directory for verify.json");
  verify->add_option("--inject-r-star", r_star, "replace computed R* (checks that row 1 fails)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*constants) return cmd_constants(args);
    if (*simulate) return cmd_simulate(args);
    if (*sweep) return cmd_sweep(args, sweep_param, sweep_values);
    if (*verify) return cmd_verify(args, level, r_star);
  } catch (const Error& e) {
    std::cerr << "fbmlab: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fbmlab: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
