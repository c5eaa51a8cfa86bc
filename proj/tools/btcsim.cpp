// btcsim: scenario-driven building temperature control runs with
// escort-dynamics and interior-point power allocation.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "btc/errors.hpp"
#include "btc/metrics.hpp"
#include "btc/scenario_io.hpp"
#include "btc/simulation.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct CommonOptions {
  std::string scenario_path;
  std::string output_dir;
  std::optional<double> dt;
  std::optional<double> horizon;
  std::optional<std::string> controller;
  std::optional<std::uint64_t> seed;

  btc::Overrides overrides() const { return {dt, horizon, controller, seed}; }
};

void add_override_flags(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--dt", opts.dt, "Override run.dt (hours)");
  cmd->add_option("--horizon", opts.horizon, "Override run.horizon (hours)");
  cmd->add_option("--seed", opts.seed, "Override run.seed");
}

/// Runs one scenario and writes trace, plot data, and summary into dir.
btc::RunReport run_and_write(const btc::Scenario& scenario, const fs::path& dir) {
  fs::create_directories(dir);
  const auto trace = btc::run(scenario);
  const auto report = btc::analyze(trace, scenario.geometry);
  const auto diag = btc::diagnostics(trace, scenario.geometry, 0.1);
  btc::write_trace_csv(trace, dir / "trace.csv");
  btc::write_plot_data(trace, dir);
  btc::write_summary_json(report, diag, trace.status, scenario.seed, dir / "summary.json");
  if (!trace.status.completed) {
    std::cerr << "run aborted at step " << trace.status.abort_step << ": " << trace.status.reason
              << "\n";
  }
  return report;
}

int cmd_simulate(const CommonOptions& opts) {
  const auto scenario = btc::load_scenario(opts.scenario_path, opts.overrides());
  const auto report = run_and_write(scenario, opts.output_dir);
  std::cout << "scenario:   " << report.scenario_name << "\n"
            << "controller: " << btc::to_string(report.controller) << "\n"
            << "steps:      " << static_cast<long>(report.horizon_hours / report.dt + 0.5) << "\n"
            << "rmse:       " << report.rmse.aggregate << " degC\n"
            << "residual:   " << report.final_residual << " degC (final)\n"
            << "violations: " << report.constraint_violations << "\n"
            << "artifacts:  " << opts.output_dir << "\n";
  return report.completed ? kExitOk : kExitRuntime;
}

int cmd_compare(const CommonOptions& opts) {
  bool all_completed = true;
  std::vector<btc::RunReport> reports;
  for (const std::string kind : {"ded", "dip"}) {
    auto overrides = opts.overrides();
    overrides.controller = kind;
    const auto scenario = btc::load_scenario(opts.scenario_path, overrides);
    const auto report = run_and_write(scenario, fs::path(opts.output_dir) / kind);
    all_completed = all_completed && report.completed;
    reports.push_back(report);
  }
  const auto comparison = btc::compare(reports[0], reports[1]);
  fs::create_directories(opts.output_dir);
  {
    std::ofstream out(fs::path(opts.output_dir) / "comparison.json", std::ios::binary);
    out << btc::comparison_to_json(comparison).dump(2) << '\n';
  }
  std::cout << btc::comparison_table(comparison);
  return all_completed ? kExitOk : kExitRuntime;
}

int cmd_validate(const CommonOptions& opts) {
  const auto input = btc::load_scenario_input(opts.scenario_path, opts.overrides());
  const auto checks = btc::validate_input(input);
  bool all_pass = true;
  for (const auto& check : checks) {
    all_pass = all_pass && check.pass;
    std::cout << (check.pass ? "PASS" : "FAIL") << "  " << check.name << "  (" << check.detail
              << ")\n";
  }
  std::cout << (all_pass ? "scenario is runnable\n" : "scenario failed validation\n");
  return all_pass ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Escort-dynamics building temperature control simulator"};
  app.require_subcommand(1);

  CommonOptions sim_opts;
  auto* simulate = app.add_subcommand("simulate", "Run one scenario and write artifacts");
  simulate->add_option("scenario", sim_opts.scenario_path, "Scenario JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  simulate->add_option("-o,--output", sim_opts.output_dir, "Output directory")->required();
  simulate->add_option("--controller", sim_opts.controller,
                       "Override controller.kind (ded, ed, dip)");
  add_override_flags(simulate, sim_opts);

  CommonOptions cmp_opts;
  auto* compare = app.add_subcommand("compare", "Run the scenario once per controller (ded, dip)");
  compare->add_option("scenario", cmp_opts.scenario_path, "Scenario JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  compare->add_option("-o,--output", cmp_opts.output_dir, "Output directory")->required();
  add_override_flags(compare, cmp_opts);

  CommonOptions val_opts;
  auto* validate = app.add_subcommand("validate", "Check run preconditions without simulating");
  validate->add_option("scenario", val_opts.scenario_path, "Scenario JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  validate->add_option("--controller", val_opts.controller,
                       "Override controller.kind (ded, ed, dip)");
  add_override_flags(validate, val_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return cmd_simulate(sim_opts);
    if (compare->parsed()) return cmd_compare(cmp_opts);
    if (validate->parsed()) return cmd_validate(val_opts);
  } catch (const btc::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const btc::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
