#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "btc/metrics.hpp"
#include "btc/simulation.hpp"

namespace btc {

/// Command-line overrides; take precedence over scenario-file fields.
struct Overrides {
  std::optional<double> dt;
  std::optional<double> horizon;
  std::optional<std::string> controller;
  std::optional<std::uint64_t> seed;
};

/// Scenario file contents after schema checks and defaulting, before
/// semantic validation. Indices are 0-based here; the file format is
/// 1-based.
struct ScenarioInput {
  std::string name;
  std::uint64_t seed = 0;
  double horizon_hours = 0.0;
  double dt_hours = 0.01;
  int controller_substeps = 1;

  std::vector<Zone> zones;
  Matrix conductance;

  PiecewiseLinear ambient;
  std::vector<PiecewiseLinear> setpoints;
  std::vector<PiecewiseLinear> disturbances;  // empty = none

  std::vector<double> lower;  // per strategy, slack included
  std::vector<double> upper;
  double total = 0.0;

  std::vector<Edge> edges;  // over k+1 nodes, slack last

  ControllerSpec controller;

  std::vector<double> initial_temperatures;
  std::vector<double> initial_allocation;

  std::string fingerprint;

  int rooms() const;
};

/// Schema-level parse: structure, types, cross-reference sizes.
/// Throws ConfigError with the offending field path.
ScenarioInput parse_scenario(const nlohmann::json& config, const std::string& name_hint);

/// Constructs the validated Scenario (may throw DomainError from the
/// domain types, e.g. sign conditions or a disconnected graph).
Scenario build_scenario(const ScenarioInput& input);

/// Reads, applies overrides, fingerprints, parses, and builds.
Scenario load_scenario(const std::filesystem::path& file, const Overrides& overrides = {});

/// As load_scenario but stops at the schema-checked input.
ScenarioInput load_scenario_input(const std::filesystem::path& file,
                                  const Overrides& overrides = {});

/// Hash of the scenario document with the controller section removed;
/// identifies "same scenario, any controller" for comparisons.
std::string scenario_fingerprint(const nlohmann::json& config);

struct ValidationCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Static run-precondition checks (connectivity, mass and interiority
/// of the initial allocation, sign conditions, Euler stability
/// heuristic). No simulation is executed.
std::vector<ValidationCheck> validate_input(const ScenarioInput& input);

/// Trace file: delimited text, one row per step, fixed header
/// time,t_*,tset_*,u_*,u_slack,f_*,residual,objective. Numbers use
/// shortest round-trip formatting, so identical runs produce identical
/// bytes.
void write_trace_csv(const Trace& trace, const std::filesystem::path& file);

/// Plot-ready extracts: temperatures.csv, actuators.csv, payoffs.csv,
/// plus a small plotting-script stub.
void write_plot_data(const Trace& trace, const std::filesystem::path& directory);

nlohmann::json report_to_json(const RunReport& report);
nlohmann::json diagnostics_to_json(const EquilibriumDiagnostics& diag);
nlohmann::json comparison_to_json(const Comparison& comparison);

/// summary.json with run status, metrics, and diagnostics.
void write_summary_json(const RunReport& report, const EquilibriumDiagnostics& diag,
                        const RunStatus& status, std::uint64_t seed,
                        const std::filesystem::path& file);

/// Renders the comparison as an aligned text table.
std::string comparison_table(const Comparison& comparison);

}  // namespace btc
