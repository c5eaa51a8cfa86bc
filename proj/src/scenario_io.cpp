#include "btc/scenario_io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "btc/errors.hpp"

namespace btc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("scenario field '" + path + "': " + what);
}

const json* opt_member(const json& obj, const char* key) {
  if (!obj.is_object()) return nullptr;
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& req_member(const json& obj, const char* key, const std::string& parent) {
  const std::string path = parent.empty() ? key : parent + "." + key;
  const json* m = opt_member(obj, key);
  if (!m) throw ConfigError("scenario field '" + path + "' is required");
  return *m;
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

double opt_number(const json& obj, const char* key, const std::string& parent, double fallback) {
  const json* m = opt_member(obj, key);
  return m ? as_number(*m, parent + "." + key) : fallback;
}

PiecewiseLinear parse_profile(const json& j, const std::string& path) {
  if (j.is_number()) return PiecewiseLinear::constant(j.get<double>());
  if (!j.is_array() || j.empty()) fail(path, "expected a number or a [time, value] breakpoint list");
  std::vector<ProfilePoint> points;
  points.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& p = j[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      fail(path, "breakpoint " + std::to_string(i) + " must be a [time, value] pair");
    points.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  try {
    return PiecewiseLinear(std::move(points));
  } catch (const DomainError& e) {
    fail(path, e.what());
  }
}

std::vector<double> scalar_or_array(const json& j, std::size_t count, const std::string& path) {
  if (j.is_number()) return std::vector<double>(count, j.get<double>());
  if (!j.is_array()) fail(path, "expected a number or an array");
  if (j.size() != count)
    fail(path, "expected " + std::to_string(count) + " entries, got " + std::to_string(j.size()));
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = as_number(j[i], path + "[" + std::to_string(i) + "]");
  return out;
}

void parse_building(const json& b, ScenarioInput& in) {
  const std::string layout =
      opt_member(b, "layout") ? as_string(*opt_member(b, "layout"), "building.layout") : "corridor";
  if (layout == "corridor") {
    const int rooms = as_int(req_member(b, "rooms", "building"), "building.rooms");
    if (rooms < 1) fail("building.rooms", "need at least one room");
    BuildingNetwork::CorridorParams params;
    params.room_capacitance = opt_number(b, "room_capacitance", "building", params.room_capacitance);
    params.wall_capacitance = opt_number(b, "wall_capacitance", "building", params.wall_capacitance);
    params.room_wall_conductance =
        opt_number(b, "room_wall_conductance", "building", params.room_wall_conductance);
    params.wall_ambient_conductance =
        opt_number(b, "wall_ambient_conductance", "building", params.wall_ambient_conductance);
    const auto net = BuildingNetwork::corridor(rooms, params);
    in.zones = net.zones();
    in.conductance = net.conductance();
  } else if (layout == "custom") {
    const json& zones = req_member(b, "zones", "building");
    if (!zones.is_array() || zones.empty()) fail("building.zones", "expected a nonempty array");
    for (std::size_t i = 0; i < zones.size(); ++i) {
      const std::string path = "building.zones[" + std::to_string(i) + "]";
      const json& z = zones[i];
      if (!z.is_object()) fail(path, "expected an object");
      Zone zone;
      const std::string kind = as_string(req_member(z, "kind", path), path + ".kind");
      if (kind == "room") zone.kind = ZoneKind::Room;
      else if (kind == "wall") zone.kind = ZoneKind::Wall;
      else fail(path + ".kind", "expected 'room' or 'wall'");
      zone.capacitance = as_number(req_member(z, "capacitance", path), path + ".capacitance");
      zone.ambient_conductance = opt_number(z, "ambient_conductance", path, 0.0);
      in.zones.push_back(zone);
    }
    const json& cond = req_member(b, "conductance", "building");
    const std::size_t n = in.zones.size();
    if (!cond.is_array() || cond.size() != n)
      fail("building.conductance", "expected " + std::to_string(n) + " rows");
    in.conductance = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string path = "building.conductance[" + std::to_string(i) + "]";
      if (!cond[i].is_array() || cond[i].size() != n)
        fail(path, "expected " + std::to_string(n) + " entries");
      for (std::size_t j = 0; j < n; ++j)
        in.conductance(i, j) = as_number(cond[i][j], path + "[" + std::to_string(j) + "]");
    }
  } else {
    fail("building.layout", "expected 'corridor' or 'custom'");
  }
}

void parse_profiles(const json& p, ScenarioInput& in) {
  const int k = in.rooms();
  in.ambient = parse_profile(req_member(p, "ambient", "profiles"), "profiles.ambient");

  const json& sp = req_member(p, "setpoints", "profiles");
  if (sp.is_array() && !sp.empty() && (sp[0].is_array() || sp[0].is_number())) {
    // one profile per room
    if (static_cast<int>(sp.size()) != k)
      fail("profiles.setpoints", "expected one profile per room (" + std::to_string(k) + ")");
    for (std::size_t i = 0; i < sp.size(); ++i)
      in.setpoints.push_back(parse_profile(sp[i], "profiles.setpoints[" + std::to_string(i) + "]"));
  } else if (sp.is_object() && opt_member(sp, "groups")) {
    const json& groups = *opt_member(sp, "groups");
    if (!groups.is_array() || groups.empty()) fail("profiles.setpoints.groups", "expected a nonempty array");
    in.setpoints.assign(static_cast<std::size_t>(k), PiecewiseLinear());
    std::vector<char> covered(static_cast<std::size_t>(k), 0);
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      const std::string path = "profiles.setpoints.groups[" + std::to_string(gi) + "]";
      const json& g = groups[gi];
      const json& range = req_member(g, "rooms", path);
      if (!range.is_array() || range.size() != 2)
        fail(path + ".rooms", "expected an inclusive 1-based [first, last] pair");
      const int first = as_int(range[0], path + ".rooms[0]");
      const int last = as_int(range[1], path + ".rooms[1]");
      if (first < 1 || last > k || first > last)
        fail(path + ".rooms", "range out of bounds for " + std::to_string(k) + " rooms");
      const auto profile = parse_profile(req_member(g, "profile", path), path + ".profile");
      for (int r = first; r <= last; ++r) {
        if (covered[static_cast<std::size_t>(r - 1)])
          fail(path + ".rooms", "room " + std::to_string(r) + " covered twice");
        covered[static_cast<std::size_t>(r - 1)] = 1;
        in.setpoints[static_cast<std::size_t>(r - 1)] = profile;
      }
    }
    for (int r = 0; r < k; ++r)
      if (!covered[static_cast<std::size_t>(r)])
        fail("profiles.setpoints.groups", "room " + std::to_string(r + 1) + " has no setpoint");
  } else {
    fail("profiles.setpoints", "expected a per-room array or a {groups: [...]} object");
  }

  if (const json* dist = opt_member(p, "disturbances"); dist && !dist->is_null()) {
    if (!dist->is_array()) fail("profiles.disturbances", "expected an array");
    if (!dist->empty()) {
      const auto n = in.zones.size();
      in.disturbances.assign(n, PiecewiseLinear());  // defaults to zero
      for (std::size_t i = 0; i < dist->size(); ++i) {
        const std::string path = "profiles.disturbances[" + std::to_string(i) + "]";
        const json& d = (*dist)[i];
        const int zone = as_int(req_member(d, "zone", path), path + ".zone");
        if (zone < 1 || static_cast<std::size_t>(zone) > n)
          fail(path + ".zone", "zone id out of range (1-based)");
        in.disturbances[static_cast<std::size_t>(zone - 1)] =
            parse_profile(req_member(d, "profile", path), path + ".profile");
      }
    }
  }
}

void parse_bounds(const json& b, ScenarioInput& in) {
  const auto k = static_cast<std::size_t>(in.rooms());
  in.total = as_number(req_member(b, "total", "bounds"), "bounds.total");
  std::vector<double> lower(k, 0.0);
  if (const json* lo = opt_member(b, "lower")) lower = scalar_or_array(*lo, k, "bounds.lower");
  auto upper = scalar_or_array(req_member(b, "upper", "bounds"), k, "bounds.upper");
  // slack strategy: absorbs unused power, bounded by the full budget
  lower.push_back(0.0);
  upper.push_back(in.total);
  in.lower = std::move(lower);
  in.upper = std::move(upper);
}

void parse_graph(const json& g, ScenarioInput& in) {
  const int k = in.rooms();
  const int n = k + 1;
  const int slack = k;  // 0-based index of the slack node
  const std::string topology =
      opt_member(g, "topology") ? as_string(*opt_member(g, "topology"), "graph.topology") : "ring";

  auto parse_slack_links = [&]() {
    std::vector<int> rooms;
    const json* links = opt_member(g, "slack_links");
    if (!links) {
      rooms.push_back(0);
      return rooms;
    }
    if (links->is_string() && links->get<std::string>() == "all") {
      for (int i = 0; i < k; ++i) rooms.push_back(i);
      return rooms;
    }
    if (!links->is_array() || links->empty())
      fail("graph.slack_links", "expected 'all' or a nonempty array of 1-based room ids");
    for (std::size_t i = 0; i < links->size(); ++i) {
      const int room = as_int((*links)[i], "graph.slack_links[" + std::to_string(i) + "]");
      if (room < 1 || room > k) fail("graph.slack_links", "room id out of range");
      rooms.push_back(room - 1);
    }
    return rooms;
  };

  if (topology == "ring" || topology == "path") {
    for (int i = 0; i + 1 < k; ++i) in.edges.emplace_back(i, i + 1);
    if (topology == "ring" && k > 2) in.edges.emplace_back(0, k - 1);
    for (int room : parse_slack_links()) in.edges.emplace_back(room, slack);
  } else if (topology == "complete") {
    if (opt_member(g, "slack_links"))
      fail("graph.slack_links", "not applicable to the complete topology");
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) in.edges.emplace_back(i, j);
  } else if (topology == "custom") {
    if (opt_member(g, "slack_links"))
      fail("graph.slack_links", "not applicable to a custom edge list");
    const json& edges = req_member(g, "edges", "graph");
    if (!edges.is_array() || edges.empty()) fail("graph.edges", "expected a nonempty array");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const std::string path = "graph.edges[" + std::to_string(i) + "]";
      const json& e = edges[i];
      if (!e.is_array() || e.size() != 2) fail(path, "expected a 1-based [i, j] pair");
      const int a = as_int(e[0], path + "[0]");
      const int b = as_int(e[1], path + "[1]");
      if (a < 1 || b < 1 || a > n || b > n)
        fail(path, "node id out of range (rooms are 1.." + std::to_string(k) + ", slack is " +
                       std::to_string(n) + ")");
      if (a == b) fail(path, "self-loops are not allowed");
      in.edges.emplace_back(a - 1, b - 1);
    }
  } else {
    fail("graph.topology", "expected 'ring', 'path', 'complete', or 'custom'");
  }
}

void parse_controller(const json& config, ScenarioInput& in) {
  const json* c = opt_member(config, "controller");
  std::string kind = "ded";
  if (c) {
    if (const json* m = opt_member(*c, "kind")) kind = as_string(*m, "controller.kind");
    in.controller.gain = opt_number(*c, "gain", "controller", in.controller.gain);
    in.controller.epsilon = opt_number(*c, "epsilon", "controller", in.controller.epsilon);
  }
  try {
    in.controller.kind = controller_kind_from_string(kind);
  } catch (const DomainError& e) {
    fail("controller.kind", e.what());
  }
  if (c) {
    if (const json* per_kind = opt_member(*c, "per_kind")) {
      if (!per_kind->is_object()) fail("controller.per_kind", "expected an object");
      if (const json* mine = opt_member(*per_kind, kind.c_str())) {
        const std::string path = "controller.per_kind." + kind;
        in.controller.gain = opt_number(*mine, "gain", path, in.controller.gain);
        in.controller.epsilon = opt_number(*mine, "epsilon", path, in.controller.epsilon);
      }
    }
  }
}

void parse_run(const json& r, ScenarioInput& in) {
  in.horizon_hours = as_number(req_member(r, "horizon", "run"), "run.horizon");
  if (in.horizon_hours < 0.0) fail("run.horizon", "must be nonnegative");
  in.dt_hours = as_number(req_member(r, "dt", "run"), "run.dt");
  if (!(in.dt_hours > 0.0)) fail("run.dt", "must be positive");
  if (const json* m = opt_member(r, "controller_substeps")) {
    in.controller_substeps = as_int(*m, "run.controller_substeps");
    if (in.controller_substeps < 1) fail("run.controller_substeps", "must be at least 1");
  }
  if (const json* m = opt_member(r, "seed")) {
    if (!m->is_number_integer() || (m->is_number_integer() && m->get<std::int64_t>() < 0))
      fail("run.seed", "expected a nonnegative integer");
    in.seed = m->get<std::uint64_t>();
  }

  const json& t0 = req_member(r, "initial_temperature", "run");
  if (t0.is_object()) {
    const double rooms_t0 =
        as_number(req_member(t0, "rooms", "run.initial_temperature"), "run.initial_temperature.rooms");
    const double walls_t0 =
        as_number(req_member(t0, "walls", "run.initial_temperature"), "run.initial_temperature.walls");
    for (const Zone& z : in.zones)
      in.initial_temperatures.push_back(z.kind == ZoneKind::Room ? rooms_t0 : walls_t0);
  } else {
    in.initial_temperatures = scalar_or_array(t0, in.zones.size(), "run.initial_temperature");
  }

  const auto k = static_cast<std::size_t>(in.rooms());
  const auto n = k + 1;
  const json& x0 = req_member(r, "initial_allocation", "run");
  if (x0.is_string()) {
    if (x0.get<std::string>() != "uniform")
      fail("run.initial_allocation", "unknown preset (expected 'uniform')");
    in.initial_allocation.assign(n, in.total / static_cast<double>(n));
  } else if (x0.is_number()) {
    // fixed per-room output; the slack absorbs the remainder
    const double per_room = x0.get<double>();
    in.initial_allocation.assign(k, per_room);
    in.initial_allocation.push_back(in.total - per_room * static_cast<double>(k));
  } else if (x0.is_array()) {
    if (x0.size() != n)
      fail("run.initial_allocation",
           "expected " + std::to_string(n) + " entries (rooms plus slack)");
    for (std::size_t i = 0; i < n; ++i)
      in.initial_allocation.push_back(as_number(x0[i], "run.initial_allocation[" + std::to_string(i) + "]"));
  } else {
    fail("run.initial_allocation", "expected 'uniform', a per-room number, or an array");
  }
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void append_number(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

std::ofstream open_output(const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file " + file.string());
  return out;
}

constexpr const char* kPlotScript = R"(#!/usr/bin/env python3
"""Render the run artifacts written next to this script.

Reads temperatures.csv, actuators.csv, and payoffs.csv and writes one
PNG per figure family. Requires matplotlib.
"""
import csv
import pathlib
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt


def load(path):
    with open(path, newline="") as handle:
        rows = list(csv.reader(handle))
    header, data = rows[0], rows[1:]
    cols = {name: [float(r[i]) for r in data] for i, name in enumerate(header)}
    return header, cols


def plot(path, ylabel):
    header, cols = load(path)
    time = cols[header[0]]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    for name in header[1:]:
        ax.plot(time, cols[name], label=name, linewidth=0.8)
    ax.set_xlabel("time [h]")
    ax.set_ylabel(ylabel)
    if len(header) <= 12:
        ax.legend(fontsize="small")
    out = path.with_suffix(".png")
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print("wrote", out)


def main():
    here = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else __file__).resolve().parent
    plot(here / "temperatures.csv", "temperature [degC]")
    plot(here / "actuators.csv", "actuator output [kWh]")
    plot(here / "payoffs.csv", "payoff [degC]")


if __name__ == "__main__":
    main()
)";

}  // namespace

int ScenarioInput::rooms() const {
  return static_cast<int>(
      std::count_if(zones.begin(), zones.end(), [](const Zone& z) { return z.kind == ZoneKind::Room; }));
}

std::string scenario_fingerprint(const nlohmann::json& config) {
  json stripped = config;
  stripped.erase("controller");
  const std::string canon = stripped.dump();
  std::uint64_t hash = 1469598103934665603ull;  // FNV-1a 64
  for (unsigned char c : canon) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return std::string(buf);
}

ScenarioInput parse_scenario(const nlohmann::json& config, const std::string& name_hint) {
  if (!config.is_object()) throw ConfigError("scenario document must be a JSON object");
  const json& version = req_member(config, "schema_version", "");
  if (!version.is_number_integer() || version.get<int>() != 1)
    fail("schema_version", "expected 1");

  ScenarioInput in;
  in.name = name_hint;
  if (const json* m = opt_member(config, "name")) in.name = as_string(*m, "name");

  parse_building(req_member(config, "building", ""), in);
  parse_profiles(req_member(config, "profiles", ""), in);
  parse_bounds(req_member(config, "bounds", ""), in);
  parse_graph(req_member(config, "graph", ""), in);
  parse_controller(config, in);
  parse_run(req_member(config, "run", ""), in);
  in.fingerprint = scenario_fingerprint(config);
  return in;
}

Scenario build_scenario(const ScenarioInput& in) {
  BuildingNetwork building(in.zones, in.conductance);
  BoundedSimplex geometry(in.lower, in.upper, in.total);
  CommGraph graph = CommGraph::from_edges(geometry.size(), in.edges);
  Scenario scenario{
      .name = in.name,
      .building = std::move(building),
      .environment = {in.ambient, in.setpoints, in.disturbances},
      .geometry = std::move(geometry),
      .graph = std::move(graph),
      .controller = in.controller,
      .horizon_hours = in.horizon_hours,
      .dt_hours = in.dt_hours,
      .controller_substeps = in.controller_substeps,
      .initial_temperatures = in.initial_temperatures,
      .initial_allocation = in.initial_allocation,
      .seed = in.seed,
      .fingerprint = in.fingerprint,
  };
  scenario.validate();
  return scenario;
}

ScenarioInput load_scenario_input(const std::filesystem::path& file, const Overrides& overrides) {
  std::ifstream stream(file);
  if (!stream) throw ConfigError("cannot read scenario file " + file.string());
  json config;
  try {
    config = json::parse(stream);
  } catch (const json::parse_error& e) {
    throw ConfigError("scenario file " + file.string() + " is not valid JSON: " + e.what());
  }
  if (overrides.controller) config["controller"]["kind"] = *overrides.controller;
  if (overrides.dt) config["run"]["dt"] = *overrides.dt;
  if (overrides.horizon) config["run"]["horizon"] = *overrides.horizon;
  if (overrides.seed) config["run"]["seed"] = *overrides.seed;
  return parse_scenario(config, file.stem().string());
}

Scenario load_scenario(const std::filesystem::path& file, const Overrides& overrides) {
  return build_scenario(load_scenario_input(file, overrides));
}

std::vector<ValidationCheck> validate_input(const ScenarioInput& in) {
  std::vector<ValidationCheck> checks;
  auto add = [&](std::string name, bool pass, std::string detail) {
    checks.push_back({std::move(name), pass, std::move(detail)});
  };
  const int k = in.rooms();
  const int n = k + 1;

  {
    const auto missing = unreachable_nodes(n, in.edges);
    std::string detail = "graph over " + std::to_string(n) + " nodes (rooms plus slack)";
    if (!missing.empty()) {
      detail = "unreachable nodes (1-based):";
      for (int v : missing) detail += " " + std::to_string(v + 1);
    }
    add("C1_graph_connected", missing.empty(), detail);
  }
  {
    bool ordered = true;
    std::string detail = "lower < upper for every strategy";
    for (std::size_t i = 0; i < in.lower.size(); ++i) {
      if (in.lower[i] < 0.0 || !(in.lower[i] < in.upper[i])) {
        ordered = false;
        detail = "strategy " + std::to_string(i + 1) + ": bounds [" + format_double(in.lower[i]) +
                 ", " + format_double(in.upper[i]) + "]";
        break;
      }
    }
    add("bounds_ordered", ordered, detail);
  }
  {
    const double lo_sum = std::accumulate(in.lower.begin(), in.lower.end(), 0.0);
    const double sigma_lo = in.total - lo_sum;
    add("sigma_lo_positive", sigma_lo > 0.0,
        "sigma_lo = total - sum(lower) = " + format_double(sigma_lo));
    const double up_sum = std::accumulate(in.upper.begin(), in.upper.end(), 0.0);
    const double sigma_up = in.total - up_sum;
    add("sigma_up_negative", sigma_up < 0.0,
        "sigma_up = total - sum(upper) = " + format_double(sigma_up));
  }
  {
    const double mass =
        std::accumulate(in.initial_allocation.begin(), in.initial_allocation.end(), 0.0);
    const bool pass = std::abs(mass - in.total) <= 1e-9 * std::abs(in.total);
    add("C3_initial_mass", pass,
        "sum x(0) = " + format_double(mass) + ", total = " + format_double(in.total));
  }
  {
    bool interior = static_cast<int>(in.initial_allocation.size()) == n;
    std::string detail = "x(0) strictly inside its box";
    for (std::size_t i = 0; interior && i < in.initial_allocation.size(); ++i) {
      const double v = in.initial_allocation[i];
      if (!(v > in.lower[i] && v < in.upper[i])) {
        interior = false;
        detail = "strategy " + std::to_string(i + 1) + ": x(0) = " + format_double(v) +
                 " not inside (" + format_double(in.lower[i]) + ", " + format_double(in.upper[i]) + ")";
      }
    }
    add("initial_interior", interior, detail);
  }
  {
    bool built = true;
    std::string detail = "zones and conductances form a valid connected network";
    try {
      BuildingNetwork net(in.zones, in.conductance);
      double worst = 0.0;
      for (int i = 0; i < net.zone_count(); ++i) {
        double alpha = net.zone(i).ambient_conductance;
        for (int j = 0; j < net.zone_count(); ++j)
          alpha += net.conductance()(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        worst = std::max(worst, alpha / net.zone(i).capacitance);
      }
      const double ratio = in.dt_hours * worst;
      add("plant_dt_stability", ratio <= 0.5,
          "dt * max(sum alpha / theta) = " + format_double(ratio) + " (heuristic limit 0.5)");
    } catch (const DomainError& e) {
      built = false;
      detail = e.what();
    }
    add("building_valid", built, detail);
  }
  return checks;
}

void write_trace_csv(const Trace& trace, const std::filesystem::path& file) {
  auto out = open_output(file);
  std::string line = "time";
  for (int i = 1; i <= trace.zone_count; ++i) line += ",t_" + std::to_string(i);
  for (int i = 1; i <= trace.room_count; ++i) line += ",tset_" + std::to_string(i);
  for (int i = 1; i <= trace.room_count; ++i) line += ",u_" + std::to_string(i);
  line += ",u_slack";
  for (int i = 1; i <= trace.room_count; ++i) line += ",f_" + std::to_string(i);
  line += ",residual,objective\n";
  out << line;

  for (std::size_t r = 0; r < trace.rows(); ++r) {
    line.clear();
    append_number(line, trace.time[r]);
    for (double v : trace.temperatures_at(r)) {
      line += ',';
      append_number(line, v);
    }
    for (double v : trace.setpoints_at(r)) {
      line += ',';
      append_number(line, v);
    }
    for (double v : trace.allocations_at(r)) {
      line += ',';
      append_number(line, v);
    }
    for (double v : trace.payoffs_at(r)) {
      line += ',';
      append_number(line, v);
    }
    line += ',';
    append_number(line, trace.residual[r]);
    line += ',';
    append_number(line, trace.objective[r]);
    line += '\n';
    out << line;
  }
}

void write_plot_data(const Trace& trace, const std::filesystem::path& directory) {
  const auto k = static_cast<std::size_t>(trace.room_count);
  {
    auto out = open_output(directory / "temperatures.csv");
    std::string line = "time";
    for (std::size_t i = 1; i <= k; ++i) line += ",t_" + std::to_string(i);
    for (std::size_t i = 1; i <= k; ++i) line += ",tset_" + std::to_string(i);
    line += '\n';
    out << line;
    for (std::size_t r = 0; r < trace.rows(); ++r) {
      line.clear();
      append_number(line, trace.time[r]);
      const auto t = trace.temperatures_at(r);
      for (std::size_t i = 0; i < k; ++i) {
        line += ',';
        append_number(line, t[i]);
      }
      for (double v : trace.setpoints_at(r)) {
        line += ',';
        append_number(line, v);
      }
      line += '\n';
      out << line;
    }
  }
  {
    auto out = open_output(directory / "actuators.csv");
    std::string line = "time";
    for (std::size_t i = 1; i <= k; ++i) line += ",u_" + std::to_string(i);
    line += ",u_slack\n";
    out << line;
    for (std::size_t r = 0; r < trace.rows(); ++r) {
      line.clear();
      append_number(line, trace.time[r]);
      for (double v : trace.allocations_at(r)) {
        line += ',';
        append_number(line, v);
      }
      line += '\n';
      out << line;
    }
  }
  {
    auto out = open_output(directory / "payoffs.csv");
    std::string line = "time";
    for (std::size_t i = 1; i <= k; ++i) line += ",f_" + std::to_string(i);
    line += ",residual\n";
    out << line;
    for (std::size_t r = 0; r < trace.rows(); ++r) {
      line.clear();
      append_number(line, trace.time[r]);
      for (double v : trace.payoffs_at(r)) {
        line += ',';
        append_number(line, v);
      }
      line += ',';
      append_number(line, trace.residual[r]);
      line += '\n';
      out << line;
    }
  }
  {
    auto out = open_output(directory / "plot.py");
    out << kPlotScript;
  }
}

nlohmann::json report_to_json(const RunReport& report) {
  json j;
  j["scenario"] = report.scenario_name;
  j["fingerprint"] = report.fingerprint;
  j["controller"] = to_string(report.controller);
  j["completed"] = report.completed;
  j["horizon_hours"] = report.horizon_hours;
  j["dt"] = report.dt;
  j["clamp_events"] = report.clamp_events;
  j["tracking_rmse"] = {{"aggregate", report.rmse.aggregate}, {"per_room", report.rmse.per_room}};
  j["overshoot"] = {{"peak", report.overshoot_peak}, {"per_room", report.overshoot_per_room}};
  json settling;
  if (report.transience.settling_time) settling = *report.transience.settling_time;
  j["transience"] = {{"zero_crossings", report.transience.zero_crossings},
                     {"settling_time", settling},
                     {"band", report.settling_band}};
  j["constraint_violations"] = report.constraint_violations;
  j["energy"] = {{"delivered", report.energy.delivered},
                 {"slack", report.energy.slack},
                 {"per_room", report.energy.per_room}};
  j["steady_state_mean_abs_payoff"] = report.steady_state_mean_abs_payoff;
  j["final_residual"] = report.final_residual;
  return j;
}

nlohmann::json diagnostics_to_json(const EquilibriumDiagnostics& diag) {
  json j;
  j["t_star"] = diag.t_star;
  j["x_star"] = diag.x_star;
  j["f_star"] = diag.f_star;
  j["temperature_error_max"] = diag.temperature_error_max;
  j["allocation_error_max"] = diag.allocation_error_max;
  j["payoff_error_max"] = diag.payoff_error_max;
  j["velocity_max"] = diag.velocity_max;
  j["c3_satisfied"] = diag.c3_satisfied;
  j["rest_point_consistent"] = diag.rest_point_consistent;
  return j;
}

nlohmann::json comparison_to_json(const Comparison& comparison) {
  json rows = json::array();
  for (const auto& row : comparison.rows) {
    json r;
    r["metric"] = row.metric;
    r["a"] = std::isnan(row.a) ? json() : json(row.a);
    r["b"] = std::isnan(row.b) ? json() : json(row.b);
    r["delta"] = std::isnan(row.delta) ? json() : json(row.delta);
    rows.push_back(r);
  }
  return json{{"scenario", comparison.scenario_name},
              {"controller_a", comparison.controller_a},
              {"controller_b", comparison.controller_b},
              {"rows", rows}};
}

void write_summary_json(const RunReport& report, const EquilibriumDiagnostics& diag,
                        const RunStatus& status, std::uint64_t seed,
                        const std::filesystem::path& file) {
  json j;
  j["report"] = report_to_json(report);
  j["diagnostics"] = diagnostics_to_json(diag);
  j["status"] = {{"completed", status.completed},
                 {"abort_step", status.abort_step},
                 {"abort_component", status.abort_component},
                 {"reason", status.reason}};
  j["seed"] = seed;
  auto out = open_output(file);
  out << j.dump(2) << '\n';
}

std::string comparison_table(const Comparison& comparison) {
  std::ostringstream out;
  char buf[64];
  auto cell = [&](double v) -> std::string {
    if (std::isnan(v)) return "n/a";
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
  };
  std::snprintf(buf, sizeof(buf), "%-28s %14s %14s %14s", "metric", comparison.controller_a.c_str(),
                comparison.controller_b.c_str(), "delta");
  out << buf << '\n';
  for (const auto& row : comparison.rows) {
    std::snprintf(buf, sizeof(buf), "%-28s %14s %14s %14s", row.metric.c_str(),
                  cell(row.a).c_str(), cell(row.b).c_str(), cell(row.delta).c_str());
    out << buf << '\n';
  }
  return out.str();
}

}  // namespace btc
