// Acceptance suite: runs every release criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion.
//
// Usage: acceptance <path-to-btcsim> <scenario-dir>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "btc/controllers.hpp"
#include "btc/metrics.hpp"
#include "btc/scenario_io.hpp"
#include "btc/simulation.hpp"
#include "btc/thermal.hpp"

#include "../unit/oracles.hpp"

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& title, const std::string& detail) {
  std::printf("%s  C%02d %s (%s)\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  if (!pass) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

double sum(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

std::string slurp(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// --- C1: conservation of the total mass under every velocity field ---------

void criterion_conservation() {
  const auto start = Clock::now();
  oracle::Rng rng(101);
  double worst = 0.0;
  for (int iter = 0; iter < 10000; ++iter) {
    const int n = rng.uniform_int(2, 20);
    const auto inst = oracle::random_instance(rng, n);
    const auto geom = inst.geometry();
    const auto graph = oracle::random_connected_graph(rng, n);
    const auto f = oracle::random_payoff(rng, n);

    const double tol = 1e-12 * geom.total();
    const auto check = [&](const std::vector<double>& v) {
      worst = std::max(worst, std::abs(sum(v)) / geom.total());
    };
    check(ed_velocity(geom, inst.x, f));
    check(ded_velocity(geom, inst.x, f, graph));
    check(ded_velocity_weighted(f, link_weights(geom, inst.x, graph)));
    check(dip_velocity(inst.x, dip_payoff(f, inst.x, geom, 0.05), graph));
    (void)tol;
  }
  const double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << "worst |sum v|/total = " << worst << ", " << elapsed << " s over 10000 triples";
  report(1, worst <= 1e-12 && elapsed < 10.0, "velocity fields conserve the total mass",
         detail.str());
}

// --- C2: boundary pinning, algebraic and along a full run -------------------

void criterion_boundary_pinning(const fs::path& scenarios) {
  bool algebraic = true;
  oracle::Rng rng(202);
  for (int iter = 0; iter < 2000; ++iter) {
    const int n = rng.uniform_int(2, 12);
    auto inst = oracle::random_instance(rng, n);
    const auto geom = inst.geometry();
    const auto graph = oracle::random_connected_graph(rng, n);
    const auto f = oracle::random_payoff(rng, n);

    const auto pin = static_cast<std::size_t>(rng.uniform_int(0, n - 1));
    const auto other = (pin + 1) % static_cast<std::size_t>(n);
    auto x = inst.x;
    const bool to_lower = rng.uniform_int(0, 1) == 0;
    const double target = to_lower ? geom.lower()[pin] : geom.upper()[pin];
    const double delta = x[pin] - target;
    if (x[other] + delta <= geom.lower()[other] || x[other] + delta >= geom.upper()[other])
      continue;
    x[pin] = target;
    x[other] += delta;

    if (ded_velocity(geom, x, f, graph)[pin] != 0.0) algebraic = false;
    if (ed_velocity(geom, x, f)[pin] != 0.0) algebraic = false;
  }

  const auto scenario = btc::load_scenario(scenarios / "two_room.json");
  const auto trace = btc::run(scenario);
  bool run_ok = trace.status.completed && trace.rows() == 5001;
  const double tol = 1e-9 * scenario.geometry.total();
  double worst_breach = 0.0;
  for (std::size_t r = 0; r < trace.rows(); ++r) {
    const auto x = trace.allocations_at(r);
    for (int i = 0; i < scenario.strategies(); ++i) {
      const auto idx = static_cast<std::size_t>(i);
      worst_breach = std::max(worst_breach, scenario.geometry.lower()[idx] - x[idx]);
      worst_breach = std::max(worst_breach, x[idx] - scenario.geometry.upper()[idx]);
    }
  }
  run_ok = run_ok && worst_breach <= tol;

  std::ostringstream detail;
  detail << "exact zeros on bounds: " << (algebraic ? "yes" : "no")
         << "; worst box excursion over 5000 steps = " << worst_breach;
  report(2, algebraic && run_ok, "bound components are pinned", detail.str());
}

// --- C3: complete-graph identity linking the two dynamics -------------------

void criterion_complete_graph_bridge() {
  oracle::Rng rng(303);
  double worst = 0.0;
  for (int iter = 0; iter < 1000; ++iter) {
    const int n = rng.uniform_int(2, 10);
    const auto inst = oracle::random_instance(rng, n);
    const auto geom = inst.geometry();
    const auto f = oracle::random_payoff(rng, n);

    const auto ded = ded_velocity(geom, inst.x, f, btc::CommGraph::complete(n));
    const auto ed = ed_velocity(geom, inst.x, f);
    const double big_phi = escort_total(geom, inst.x);
    for (int i = 0; i < n; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      worst = std::max(worst, std::abs(ded[idx] + big_phi * ed[idx]));
    }
  }
  report(3, worst <= 1e-12, "complete-graph distributed dynamics equal -Phi * centralized",
         "worst componentwise gap = " + compact(worst));
}

// --- C4: the two distributed forms agree ------------------------------------

void criterion_form_equivalence() {
  oracle::Rng rng(404);
  double worst = 0.0;
  for (int iter = 0; iter < 1000; ++iter) {
    const int n = rng.uniform_int(2, 12);
    const auto inst = oracle::random_instance(rng, n);
    const auto geom = inst.geometry();
    const auto graph = oracle::random_connected_graph(rng, n);
    const auto f = oracle::random_payoff(rng, n);

    const auto direct = ded_velocity(geom, inst.x, f, graph);
    const auto weighted = ded_velocity_weighted(f, link_weights(geom, inst.x, graph));
    for (int i = 0; i < n; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      worst = std::max(worst, std::abs(direct[idx] - weighted[idx]));
    }
  }
  report(4, worst <= 1e-14, "neighbor-sum and link-weight forms agree",
         "worst componentwise gap = " + compact(worst));
}

// --- C5: linear-solve simplex coordinates match the closed forms ------------

void criterion_simplex_coordinates() {
  oracle::Rng rng(505);
  double worst = 0.0;
  for (int iter = 0; iter < 1000; ++iter) {
    const int n = rng.uniform_int(2, 10);
    const auto inst = oracle::random_instance(rng, n);
    const auto geom = inst.geometry();

    const auto coords = simplex_coordinates(geom, inst.x);
    const auto eta_closed = eta(geom, inst.x);
    const auto xi_closed = xi(geom, inst.x);
    for (int i = 0; i < n; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      worst = std::max(worst, std::abs(coords.eta[idx] - eta_closed[idx]));
      worst = std::max(worst, std::abs(coords.xi[idx] - xi_closed[idx]));
    }
  }
  report(5, worst <= 1e-10, "vertex-matrix solves match closed-form coordinates",
         "worst gap = " + compact(worst));
}

// --- C6: frozen hand-derived velocity vector --------------------------------

void criterion_hand_derived_vector() {
  const btc::BoundedSimplex geom({0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}, 1.0);
  const std::vector<double> x = {0.5, 0.3, 0.2};
  const std::vector<double> f = {1.0, 0.0, -1.0};
  const auto v = ded_velocity(geom, x, f, btc::CommGraph::path(3));

  const double e0 = std::abs(v[0] - (-0.0131250));
  const double e1 = std::abs(v[1] - (+0.0047250));
  const double e2 = std::abs(v[2] - (+0.0084000));
  const double total = sum(v);
  const bool pass = e0 <= 1e-15 && e1 <= 1e-15 && e2 <= 1e-15 && total == 0.0;
  std::ostringstream detail;
  detail << "errors (" << e0 << ", " << e1 << ", " << e2 << "), sum = " << total;
  report(6, pass, "hand-derived path-graph velocity reproduced", detail.str());
}

// --- C7: output consensus on the five-room desk fixture ---------------------

void criterion_output_consensus(const fs::path& scenarios) {
  const auto start = Clock::now();
  const auto scenario = btc::load_scenario(scenarios / "five_room.json");
  const auto trace = btc::run(scenario);
  const double elapsed = seconds_since(start);

  bool reached = false;
  for (double r : trace.residual)
    if (r < 1e-3) {
      reached = true;
      break;
    }

  double worst_final = 0.0;
  const auto t = trace.temperatures_at(trace.rows() - 1);
  const auto tset = trace.setpoints_at(trace.rows() - 1);
  for (int i = 0; i < trace.room_count; ++i)
    worst_final = std::max(worst_final, std::abs(t[static_cast<std::size_t>(i)] -
                                                 tset[static_cast<std::size_t>(i)]));

  const bool pass =
      trace.status.completed && reached && worst_final < 0.05 && elapsed < 5.0;
  std::ostringstream detail;
  detail << "final residual = " << trace.residual.back() << ", worst |t - tset| = " << worst_final
         << ", " << elapsed << " s";
  report(7, pass, "five-room fixture reaches output consensus", detail.str());
}

// --- C8: qualitative comparison on the 50-room reference scenario -----------

void criterion_reference_comparison(const fs::path& scenarios) {
  const auto start = Clock::now();
  const auto ded_scenario = btc::load_scenario(scenarios / "reference_50room.json");
  btc::Overrides dip_kind;
  dip_kind.controller = "dip";
  const auto dip_scenario = btc::load_scenario(scenarios / "reference_50room.json", dip_kind);

  const auto ded = btc::run(ded_scenario);
  const auto dip = btc::run(dip_scenario);
  const double elapsed = seconds_since(start);

  const auto ded_report = btc::analyze(ded, ded_scenario.geometry);
  const auto dip_report = btc::analyze(dip, dip_scenario.geometry);

  const bool completed = ded.status.completed && dip.status.completed;
  const bool crossings = ded_report.transience.zero_crossings <=
                             dip_report.transience.zero_crossings &&
                         dip_report.transience.zero_crossings >= 2;
  const bool steady =
      ded_report.steady_state_mean_abs_payoff < dip_report.steady_state_mean_abs_payoff;
  const bool overshoot = ded_report.overshoot_peak <= dip_report.overshoot_peak;
  const bool clean = ded_report.constraint_violations == 0;
  const bool fast = elapsed < 60.0;

  std::ostringstream detail;
  detail << "crossings ded/dip = " << ded_report.transience.zero_crossings << "/"
         << dip_report.transience.zero_crossings
         << ", steady |f| ded/dip = " << ded_report.steady_state_mean_abs_payoff << "/"
         << dip_report.steady_state_mean_abs_payoff
         << ", overshoot ded/dip = " << ded_report.overshoot_peak << "/"
         << dip_report.overshoot_peak << ", ded violations = "
         << ded_report.constraint_violations << ", " << elapsed << " s";
  report(8, completed && crossings && steady && overshoot && clean && fast,
         "50-room reference study: escort beats interior point on transience and bias",
         detail.str());
}

// --- C9: closed thermal network conserves total heat -------------------------

void criterion_thermal_conservation() {
  // ring of zones, conduction only: no ambient contact, no input
  const int n = 12;
  std::vector<btc::Zone> zones;
  std::vector<double> t;
  oracle::Rng rng(909);
  for (int i = 0; i < n; ++i) {
    zones.push_back({i < 6 ? btc::ZoneKind::Room : btc::ZoneKind::Wall,
                     rng.uniform(0.5, 5.0), 0.0});
    t.push_back(rng.uniform(0.0, 30.0));
  }
  btc::Matrix cond(n, n);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    const double a = rng.uniform(0.1, 1.0);
    cond(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = a;
    cond(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = a;
  }
  const btc::BuildingNetwork net(zones, cond);
  const std::vector<double> u(6, 0.0);

  auto heat = [&](const std::vector<double>& temps) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      acc += zones[static_cast<std::size_t>(i)].capacitance * temps[static_cast<std::size_t>(i)];
    return acc;
  };
  const double initial = heat(t);
  double worst = 0.0;
  for (int s = 0; s < 10000; ++s) {
    t = step_plant(net, t, 0.0, u, {}, 0.01);
    worst = std::max(worst, std::abs(heat(t) - initial) / std::abs(initial));
  }
  report(9, worst <= 1e-9, "closed network conserves total heat over 10000 steps",
         "worst relative drift = " + compact(worst));
}

// --- C10: byte-identical artifacts from repeated CLI runs --------------------

int run_command(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status == -1) return -1;
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -1;
}

void criterion_determinism(const fs::path& btcsim, const fs::path& scenarios) {
  const fs::path work = fs::temp_directory_path() / "btcsim_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);

  bool pass = true;
  std::string detail;
  for (const char* fixture : {"two_room.json", "five_room.json"}) {
    const auto quoted = [](const fs::path& p) { return "'" + p.string() + "'"; };
    const int rc1 = run_command(quoted(btcsim) + " simulate " +
                                quoted(scenarios / fixture) + " -o " + quoted(work / "a") +
                                " > /dev/null");
    const int rc2 = run_command(quoted(btcsim) + " simulate " +
                                quoted(scenarios / fixture) + " -o " + quoted(work / "b") +
                                " > /dev/null");
    const auto a = slurp(work / "a" / "trace.csv");
    const auto b = slurp(work / "b" / "trace.csv");
    const bool same = rc1 == 0 && rc2 == 0 && !a.empty() && a == b;
    pass = pass && same;
    detail += std::string(fixture) + (same ? " identical; " : " DIFFERS; ");
  }
  fs::remove_all(work);
  report(10, pass, "repeated simulate runs are byte-identical", detail);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <btcsim> <scenario-dir>\n";
    return 2;
  }
  const fs::path btcsim = argv[1];
  const fs::path scenarios = argv[2];

  criterion_conservation();
  criterion_boundary_pinning(scenarios);
  criterion_complete_graph_bridge();
  criterion_form_equivalence();
  criterion_simplex_coordinates();
  criterion_hand_derived_vector();
  criterion_output_consensus(scenarios);
  criterion_reference_comparison(scenarios);
  criterion_thermal_conservation();
  criterion_determinism(btcsim, scenarios);

  if (failures == 0) {
    std::printf("acceptance: all 10 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", failures);
  return 1;
}
