#pragma once

#include <optional>
#include <string>
#include <vector>

#include "btc/population.hpp"
#include "btc/simulation.hpp"

namespace btc {

struct TrackingRmse {
  std::vector<double> per_room;
  double aggregate = 0.0;
};

/// Root-mean-square tracking deviation per room over the whole trace;
/// aggregate is the mean across rooms.
TrackingRmse tracking_rmse(const Trace& trace);

/// Peak positive deviation per room after its first upward crossing of
/// the setpoint. Zero for rooms that never reach their setpoint from
/// below.
std::vector<double> overshoot(const Trace& trace);

struct Transience {
  int zero_crossings = 0;
  std::optional<double> settling_time;  // absent when never settled
};

/// Sign changes of the room-mean payoff before it permanently enters
/// the +-band, and the time of that entry.
Transience transience(const Trace& trace, double band);

/// Number of (step, component) box breaches beyond tolerance plus steps
/// breaching mass conservation. Tolerance is relative to total mass.
long constraint_violations(const Trace& trace, const BoundedSimplex& geometry,
                           double tolerance_rel = 1e-9);

struct EnergyUse {
  std::vector<double> per_room;  // kWh integrated over the horizon
  double delivered = 0.0;        // sum over rooms
  double slack = 0.0;            // unused power integral
};

/// Euler-sum time integral of the allocation trajectories.
EnergyUse energy_used(const Trace& trace);

struct AnalysisParams {
  double settling_band = 0.5;            // degC
  double steady_window_fraction = 0.25;  // trailing fraction of the horizon
  double violation_tolerance_rel = 1e-9;
};

/// One run distilled to the comparison metrics.
struct RunReport {
  std::string scenario_name;
  std::string fingerprint;
  ControllerKind controller = ControllerKind::Ded;
  bool completed = true;
  double horizon_hours = 0.0;
  double dt = 0.0;
  long clamp_events = 0;
  TrackingRmse rmse;
  std::vector<double> overshoot_per_room;
  double overshoot_peak = 0.0;
  Transience transience;
  double settling_band = 0.5;
  long constraint_violations = 0;
  EnergyUse energy;
  double steady_state_mean_abs_payoff = 0.0;
  double final_residual = 0.0;
};

RunReport analyze(const Trace& trace, const BoundedSimplex& geometry,
                  const AnalysisParams& params = {});

struct ComparisonRow {
  std::string metric;
  double a = 0.0;
  double b = 0.0;
  double delta = 0.0;  // b - a; NaN when either side is undefined
};

struct Comparison {
  std::string scenario_name;
  std::string controller_a;
  std::string controller_b;
  std::vector<ComparisonRow> rows;
};

/// Side-by-side metric table. Both reports must come from the same
/// scenario (matching fingerprints); throws DomainError otherwise.
Comparison compare(const RunReport& a, const RunReport& b);

}  // namespace btc
