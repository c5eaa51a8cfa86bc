#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "btc/controllers.hpp"
#include "btc/graph.hpp"
#include "btc/population.hpp"
#include "btc/thermal.hpp"

namespace btc {

/// Everything needed to run one closed-loop simulation. The allocation
/// state has one strategy per room plus a trailing slack strategy that
/// absorbs unused power; `geometry` and `graph` are sized k+1.
struct Scenario {
  std::string name;
  BuildingNetwork building;
  EnvironmentProfiles environment;
  BoundedSimplex geometry;
  CommGraph graph;
  ControllerSpec controller;
  double horizon_hours = 0.0;
  double dt_hours = 0.01;
  int controller_substeps = 1;
  std::vector<double> initial_temperatures;  // one per zone
  std::vector<double> initial_allocation;    // one per strategy (incl. slack)
  std::uint64_t seed = 0;
  std::string fingerprint;  // scenario identity minus the controller section

  int rooms() const { return building.room_count(); }
  int strategies() const { return geometry.size(); }

  /// Cross-checks dimensions and the run preconditions: connected graph
  /// (guaranteed by CommGraph), initial allocation strictly interior
  /// with mass equal to the total. Throws DomainError.
  void validate() const;
};

struct RunStatus {
  bool completed = true;
  std::size_t abort_step = 0;
  int abort_component = -1;
  std::string reason;
};

/// Time-indexed record of one run. Row 0 is the initial state; one row
/// per step thereafter. Matrix-valued columns are stored flat, row-major.
struct Trace {
  std::string scenario_name;
  std::string fingerprint;
  ControllerKind controller = ControllerKind::Ded;
  double dt = 0.0;
  int zone_count = 0;
  int room_count = 0;
  int strategy_count = 0;
  long clamp_events = 0;
  RunStatus status;

  std::vector<double> time;
  std::vector<double> temperatures;  // rows x zone_count
  std::vector<double> setpoints;     // rows x room_count
  std::vector<double> allocations;   // rows x strategy_count
  std::vector<double> payoffs;       // rows x room_count
  std::vector<double> escorts;       // rows x strategy_count
  std::vector<double> residual;      // rows
  std::vector<double> objective;     // rows

  std::size_t rows() const { return time.size(); }
  std::span<const double> temperatures_at(std::size_t row) const;
  std::span<const double> setpoints_at(std::size_t row) const;
  std::span<const double> allocations_at(std::size_t row) const;
  std::span<const double> payoffs_at(std::size_t row) const;
  std::span<const double> escorts_at(std::size_t row) const;
};

/// Largest pairwise payoff gap, max_ij |f_i - f_j|. Zero iff exact
/// output consensus.
double consensus_residual(std::span<const double> f);

/// Runs the coupled plant/controller loop. Escort controllers (ded, ed)
/// abort when the state escapes its bounds beyond the clamp tolerance;
/// the interior-point controller records excursions and keeps going
/// with a saturated barrier. A non-finite state always aborts. Aborts
/// truncate the trace and set `status`.
Trace run(const Scenario& scenario);

/// Empirical rest-point diagnostics over the trailing window of a trace.
struct EquilibriumDiagnostics {
  std::vector<double> t_star;  // trailing-window mean temperatures
  std::vector<double> x_star;  // trailing-window mean allocations
  std::vector<double> f_star;  // trailing-window mean payoffs
  double temperature_error_max = 0.0;  // max |t - t_star|_inf over the window
  double allocation_error_max = 0.0;   // max |x - x_star|_inf over the window
  double payoff_error_max = 0.0;       // max |f - f_star|_inf over the window
  double velocity_max = 0.0;           // max |dx/dt|_inf over the window
  bool c3_satisfied = false;           // x_star carries the full mass, inside bounds
  bool rest_point_consistent = false;  // small temperature error implies small velocity
};

struct DiagnosticsParams {
  double temperature_tolerance = 1e-2;  // degC
  double velocity_tolerance_rel = 1e-4;  // per hour, relative to total mass
};

EquilibriumDiagnostics diagnostics(const Trace& trace, const BoundedSimplex& geometry,
                                   double window_fraction,
                                   const DiagnosticsParams& params = {});

}  // namespace btc
