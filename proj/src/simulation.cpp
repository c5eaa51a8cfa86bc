#include "btc/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "btc/errors.hpp"

namespace btc {

namespace {

// Interior margin (fraction of each component's range) for the
// saturated barrier used by the DIP branch of the loop.
constexpr double kBarrierMarginFraction = 1e-3;

// Bound-drift and mass-conservation tolerances, relative to total mass.
constexpr double kBoundTolRel = 1e-9;
constexpr double kMassTolRel = 1e-9;

bool all_finite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

}  // namespace

void Scenario::validate() const {
  const int n_zones = building.zone_count();
  const int k = building.room_count();
  const int n = geometry.size();

  if (n != k + 1)
    throw DomainError("allocation geometry must have one strategy per room plus slack");
  if (graph.node_count() != n)
    throw DomainError("communication graph must have one node per strategy (rooms plus slack)");
  if (static_cast<int>(environment.setpoints.size()) != k)
    throw DomainError("need exactly one setpoint profile per room");
  if (!environment.disturbances.empty() &&
      static_cast<int>(environment.disturbances.size()) != n_zones)
    throw DomainError("disturbance profiles must cover every zone or be absent");
  if (static_cast<int>(initial_temperatures.size()) != n_zones)
    throw DomainError("initial temperature vector length does not match zone count");
  if (static_cast<int>(initial_allocation.size()) != n)
    throw DomainError("initial allocation vector length does not match strategy count");
  if (!(dt_hours > 0.0)) throw DomainError("dt must be positive");
  if (horizon_hours < 0.0) throw DomainError("horizon must be nonnegative");
  if (controller_substeps < 1) throw DomainError("controller substeps must be at least 1");
  if (!(controller.gain > 0.0) || !std::isfinite(controller.gain))
    throw DomainError("controller gain must be positive and finite");
  if (controller.kind == ControllerKind::Dip && !(controller.epsilon > 0.0))
    throw DomainError("barrier weight epsilon must be positive for the dip controller");
  if (!all_finite(initial_temperatures)) throw DomainError("non-finite initial temperature");

  // Theorem conditions checked up front: the graph is connected by
  // construction (C1); the initial allocation must carry the full mass
  // and sit strictly inside the box (C3 plus escort interiority).
  const double total = geometry.total();
  const double mass = std::accumulate(initial_allocation.begin(), initial_allocation.end(), 0.0);
  if (std::abs(mass - total) > kMassTolRel * std::abs(total)) {
    std::ostringstream msg;
    msg << "initial allocation mass " << mass << " does not match total " << total;
    throw DomainError(msg.str());
  }
  if (!geometry.is_interior(initial_allocation))
    throw DomainError("initial allocation must be strictly interior to its bounds");
}

double consensus_residual(std::span<const double> f) {
  if (f.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
  return *hi - *lo;
}

std::span<const double> Trace::temperatures_at(std::size_t row) const {
  const auto n = static_cast<std::size_t>(zone_count);
  return {temperatures.data() + row * n, n};
}
std::span<const double> Trace::setpoints_at(std::size_t row) const {
  const auto k = static_cast<std::size_t>(room_count);
  return {setpoints.data() + row * k, k};
}
std::span<const double> Trace::allocations_at(std::size_t row) const {
  const auto n = static_cast<std::size_t>(strategy_count);
  return {allocations.data() + row * n, n};
}
std::span<const double> Trace::payoffs_at(std::size_t row) const {
  const auto k = static_cast<std::size_t>(room_count);
  return {payoffs.data() + row * k, k};
}
std::span<const double> Trace::escorts_at(std::size_t row) const {
  const auto n = static_cast<std::size_t>(strategy_count);
  return {escorts.data() + row * n, n};
}

Trace run(const Scenario& scenario) {
  scenario.validate();

  const auto& net = scenario.building;
  const auto& geom = scenario.geometry;
  const auto& graph = scenario.graph;
  const auto& ctrl = scenario.controller;
  const int n_zones = net.zone_count();
  const int k = net.room_count();
  const int n = geom.size();
  const double total = geom.total();
  const double dt = scenario.dt_hours;
  const double bound_tol = kBoundTolRel * std::abs(total);
  const double mass_tol = kMassTolRel * std::abs(total);
  const bool escort_controller =
      ctrl.kind == ControllerKind::Ded || ctrl.kind == ControllerKind::Ed;

  const auto steps = static_cast<std::size_t>(
      scenario.horizon_hours <= 0.0 ? 0 : std::llround(scenario.horizon_hours / dt));

  Trace trace;
  trace.scenario_name = scenario.name;
  trace.fingerprint = scenario.fingerprint;
  trace.controller = ctrl.kind;
  trace.dt = dt;
  trace.zone_count = n_zones;
  trace.room_count = k;
  trace.strategy_count = n;
  const std::size_t rows = steps + 1;
  trace.time.reserve(rows);
  trace.temperatures.reserve(rows * static_cast<std::size_t>(n_zones));
  trace.setpoints.reserve(rows * static_cast<std::size_t>(k));
  trace.allocations.reserve(rows * static_cast<std::size_t>(n));
  trace.payoffs.reserve(rows * static_cast<std::size_t>(k));
  trace.escorts.reserve(rows * static_cast<std::size_t>(n));
  trace.residual.reserve(rows);
  trace.objective.reserve(rows);

  std::vector<double> t = scenario.initial_temperatures;
  std::vector<double> x = scenario.initial_allocation;
  std::vector<double> f_ext(static_cast<std::size_t>(n), 0.0);
  std::vector<double> d(scenario.environment.disturbances.empty()
                            ? 0
                            : static_cast<std::size_t>(n_zones));

  auto record = [&](double tau) {
    trace.time.push_back(tau);
    trace.temperatures.insert(trace.temperatures.end(), t.begin(), t.end());
    std::vector<double> tset(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
      tset[static_cast<std::size_t>(i)] =
          scenario.environment.setpoints[static_cast<std::size_t>(i)](tau);
    trace.setpoints.insert(trace.setpoints.end(), tset.begin(), tset.end());
    trace.allocations.insert(trace.allocations.end(), x.begin(), x.end());
    const auto f = payoff({t.data(), static_cast<std::size_t>(k)}, tset);
    trace.payoffs.insert(trace.payoffs.end(), f.begin(), f.end());
    const auto phi = escort(geom, x);
    trace.escorts.insert(trace.escorts.end(), phi.begin(), phi.end());
    std::copy(f.begin(), f.end(), f_ext.begin());
    f_ext.back() = 0.0;  // the slack strategy tracks perfectly by definition
    trace.residual.push_back(consensus_residual(f_ext));
    trace.objective.push_back(objective_value({t.data(), static_cast<std::size_t>(k)}, tset));
  };

  auto abort_run = [&](std::size_t step, int component, std::string reason) {
    trace.status.completed = false;
    trace.status.abort_step = step;
    trace.status.abort_component = component;
    trace.status.reason = std::move(reason);
  };

  record(0.0);

  for (std::size_t s = 0; s < steps; ++s) {
    const double tau = static_cast<double>(s) * dt;

    // Controller update; f_ext was refreshed by the last record().
    bool aborted = false;
    const int substeps = scenario.controller_substeps;
    const double sub_dt = dt / substeps;
    for (int sub = 0; sub < substeps && !aborted; ++sub) {
      std::vector<double> velocity;
      double scale = ctrl.gain;
      try {
        switch (ctrl.kind) {
          case ControllerKind::Ded:
            velocity = ded_velocity(geom, x, f_ext, graph);
            break;
          case ControllerKind::Ed:
            // Centralized variant driven by tracking error: mass flows
            // toward below-average payoff, matching the distributed
            // dynamics on the complete graph.
            velocity = ed_velocity(geom, x, f_ext);
            scale = -ctrl.gain * escort_total(geom, x);
            break;
          case ControllerKind::Dip:
            velocity = dip_velocity(
                x, dip_payoff_saturated(f_ext, x, geom, ctrl.epsilon, kBarrierMarginFraction),
                graph);
            break;
        }
      } catch (const DomainError& e) {
        abort_run(s, -1, std::string("controller evaluation failed: ") + e.what());
        aborted = true;
        break;
      }
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += sub_dt * scale * velocity[i];
      if (escort_controller) {
        try {
          trace.clamp_events += geom.clamp_to_bounds(x, bound_tol);
        } catch (const DomainError& e) {
          record(tau + dt);  // keep the breaching state for inspection
          abort_run(s, -1, std::string("allocation bound escape: ") + e.what());
          aborted = true;
        }
      }
    }
    if (aborted) break;

    if (!all_finite(x)) {
      abort_run(s, -1, "non-finite allocation state");
      break;
    }
    const double mass = std::accumulate(x.begin(), x.end(), 0.0);
    if (std::abs(mass - total) > mass_tol) {
      std::ostringstream msg;
      msg << "mass conservation violated: sum " << mass << " vs total " << total;
      abort_run(s, -1, msg.str());
      break;
    }

    // Plant update with the freshly allocated power.
    if (!d.empty())
      for (int i = 0; i < n_zones; ++i)
        d[static_cast<std::size_t>(i)] =
            scenario.environment.disturbances[static_cast<std::size_t>(i)](tau);
    const double ambient = scenario.environment.ambient(tau);
    const auto rate = zone_derivative(net, t, ambient, {x.data(), static_cast<std::size_t>(k)}, d);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] += dt * rate[i];
    if (!all_finite(t)) {
      abort_run(s, -1, "non-finite temperature state");
      break;
    }

    record(static_cast<double>(s + 1) * dt);
  }

  return trace;
}

EquilibriumDiagnostics diagnostics(const Trace& trace, const BoundedSimplex& geometry,
                                   double window_fraction, const DiagnosticsParams& params) {
  if (trace.rows() == 0) throw DomainError("diagnostics need a nonempty trace");
  if (!(window_fraction > 0.0) || window_fraction > 1.0)
    throw DomainError("diagnostics window fraction must lie in (0, 1]");

  const std::size_t rows = trace.rows();
  const auto window =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(window_fraction * rows)));
  const std::size_t first = rows - window;
  const auto n_zones = static_cast<std::size_t>(trace.zone_count);
  const auto k = static_cast<std::size_t>(trace.room_count);
  const auto n = static_cast<std::size_t>(trace.strategy_count);

  EquilibriumDiagnostics diag;
  diag.t_star.assign(n_zones, 0.0);
  diag.x_star.assign(n, 0.0);
  diag.f_star.assign(k, 0.0);
  for (std::size_t r = first; r < rows; ++r) {
    const auto t = trace.temperatures_at(r);
    const auto x = trace.allocations_at(r);
    const auto f = trace.payoffs_at(r);
    for (std::size_t i = 0; i < n_zones; ++i) diag.t_star[i] += t[i];
    for (std::size_t i = 0; i < n; ++i) diag.x_star[i] += x[i];
    for (std::size_t i = 0; i < k; ++i) diag.f_star[i] += f[i];
  }
  const auto count = static_cast<double>(window);
  for (auto& v : diag.t_star) v /= count;
  for (auto& v : diag.x_star) v /= count;
  for (auto& v : diag.f_star) v /= count;

  for (std::size_t r = first; r < rows; ++r) {
    const auto t = trace.temperatures_at(r);
    const auto x = trace.allocations_at(r);
    const auto f = trace.payoffs_at(r);
    for (std::size_t i = 0; i < n_zones; ++i)
      diag.temperature_error_max = std::max(diag.temperature_error_max,
                                            std::abs(t[i] - diag.t_star[i]));
    for (std::size_t i = 0; i < n; ++i)
      diag.allocation_error_max = std::max(diag.allocation_error_max,
                                           std::abs(x[i] - diag.x_star[i]));
    for (std::size_t i = 0; i < k; ++i)
      diag.payoff_error_max = std::max(diag.payoff_error_max, std::abs(f[i] - diag.f_star[i]));
    if (r + 1 < rows) {
      const auto x_next = trace.allocations_at(r + 1);
      for (std::size_t i = 0; i < n; ++i)
        diag.velocity_max =
            std::max(diag.velocity_max, std::abs(x_next[i] - x[i]) / trace.dt);
    }
  }

  const double total = geometry.total();
  const double mass = std::accumulate(diag.x_star.begin(), diag.x_star.end(), 0.0);
  diag.c3_satisfied = std::abs(mass - total) <= kMassTolRel * std::abs(total) &&
                      geometry.contains(diag.x_star, kBoundTolRel * std::abs(total));

  // Empirical uniqueness check: once temperatures have stopped moving,
  // the allocation must have stopped moving as well.
  const double velocity_tol = params.velocity_tolerance_rel * std::abs(total);
  diag.rest_point_consistent = diag.temperature_error_max > params.temperature_tolerance ||
                               diag.velocity_max <= velocity_tol;
  return diag;
}

}  // namespace btc
