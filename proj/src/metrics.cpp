#include "btc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "btc/errors.hpp"

namespace btc {

namespace {

void require_rows(const Trace& trace) {
  if (trace.rows() == 0) throw DomainError("metric requires a nonempty trace");
}

std::vector<double> mean_payoff_series(const Trace& trace) {
  const std::size_t rows = trace.rows();
  const auto k = static_cast<std::size_t>(trace.room_count);
  std::vector<double> mean(rows, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto f = trace.payoffs_at(r);
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum += f[i];
    mean[r] = sum / static_cast<double>(k);
  }
  return mean;
}

}  // namespace

TrackingRmse tracking_rmse(const Trace& trace) {
  require_rows(trace);
  const std::size_t rows = trace.rows();
  const auto k = static_cast<std::size_t>(trace.room_count);
  TrackingRmse out;
  out.per_room.assign(k, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto f = trace.payoffs_at(r);
    for (std::size_t i = 0; i < k; ++i) out.per_room[i] += f[i] * f[i];
  }
  for (auto& v : out.per_room) v = std::sqrt(v / static_cast<double>(rows));
  out.aggregate =
      std::accumulate(out.per_room.begin(), out.per_room.end(), 0.0) / static_cast<double>(k);
  return out;
}

std::vector<double> overshoot(const Trace& trace) {
  require_rows(trace);
  const std::size_t rows = trace.rows();
  const auto k = static_cast<std::size_t>(trace.room_count);
  std::vector<double> peak(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t crossed_at = rows;
    for (std::size_t r = 0; r < rows; ++r) {
      if (trace.payoffs_at(r)[i] >= 0.0) {
        crossed_at = r;
        break;
      }
    }
    for (std::size_t r = crossed_at; r < rows; ++r)
      peak[i] = std::max(peak[i], trace.payoffs_at(r)[i]);
  }
  return peak;
}

Transience transience(const Trace& trace, double band) {
  require_rows(trace);
  if (!(band > 0.0)) throw DomainError("settling band must be positive");
  const auto mean = mean_payoff_series(trace);
  const std::size_t rows = mean.size();

  // First row after which the mean payoff never leaves the band again.
  std::size_t settle_row = rows;
  for (std::size_t r = rows; r-- > 0;) {
    if (std::abs(mean[r]) > band) break;
    settle_row = r;
  }
  Transience out;
  if (settle_row < rows) out.settling_time = trace.time[settle_row];

  const std::size_t limit = settle_row < rows ? settle_row : rows - 1;
  int last_sign = 0;
  for (std::size_t r = 0; r <= limit; ++r) {
    const int sign = mean[r] > 0.0 ? 1 : (mean[r] < 0.0 ? -1 : 0);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) ++out.zero_crossings;
    last_sign = sign;
  }
  return out;
}

long constraint_violations(const Trace& trace, const BoundedSimplex& geometry,
                           double tolerance_rel) {
  require_rows(trace);
  if (trace.strategy_count != geometry.size())
    throw DomainError("trace strategy count does not match geometry");
  const double total = geometry.total();
  const double tol = tolerance_rel * std::abs(total);
  const auto lo = geometry.lower();
  const auto up = geometry.upper();
  long count = 0;
  for (std::size_t r = 0; r < trace.rows(); ++r) {
    const auto x = trace.allocations_at(r);
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sum += x[i];
      if (x[i] < lo[i] - tol || x[i] > up[i] + tol) ++count;
    }
    if (std::abs(sum - total) > tol) ++count;
  }
  return count;
}

EnergyUse energy_used(const Trace& trace) {
  require_rows(trace);
  const auto k = static_cast<std::size_t>(trace.room_count);
  EnergyUse out;
  out.per_room.assign(k, 0.0);
  for (std::size_t r = 0; r + 1 < trace.rows(); ++r) {
    const double dt = trace.time[r + 1] - trace.time[r];
    const auto x = trace.allocations_at(r);
    for (std::size_t i = 0; i < k; ++i) out.per_room[i] += x[i] * dt;
    out.slack += x[k] * dt;
  }
  out.delivered = std::accumulate(out.per_room.begin(), out.per_room.end(), 0.0);
  return out;
}

RunReport analyze(const Trace& trace, const BoundedSimplex& geometry,
                  const AnalysisParams& params) {
  require_rows(trace);
  RunReport report;
  report.scenario_name = trace.scenario_name;
  report.fingerprint = trace.fingerprint;
  report.controller = trace.controller;
  report.completed = trace.status.completed;
  report.horizon_hours = trace.time.back();
  report.dt = trace.dt;
  report.clamp_events = trace.clamp_events;
  report.rmse = tracking_rmse(trace);
  report.overshoot_per_room = overshoot(trace);
  report.overshoot_peak = report.overshoot_per_room.empty()
                              ? 0.0
                              : *std::max_element(report.overshoot_per_room.begin(),
                                                  report.overshoot_per_room.end());
  report.transience = transience(trace, params.settling_band);
  report.settling_band = params.settling_band;
  report.constraint_violations =
      constraint_violations(trace, geometry, params.violation_tolerance_rel);
  report.energy = energy_used(trace);

  const std::size_t rows = trace.rows();
  const auto window = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(params.steady_window_fraction * rows)));
  const auto k = static_cast<std::size_t>(trace.room_count);
  double abs_sum = 0.0;
  for (std::size_t r = rows - window; r < rows; ++r) {
    const auto f = trace.payoffs_at(r);
    for (std::size_t i = 0; i < k; ++i) abs_sum += std::abs(f[i]);
  }
  report.steady_state_mean_abs_payoff =
      abs_sum / (static_cast<double>(window) * static_cast<double>(k));
  report.final_residual = trace.residual.back();
  return report;
}

Comparison compare(const RunReport& a, const RunReport& b) {
  if (a.fingerprint != b.fingerprint)
    throw DomainError("cannot compare runs of different scenarios (fingerprint mismatch)");
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  auto settle = [](const RunReport& r) {
    return r.transience.settling_time ? *r.transience.settling_time : nan;
  };

  Comparison cmp;
  cmp.scenario_name = a.scenario_name;
  cmp.controller_a = to_string(a.controller);
  cmp.controller_b = to_string(b.controller);
  auto row = [&](std::string name, double va, double vb) {
    cmp.rows.push_back({std::move(name), va, vb, vb - va});
  };
  row("tracking_rmse", a.rmse.aggregate, b.rmse.aggregate);
  row("overshoot_peak", a.overshoot_peak, b.overshoot_peak);
  row("zero_crossings", a.transience.zero_crossings, b.transience.zero_crossings);
  row("settling_time", settle(a), settle(b));
  row("constraint_violations", static_cast<double>(a.constraint_violations),
      static_cast<double>(b.constraint_violations));
  row("energy_delivered", a.energy.delivered, b.energy.delivered);
  row("steady_state_mean_abs_payoff", a.steady_state_mean_abs_payoff,
      b.steady_state_mean_abs_payoff);
  row("final_residual", a.final_residual, b.final_residual);
  return cmp;
}

}  // namespace btc
