#include <doctest.h>

#include <cmath>

#include "btc/errors.hpp"
#include "btc/metrics.hpp"

using btc::BoundedSimplex;
using btc::Trace;

namespace {

// Hand-assembled single-room trace: payoffs and allocations given per
// row, everything else filled consistently.
Trace make_trace(const std::vector<double>& payoff_series,
                 const std::vector<std::vector<double>>& allocations, double dt = 1.0) {
  Trace t;
  t.scenario_name = "hand";
  t.fingerprint = "hand";
  t.dt = dt;
  t.zone_count = 1;
  t.room_count = 1;
  t.strategy_count = 2;
  for (std::size_t r = 0; r < payoff_series.size(); ++r) {
    t.time.push_back(static_cast<double>(r) * dt);
    t.temperatures.push_back(15.0 + payoff_series[r]);
    t.setpoints.push_back(15.0);
    t.payoffs.push_back(payoff_series[r]);
    const auto& x = allocations[r];
    t.allocations.insert(t.allocations.end(), x.begin(), x.end());
    t.escorts.insert(t.escorts.end(), {0.1, 0.1});
    t.residual.push_back(std::abs(payoff_series[r]));
    t.objective.push_back(payoff_series[r] * payoff_series[r] / 2.0);
  }
  return t;
}

std::vector<std::vector<double>> constant_allocation(std::size_t rows, std::vector<double> x) {
  return std::vector<std::vector<double>>(rows, std::move(x));
}

const BoundedSimplex kGeometry({0.0, 0.0}, {3.0, 4.0}, 4.0);

}  // namespace

TEST_CASE("tracking rmse") {
  CHECK(tracking_rmse(make_trace({0, 0, 0, 0}, constant_allocation(4, {1, 3}))).aggregate == 0.0);
  CHECK(tracking_rmse(make_trace({2, 2, 2, 2}, constant_allocation(4, {1, 3}))).aggregate == 2.0);
  CHECK(tracking_rmse(make_trace({1, -1, 1, -1}, constant_allocation(4, {1, 3}))).aggregate ==
        1.0);
}

TEST_CASE("overshoot") {
  // approaches from below but never reaches the setpoint
  CHECK(overshoot(make_trace({-3, -2, -1, -0.5}, constant_allocation(4, {1, 3})))[0] == 0.0);
  // peaks at 2 after crossing, then settles
  CHECK(overshoot(make_trace({-3, -1, 2, 1, 0.2}, constant_allocation(5, {1, 3})))[0] == 2.0);
  // dips below the setpoint afterwards; the peak still counts
  CHECK(overshoot(make_trace({-3, 1, -0.5, 0.3}, constant_allocation(4, {1, 3})))[0] == 1.0);
}

TEST_CASE("transience") {
  {  // monotone convergence: settles, no sign change
    const auto t = transience(make_trace({-3, -2, -1, -0.4, -0.2, -0.1},
                                         constant_allocation(6, {1, 3})), 0.5);
    CHECK(t.zero_crossings == 0);
    REQUIRE(t.settling_time.has_value());
    CHECK(*t.settling_time == 3.0);
  }
  {  // one oscillation cycle before settling
    const auto t = transience(make_trace({-3, 2, -1, 0.3, -0.2, 0.1},
                                         constant_allocation(6, {1, 3})), 0.5);
    CHECK(t.zero_crossings == 3);
    REQUIRE(t.settling_time.has_value());
    CHECK(*t.settling_time == 3.0);
  }
  {  // never settles
    const auto t = transience(make_trace({-3, 3, -3, 3, -3, 3},
                                         constant_allocation(6, {1, 3})), 0.5);
    CHECK_FALSE(t.settling_time.has_value());
    CHECK(t.zero_crossings == 5);
  }
  CHECK_THROWS_AS(transience(make_trace({0}, constant_allocation(1, {1, 3})), 0.0),
                  btc::DomainError);
}

TEST_CASE("constraint violations") {
  // stays inside: zero
  CHECK(constraint_violations(make_trace({0, 0}, constant_allocation(2, {1, 3})), kGeometry) == 0);

  // one component breaches the upper bound on one row
  auto rows = constant_allocation(3, {1, 3});
  rows[1] = {3.5, 0.5};
  CHECK(constraint_violations(make_trace({0, 0, 0}, rows), kGeometry) == 1);

  // a mass breach counts per row
  auto short_rows = constant_allocation(2, {1, 3});
  short_rows[1] = {1, 2};
  CHECK(constraint_violations(make_trace({0, 0}, short_rows), kGeometry) == 1);
}

TEST_CASE("energy accounting") {
  {  // all power parked in the slack strategy
    const auto e = energy_used(make_trace({0, 0, 0}, constant_allocation(3, {0.0, 4.0})));
    CHECK(e.delivered == 0.0);
    CHECK(e.slack == 8.0);  // 4 kWh over two 1 h intervals
  }
  {  // constant room output c over horizon H gives c * H
    const auto e = energy_used(make_trace({0, 0, 0, 0, 0}, constant_allocation(5, {1.5, 2.5})));
    CHECK(e.per_room[0] == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(e.delivered + e.slack == doctest::Approx(4.0 * 4.0).epsilon(1e-12));
  }
}

TEST_CASE("analyze fills the report and compare diffs it") {
  const auto trace = make_trace({-3, -1, 0.5, 0.2, 0.1, 0.05}, constant_allocation(6, {1, 3}));
  const auto report = analyze(trace, kGeometry);
  CHECK(report.completed);
  CHECK(report.constraint_violations == 0);
  CHECK(report.overshoot_peak == 0.5);
  CHECK(report.transience.settling_time.has_value());

  const auto self = compare(report, report);
  for (const auto& row : self.rows) {
    if (!std::isnan(row.delta)) CHECK(row.delta == 0.0);
  }

  auto other = report;
  other.fingerprint = "different";
  CHECK_THROWS_AS(compare(report, other), btc::DomainError);
}

TEST_CASE("comparison is stable under report row order") {
  const auto trace = make_trace({-1, 0.2, 0.1}, constant_allocation(3, {1, 3}));
  const auto report = analyze(trace, kGeometry);
  const auto a = compare(report, report);
  const auto b = compare(report, report);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].metric == b.rows[i].metric);
    if (!std::isnan(a.rows[i].a)) CHECK(a.rows[i].a == b.rows[i].a);
  }
}
