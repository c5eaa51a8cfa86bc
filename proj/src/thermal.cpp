#include "btc/thermal.hpp"

#include <cmath>
#include <sstream>

#include "btc/errors.hpp"
#include "btc/graph.hpp"

namespace btc {

namespace {

void check_finite(std::span<const double> values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      std::ostringstream msg;
      msg << "non-finite " << what << " component " << i;
      throw DomainError(msg.str());
    }
  }
}

}  // namespace

BuildingNetwork::BuildingNetwork(std::vector<Zone> zones, Matrix conductance)
    : zones_(std::move(zones)), conductance_(std::move(conductance)) {
  const auto n = zones_.size();
  if (n == 0) throw DomainError("building needs at least one zone");
  bool seen_wall = false;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& z = zones_[i];
    if (!(z.capacitance > 0.0)) {
      std::ostringstream msg;
      msg << "zone " << i << " capacitance must be positive";
      throw DomainError(msg.str());
    }
    if (z.ambient_conductance < 0.0) {
      std::ostringstream msg;
      msg << "zone " << i << " ambient conductance must be nonnegative";
      throw DomainError(msg.str());
    }
    if (z.kind == ZoneKind::Wall) seen_wall = true;
    else if (seen_wall)
      throw DomainError("zones must list all rooms before any wall");
    if (z.kind == ZoneKind::Room) ++room_count_;
  }
  if (room_count_ == 0) throw DomainError("building needs at least one room");

  if (conductance_.rows() != n || conductance_.cols() != n)
    throw DomainError("conductance matrix size does not match zone count");
  for (std::size_t i = 0; i < n; ++i) {
    if (conductance_(i, i) != 0.0)
      throw DomainError("conductance matrix must have a zero diagonal");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (conductance_(i, j) != conductance_(j, i))
        throw DomainError("conductance matrix must be symmetric");
      if (conductance_(i, j) < 0.0)
        throw DomainError("conductances must be nonnegative");
      if (conductance_(i, j) > 0.0)
        links_.push_back({static_cast<int>(i), static_cast<int>(j), conductance_(i, j)});
    }
  }

  // Zone adjacency (conduction plus ambient contact) must be connected;
  // ambient is modeled as one extra node shared by every zone touching it.
  if (n > 1) {
    std::vector<Edge> edges;
    for (const auto& link : links_) edges.emplace_back(link.a, link.b);
    int nodes = static_cast<int>(n);
    bool any_ambient = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (zones_[i].ambient_conductance > 0.0) {
        any_ambient = true;
        edges.emplace_back(static_cast<int>(i), static_cast<int>(n));
      }
    }
    if (any_ambient) ++nodes;
    if (!is_connected(nodes, edges))
      throw DomainError("building thermal network is not connected");
  }
}

BuildingNetwork BuildingNetwork::corridor(int rooms, const CorridorParams& params) {
  if (rooms < 1) throw DomainError("corridor layout needs at least one room");
  const int interior = rooms - 1;
  const int exterior = rooms;
  const int n = rooms + interior + exterior;

  std::vector<Zone> zones;
  zones.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < rooms; ++i)
    zones.push_back({ZoneKind::Room, params.room_capacitance, 0.0});
  for (int i = 0; i < interior; ++i)
    zones.push_back({ZoneKind::Wall, params.wall_capacitance, 0.0});
  for (int i = 0; i < exterior; ++i)
    zones.push_back({ZoneKind::Wall, params.wall_capacitance, params.wall_ambient_conductance});

  Matrix alpha(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  auto connect = [&](int a, int b, double value) {
    alpha(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) = value;
    alpha(static_cast<std::size_t>(b), static_cast<std::size_t>(a)) = value;
  };
  for (int i = 0; i < interior; ++i) {
    const int wall = rooms + i;  // between room i and room i+1
    connect(i, wall, params.room_wall_conductance);
    connect(i + 1, wall, params.room_wall_conductance);
  }
  for (int i = 0; i < exterior; ++i) {
    const int wall = rooms + interior + i;  // exterior wall of room i
    connect(i, wall, params.room_wall_conductance);
  }
  return BuildingNetwork(std::move(zones), std::move(alpha));
}

std::vector<double> zone_derivative(const BuildingNetwork& net, std::span<const double> t,
                                    double ambient, std::span<const double> u,
                                    std::span<const double> d) {
  const auto n = static_cast<std::size_t>(net.zone_count());
  const auto k = static_cast<std::size_t>(net.room_count());
  if (t.size() != n) throw DomainError("temperature vector length does not match zone count");
  if (u.size() != k) throw DomainError("allocation vector length does not match room count");
  if (!d.empty() && d.size() != n)
    throw DomainError("disturbance vector length does not match zone count");
  check_finite(t, "temperature");
  check_finite(u, "allocation");
  check_finite(d, "disturbance");
  if (!std::isfinite(ambient)) throw DomainError("non-finite ambient temperature");

  // Power balance per zone, then divide by capacitance. Conduction is
  // accumulated per link so paired flows cancel exactly.
  std::vector<double> power(n, 0.0);
  for (const auto& link : net.links()) {
    const auto a = static_cast<std::size_t>(link.a);
    const auto b = static_cast<std::size_t>(link.b);
    const double flow = link.conductance * (t[b] - t[a]);
    power[a] += flow;
    power[b] -= flow;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& z = net.zone(i);
    if (z.ambient_conductance > 0.0) power[i] += z.ambient_conductance * (ambient - t[i]);
    if (z.kind == ZoneKind::Room) {
      power[i] += u[i];
      if (!d.empty()) power[i] += d[i];
    }
  }
  std::vector<double> rate(n);
  for (std::size_t i = 0; i < n; ++i) rate[i] = power[i] / net.zone(i).capacitance;
  return rate;
}

std::vector<double> step_plant(const BuildingNetwork& net, std::span<const double> t,
                               double ambient, std::span<const double> u,
                               std::span<const double> d, double dt) {
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  auto rate = zone_derivative(net, t, ambient, u, d);
  std::vector<double> next(t.begin(), t.end());
  for (std::size_t i = 0; i < next.size(); ++i) next[i] += dt * rate[i];
  return next;
}

std::vector<double> payoff(std::span<const double> room_temperatures,
                           std::span<const double> setpoints) {
  if (room_temperatures.size() != setpoints.size())
    throw DomainError("temperature and setpoint vectors differ in length");
  std::vector<double> f(room_temperatures.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = room_temperatures[i] - setpoints[i];
  return f;
}

double objective_value(std::span<const double> room_temperatures,
                       std::span<const double> setpoints) {
  if (room_temperatures.size() != setpoints.size())
    throw DomainError("temperature and setpoint vectors differ in length");
  double sum = 0.0;
  for (std::size_t i = 0; i < room_temperatures.size(); ++i) {
    const double dev = room_temperatures[i] - setpoints[i];
    sum += dev * dev / 2.0;
  }
  return sum;
}

}  // namespace btc
