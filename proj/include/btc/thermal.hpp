#pragma once

#include <span>
#include <vector>

#include "btc/matrix.hpp"
#include "btc/profile.hpp"

namespace btc {

enum class ZoneKind { Room, Wall };

/// One thermal compartment. Rooms carry an actuator; walls are passive.
struct Zone {
  ZoneKind kind = ZoneKind::Room;
  double capacitance = 1.0;          // kWh per degC
  double ambient_conductance = 0.0;  // kW per degC, > 0 only when touching ambient
};

struct ConductionLink {
  int a = 0;
  int b = 0;
  double conductance = 0.0;  // kW per degC
};

/// Building thermal network: zones (rooms first, then walls) plus a
/// symmetric zero-diagonal conductance matrix between adjacent zones.
/// The adjacency structure, including ambient contact, must be
/// connected.
class BuildingNetwork {
 public:
  BuildingNetwork(std::vector<Zone> zones, Matrix conductance);

  struct CorridorParams {
    double room_capacitance = 2.5;        // kWh/degC
    double wall_capacitance = 5.0;        // kWh/degC
    double room_wall_conductance = 0.5;   // kW/degC
    double wall_ambient_conductance = 0.3;  // kW/degC
  };

  /// Sequential room arrangement: rooms in a corridor with an interior
  /// wall between each adjacent pair and one ambient-facing exterior
  /// wall per room. Zone order: rooms 0..k-1, interior walls, exterior
  /// walls.
  static BuildingNetwork corridor(int rooms, const CorridorParams& params);
  static BuildingNetwork corridor(int rooms) { return corridor(rooms, CorridorParams{}); }

  int zone_count() const { return static_cast<int>(zones_.size()); }
  int room_count() const { return room_count_; }
  int wall_count() const { return zone_count() - room_count_; }

  const Zone& zone(int i) const { return zones_[static_cast<std::size_t>(i)]; }
  const std::vector<Zone>& zones() const { return zones_; }
  const Matrix& conductance() const { return conductance_; }
  /// Conduction edges (a < b) with nonzero conductance.
  const std::vector<ConductionLink>& links() const { return links_; }

 private:
  std::vector<Zone> zones_;
  Matrix conductance_;
  std::vector<ConductionLink> links_;
  int room_count_ = 0;
};

/// Time profiles driving a scenario: one global ambient temperature,
/// one setpoint per room, and an optional disturbance per zone.
struct EnvironmentProfiles {
  PiecewiseLinear ambient;
  std::vector<PiecewiseLinear> setpoints;      // one per room
  std::vector<PiecewiseLinear> disturbances;   // one per zone, or empty for none
};

/// Temperature rate of every zone:
///   dt_i/dtau = [sum_j alpha_ij (t_j - t_i) + alpha_ia (ambient - t_i)
///                + v_i (u_i + d_i)] / theta_i
/// where v_i = 1 for rooms and 0 for walls. `u` has one entry per room;
/// `d` has one entry per zone or may be empty (treated as zero).
std::vector<double> zone_derivative(const BuildingNetwork& net, std::span<const double> t,
                                    double ambient, std::span<const double> u,
                                    std::span<const double> d = {});

/// Explicit Euler update t + dt * zone_derivative(...). dt must be > 0.
std::vector<double> step_plant(const BuildingNetwork& net, std::span<const double> t,
                               double ambient, std::span<const double> u,
                               std::span<const double> d, double dt);

/// Signed tracking deviation per room: f_i = t_i - setpoint_i.
std::vector<double> payoff(std::span<const double> room_temperatures,
                           std::span<const double> setpoints);

/// Quadratic tracking objective: sum (t_i - setpoint_i)^2 / 2.
double objective_value(std::span<const double> room_temperatures,
                       std::span<const double> setpoints);

}  // namespace btc
