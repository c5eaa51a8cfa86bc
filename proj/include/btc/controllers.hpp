#pragma once

#include <span>
#include <string>
#include <vector>

#include "btc/graph.hpp"
#include "btc/matrix.hpp"
#include "btc/population.hpp"

namespace btc {

enum class ControllerKind { Ded, Ed, Dip };

std::string to_string(ControllerKind kind);
ControllerKind controller_kind_from_string(const std::string& name);

/// Resolved controller selection for one run. `gain` multiplies the raw
/// velocity before Euler integration; `epsilon` is the barrier weight
/// (DIP only).
struct ControllerSpec {
  ControllerKind kind = ControllerKind::Ded;
  double gain = 1.0;
  double epsilon = 0.05;
};

/// Escort-weighted average payoff sum(phi_i f_i) / Phi. Throws
/// DomainError on a degenerate state (Phi = 0).
double weighted_average_payoff(const BoundedSimplex& g, std::span<const double> x,
                               std::span<const double> f);

/// Centralized escort dynamics: v_i = phi_i (f_i - f_phi). Follows the
/// fitness convention (mass moves toward above-average payoff); with
/// tracking-error payoffs the stabilizing direction is the negative of
/// this, see the complete-graph identity with ded_velocity.
std::vector<double> ed_velocity(const BoundedSimplex& g, std::span<const double> x,
                                std::span<const double> f);

/// Distributed escort dynamics: v_i = phi_i sum_{j in N(i)} phi_j (f_j - f_i).
/// Component sums cancel edge by edge, so the total mass derivative is
/// exactly zero. A component sitting on a bound has exactly zero velocity.
std::vector<double> ded_velocity(const BoundedSimplex& g, std::span<const double> x,
                                 std::span<const double> f, const CommGraph& graph);

/// State-dependent link weights rho_ij = phi_i phi_j on edges, zero
/// elsewhere. Symmetric with zero diagonal.
Matrix link_weights(const BoundedSimplex& g, std::span<const double> x, const CommGraph& graph);

/// Link-weight form of the distributed escort dynamics:
/// v_i = sum_j rho_ij (f_j - f_i). Requires rho symmetric, nonnegative,
/// zero diagonal; equals ded_velocity when rho = link_weights(...).
std::vector<double> ded_velocity_weighted(std::span<const double> f, const Matrix& rho);

/// Derivative of the logarithmic barrier -eps * [ln(v-lo) + ln(up-v)]
/// for one component. Diverges to -inf at the lower bound and +inf at
/// the upper bound.
double barrier_gradient(double v, double lower, double upper, double epsilon);

/// Barrier-modified payoffs r_i = f_i + barrier_gradient(v_i). Requires
/// v strictly interior to the box; throws DomainError otherwise.
std::vector<double> dip_payoff(std::span<const double> f, std::span<const double> v,
                               const BoundedSimplex& g, double epsilon);

/// As dip_payoff, but evaluates the barrier on a copy of v clamped to a
/// strict-interior margin of `margin_fraction` of each component's
/// range. Keeps the consensus loop alive when an explicit step
/// overshoots a bound; the true state is left untouched.
std::vector<double> dip_payoff_saturated(std::span<const double> f, std::span<const double> v,
                                         const BoundedSimplex& g, double epsilon,
                                         double margin_fraction);

/// Interior-point consensus: v_i = sum_{j in N(i)} (r_j - r_i).
/// Edge-antisymmetric, so the total is exactly conserved.
std::vector<double> dip_velocity(std::span<const double> v, std::span<const double> r,
                                 const CommGraph& graph);

}  // namespace btc
