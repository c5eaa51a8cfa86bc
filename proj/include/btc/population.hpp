#pragma once

#include <span>
#include <utility>
#include <vector>

#include "btc/matrix.hpp"

namespace btc {

/// Feasible region for an allocation vector: the mass-`total` simplex
/// intersected with per-component box bounds. Nonempty interior is
/// enforced at construction via the sign conditions on sigma_lo /
/// sigma_up.
class BoundedSimplex {
 public:
  /// Throws DomainError naming the first violated inequality.
  BoundedSimplex(std::vector<double> lower, std::vector<double> upper, double total);

  int size() const { return static_cast<int>(lower_.size()); }
  double total() const { return total_; }
  std::span<const double> lower() const { return lower_; }
  std::span<const double> upper() const { return upper_; }

  /// total - sum(lower); positive for a valid geometry.
  double sigma_lo() const { return sigma_lo_; }
  /// total - sum(upper); negative for a valid geometry.
  double sigma_up() const { return sigma_up_; }

  bool contains(std::span<const double> x, double bound_tol = 0.0) const;
  bool is_interior(std::span<const double> x) const;

  /// Verifies dimensions, bounds within `bound_tol`, and
  /// |sum(x) - total| <= `mass_tol`. Throws DomainError naming the
  /// offending component.
  void check_state(std::span<const double> x, double bound_tol, double mass_tol) const;

  /// Clamps components drifting outside the box by at most `tol` back
  /// onto the bound; returns the number of clamped components. Larger
  /// breaches throw DomainError naming the component.
  int clamp_to_bounds(std::span<double> x, double tol) const;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
  double total_ = 0.0;
  double sigma_lo_ = 0.0;
  double sigma_up_ = 0.0;
};

/// Barycentric coordinates on the lower-bound simplex:
/// eta_i = (x_i - lower_i) / sigma_lo. Sums to 1 when sum(x) = total.
std::vector<double> eta(const BoundedSimplex& g, std::span<const double> x);

/// Barycentric coordinates on the upper-bound simplex:
/// xi_i = (x_i - upper_i) / sigma_up. Sums to 1 when sum(x) = total.
std::vector<double> xi(const BoundedSimplex& g, std::span<const double> x);

/// Escort weights phi_i = eta_i * xi_i. Nonnegative on the feasible
/// box and exactly zero on either bound.
std::vector<double> escort(const BoundedSimplex& g, std::span<const double> x);

/// Phi = sum of escort weights.
double escort_total(const BoundedSimplex& g, std::span<const double> x);

/// phi / Phi as a probability vector. Throws DomainError when every
/// component sits on a bound (Phi = 0).
std::vector<double> escort_distribution(const BoundedSimplex& g, std::span<const double> x);

/// Vertex matrices of the two bounding simplices: S_lo has columns
/// lower + sigma_lo * e_j, S_up has columns upper + sigma_up * e_j.
/// Both are invertible for a valid geometry.
std::pair<Matrix, Matrix> vertex_matrices(const BoundedSimplex& g);

struct SimplexCoordinates {
  std::vector<double> eta;
  std::vector<double> xi;
};

/// Recovers (eta, xi) by solving S_lo * eta = x and S_up * xi = x.
/// Matches the closed forms above to solver precision; kept as an
/// independent route for validating the vertex-matrix construction.
SimplexCoordinates simplex_coordinates(const BoundedSimplex& g, std::span<const double> x);

}  // namespace btc
