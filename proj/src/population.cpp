#include "btc/population.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numeric>
#include <sstream>

#include "btc/errors.hpp"

namespace btc {

namespace {

void check_dimensions(const BoundedSimplex& g, std::span<const double> x) {
  if (static_cast<int>(x.size()) != g.size()) {
    std::ostringstream msg;
    msg << "state has " << x.size() << " components, geometry expects " << g.size();
    throw DomainError(msg.str());
  }
}

}  // namespace

BoundedSimplex::BoundedSimplex(std::vector<double> lower, std::vector<double> upper, double total)
    : lower_(std::move(lower)), upper_(std::move(upper)), total_(total) {
  if (lower_.size() != upper_.size())
    throw DomainError("bound vectors differ in length");
  if (lower_.size() < 2)
    throw DomainError("geometry requires at least 2 strategies");
  if (!std::isfinite(total_)) throw DomainError("total mass must be finite");
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i])) {
      std::ostringstream msg;
      msg << "non-finite bound for component " << i;
      throw DomainError(msg.str());
    }
    if (lower_[i] < 0.0) {
      std::ostringstream msg;
      msg << "violated lower_" << i << " >= 0 (got " << lower_[i] << ")";
      throw DomainError(msg.str());
    }
    if (!(lower_[i] < upper_[i])) {
      std::ostringstream msg;
      msg << "violated lower_" << i << " < upper_" << i << " (got " << lower_[i]
          << " >= " << upper_[i] << ")";
      throw DomainError(msg.str());
    }
  }
  const double lo_sum = std::accumulate(lower_.begin(), lower_.end(), 0.0);
  const double up_sum = std::accumulate(upper_.begin(), upper_.end(), 0.0);
  sigma_lo_ = total_ - lo_sum;
  sigma_up_ = total_ - up_sum;
  if (!(sigma_lo_ > 0.0)) {
    std::ostringstream msg;
    msg << "violated sigma_lo > 0: total " << total_ << " <= sum of lower bounds " << lo_sum;
    throw DomainError(msg.str());
  }
  if (!(sigma_up_ < 0.0)) {
    std::ostringstream msg;
    msg << "violated sigma_up < 0: total " << total_ << " >= sum of upper bounds " << up_sum;
    throw DomainError(msg.str());
  }
}

bool BoundedSimplex::contains(std::span<const double> x, double bound_tol) const {
  if (static_cast<int>(x.size()) != size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < lower_[i] - bound_tol || x[i] > upper_[i] + bound_tol) return false;
  return true;
}

bool BoundedSimplex::is_interior(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(x[i] > lower_[i] && x[i] < upper_[i])) return false;
  return true;
}

void BoundedSimplex::check_state(std::span<const double> x, double bound_tol,
                                 double mass_tol) const {
  check_dimensions(*this, x);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) {
      std::ostringstream msg;
      msg << "non-finite state component " << i;
      throw DomainError(msg.str());
    }
    if (x[i] < lower_[i] - bound_tol || x[i] > upper_[i] + bound_tol) {
      std::ostringstream msg;
      msg << "component " << i << " = " << x[i] << " outside bounds [" << lower_[i] << ", "
          << upper_[i] << "]";
      throw DomainError(msg.str());
    }
  }
  const double sum = std::accumulate(x.begin(), x.end(), 0.0);
  if (std::abs(sum - total_) > mass_tol) {
    std::ostringstream msg;
    msg << "state mass " << sum << " differs from total " << total_ << " by more than "
        << mass_tol;
    throw DomainError(msg.str());
  }
}

int BoundedSimplex::clamp_to_bounds(std::span<double> x, double tol) const {
  check_dimensions(*this, x);
  int clamped = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lower_[i]) {
      if (lower_[i] - x[i] > tol) {
        std::ostringstream msg;
        msg << "component " << i << " = " << x[i] << " breaches lower bound " << lower_[i]
            << " beyond tolerance " << tol;
        throw DomainError(msg.str());
      }
      x[i] = lower_[i];
      ++clamped;
    } else if (x[i] > upper_[i]) {
      if (x[i] - upper_[i] > tol) {
        std::ostringstream msg;
        msg << "component " << i << " = " << x[i] << " breaches upper bound " << upper_[i]
            << " beyond tolerance " << tol;
        throw DomainError(msg.str());
      }
      x[i] = upper_[i];
      ++clamped;
    }
  }
  return clamped;
}

std::vector<double> eta(const BoundedSimplex& g, std::span<const double> x) {
  check_dimensions(g, x);
  std::vector<double> out(x.size());
  const auto lo = g.lower();
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - lo[i]) / g.sigma_lo();
  return out;
}

std::vector<double> xi(const BoundedSimplex& g, std::span<const double> x) {
  check_dimensions(g, x);
  std::vector<double> out(x.size());
  const auto up = g.upper();
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - up[i]) / g.sigma_up();
  return out;
}

std::vector<double> escort(const BoundedSimplex& g, std::span<const double> x) {
  check_dimensions(g, x);
  std::vector<double> out(x.size());
  const auto lo = g.lower();
  const auto up = g.upper();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double eta_i = (x[i] - lo[i]) / g.sigma_lo();
    const double xi_i = (x[i] - up[i]) / g.sigma_up();
    out[i] = eta_i * xi_i;
  }
  return out;
}

double escort_total(const BoundedSimplex& g, std::span<const double> x) {
  const auto phi = escort(g, x);
  return std::accumulate(phi.begin(), phi.end(), 0.0);
}

std::vector<double> escort_distribution(const BoundedSimplex& g, std::span<const double> x) {
  auto phi = escort(g, x);
  const double sum = std::accumulate(phi.begin(), phi.end(), 0.0);
  if (!(sum > 0.0))
    throw DomainError("degenerate state: escort weights sum to zero (all components on bounds)");
  for (double& v : phi) v /= sum;
  return phi;
}

std::pair<Matrix, Matrix> vertex_matrices(const BoundedSimplex& g) {
  const auto n = static_cast<std::size_t>(g.size());
  Matrix s_lo(n, n);
  Matrix s_up(n, n);
  const auto lo = g.lower();
  const auto up = g.upper();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      s_lo(i, j) = lo[i];
      s_up(i, j) = up[i];
    }
    s_lo(i, i) += g.sigma_lo();
    s_up(i, i) += g.sigma_up();
  }
  return {std::move(s_lo), std::move(s_up)};
}

SimplexCoordinates simplex_coordinates(const BoundedSimplex& g, std::span<const double> x) {
  check_dimensions(g, x);
  const auto [s_lo, s_up] = vertex_matrices(g);
  const auto n = static_cast<Eigen::Index>(g.size());

  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      a_lo(s_lo.data(), n, n), a_up(s_up.data(), n, n);
  Eigen::Map<const Eigen::VectorXd> b(x.data(), n);

  Eigen::PartialPivLU<Eigen::MatrixXd> lu_lo(a_lo);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_up(a_up);
  Eigen::VectorXd eta_v = lu_lo.solve(b);
  Eigen::VectorXd xi_v = lu_up.solve(b);
  if (!eta_v.allFinite() || !xi_v.allFinite())
    throw DomainError("internal error: vertex matrix solve produced non-finite coordinates");

  SimplexCoordinates out;
  out.eta.assign(eta_v.data(), eta_v.data() + n);
  out.xi.assign(xi_v.data(), xi_v.data() + n);
  return out;
}

}  // namespace btc
