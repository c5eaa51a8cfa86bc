#include "btc/controllers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "btc/errors.hpp"

namespace btc {

namespace {

void check_payoff(std::span<const double> f, int n) {
  if (static_cast<int>(f.size()) != n) {
    std::ostringstream msg;
    msg << "payoff vector has " << f.size() << " components, expected " << n;
    throw DomainError(msg.str());
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!std::isfinite(f[i])) {
      std::ostringstream msg;
      msg << "non-finite payoff component " << i;
      throw DomainError(msg.str());
    }
  }
}

void check_graph(const CommGraph& graph, int n) {
  if (graph.node_count() != n) {
    std::ostringstream msg;
    msg << "graph has " << graph.node_count() << " nodes, state has " << n << " components";
    throw DomainError(msg.str());
  }
}

}  // namespace

std::string to_string(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::Ded: return "ded";
    case ControllerKind::Ed: return "ed";
    case ControllerKind::Dip: return "dip";
  }
  return "unknown";
}

ControllerKind controller_kind_from_string(const std::string& name) {
  if (name == "ded") return ControllerKind::Ded;
  if (name == "ed") return ControllerKind::Ed;
  if (name == "dip") return ControllerKind::Dip;
  throw DomainError("unknown controller kind '" + name + "' (expected ded, ed, or dip)");
}

double weighted_average_payoff(const BoundedSimplex& g, std::span<const double> x,
                               std::span<const double> f) {
  check_payoff(f, g.size());
  const auto phi = escort(g, x);
  const double total = std::accumulate(phi.begin(), phi.end(), 0.0);
  if (!(total > 0.0))
    throw DomainError("degenerate state: escort weights sum to zero (all components on bounds)");
  double weighted = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) weighted += phi[i] * f[i];
  return weighted / total;
}

std::vector<double> ed_velocity(const BoundedSimplex& g, std::span<const double> x,
                                std::span<const double> f) {
  const double f_phi = weighted_average_payoff(g, x, f);
  const auto phi = escort(g, x);
  std::vector<double> v(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) v[i] = phi[i] * (f[i] - f_phi);
  return v;
}

std::vector<double> ded_velocity(const BoundedSimplex& g, std::span<const double> x,
                                 std::span<const double> f, const CommGraph& graph) {
  check_payoff(f, g.size());
  check_graph(graph, g.size());
  const auto phi = escort(g, x);
  std::vector<double> v(phi.size(), 0.0);
  // Accumulate per edge so the antisymmetric flows cancel exactly.
  for (const auto& [i, j] : graph.edges()) {
    const auto a = static_cast<std::size_t>(i);
    const auto b = static_cast<std::size_t>(j);
    const double flow = phi[a] * phi[b] * (f[b] - f[a]);
    v[a] += flow;
    v[b] -= flow;
  }
  return v;
}

Matrix link_weights(const BoundedSimplex& g, std::span<const double> x, const CommGraph& graph) {
  check_graph(graph, g.size());
  const auto phi = escort(g, x);
  const auto n = static_cast<std::size_t>(g.size());
  Matrix rho(n, n);
  for (const auto& [i, j] : graph.edges()) {
    const auto a = static_cast<std::size_t>(i);
    const auto b = static_cast<std::size_t>(j);
    const double w = phi[a] * phi[b];
    rho(a, b) = w;
    rho(b, a) = w;
  }
  return rho;
}

std::vector<double> ded_velocity_weighted(std::span<const double> f, const Matrix& rho) {
  if (!rho.square()) throw DomainError("link-weight matrix must be square");
  const auto n = rho.rows();
  check_payoff(f, static_cast<int>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (rho(i, i) != 0.0) throw DomainError("link-weight matrix must have a zero diagonal");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rho(i, j) != rho(j, i))
        throw DomainError("link-weight matrix must be symmetric");
      if (rho(i, j) < 0.0) throw DomainError("link-weight matrix must be nonnegative");
    }
  }
  std::vector<double> v(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w = rho(i, j);
      if (w == 0.0) continue;
      const double flow = w * (f[j] - f[i]);
      v[i] += flow;
      v[j] -= flow;
    }
  }
  return v;
}

double barrier_gradient(double v, double lower, double upper, double epsilon) {
  return -epsilon * (1.0 / (v - lower) - 1.0 / (upper - v));
}

std::vector<double> dip_payoff(std::span<const double> f, std::span<const double> v,
                               const BoundedSimplex& g, double epsilon) {
  check_payoff(f, g.size());
  if (static_cast<int>(v.size()) != g.size())
    throw DomainError("allocation vector length does not match geometry");
  if (epsilon < 0.0) throw DomainError("barrier weight must be nonnegative");
  const auto lo = g.lower();
  const auto up = g.upper();
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > lo[i] && v[i] < up[i])) {
      std::ostringstream msg;
      msg << "barrier domain error: component " << i << " = " << v[i]
          << " not strictly inside (" << lo[i] << ", " << up[i] << ")";
      throw DomainError(msg.str());
    }
    r[i] = f[i] + barrier_gradient(v[i], lo[i], up[i], epsilon);
  }
  return r;
}

std::vector<double> dip_payoff_saturated(std::span<const double> f, std::span<const double> v,
                                         const BoundedSimplex& g, double epsilon,
                                         double margin_fraction) {
  check_payoff(f, g.size());
  if (static_cast<int>(v.size()) != g.size())
    throw DomainError("allocation vector length does not match geometry");
  const auto lo = g.lower();
  const auto up = g.upper();
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double margin = margin_fraction * (up[i] - lo[i]);
    const double vi = std::clamp(v[i], lo[i] + margin, up[i] - margin);
    r[i] = f[i] + barrier_gradient(vi, lo[i], up[i], epsilon);
  }
  return r;
}

std::vector<double> dip_velocity(std::span<const double> v, std::span<const double> r,
                                 const CommGraph& graph) {
  if (v.size() != r.size())
    throw DomainError("allocation and payoff vectors differ in length");
  check_payoff(r, graph.node_count());
  std::vector<double> out(v.size(), 0.0);
  for (const auto& [i, j] : graph.edges()) {
    const auto a = static_cast<std::size_t>(i);
    const auto b = static_cast<std::size_t>(j);
    const double flow = r[b] - r[a];
    out[a] += flow;
    out[b] -= flow;
  }
  return out;
}

}  // namespace btc
