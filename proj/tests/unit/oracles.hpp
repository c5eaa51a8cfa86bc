#pragma once

// Independent reference implementations and randomized-input generators
// for the test suites. Everything here recomputes results term by term
// from the defining formulas, deliberately sharing no code with the
// library paths it checks.

#include <cmath>
#include <random>
#include <vector>

#include "btc/graph.hpp"
#include "btc/population.hpp"

namespace oracle {

struct Rng {
  std::mt19937_64 engine;

  explicit Rng(std::uint64_t seed) : engine(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine);
  }
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine);
  }
};

// ---- escort / dynamics reference formulas ---------------------------------

inline std::vector<double> escort(const std::vector<double>& x, const std::vector<double>& lo,
                                  const std::vector<double>& up, double total) {
  double lo_sum = 0.0, up_sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lo_sum += lo[i];
    up_sum += up[i];
  }
  const double sigma_lo = total - lo_sum;
  const double sigma_up = total - up_sum;
  std::vector<double> phi(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    phi[i] = ((x[i] - lo[i]) / sigma_lo) * ((x[i] - up[i]) / sigma_up);
  return phi;
}

// Neighbor-sum form, evaluated per node straight from the definition.
inline std::vector<double> ded_velocity(const std::vector<double>& x,
                                        const std::vector<double>& lo,
                                        const std::vector<double>& up, double total,
                                        const std::vector<double>& f, const btc::CommGraph& graph) {
  const auto phi = escort(x, lo, up, total);
  std::vector<double> v(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    double acc = 0.0;
    for (int j : graph.neighbors(static_cast<int>(i)))
      acc += phi[static_cast<std::size_t>(j)] * (f[static_cast<std::size_t>(j)] - f[i]);
    v[i] = phi[i] * acc;
  }
  return v;
}

inline std::vector<double> ed_velocity(const std::vector<double>& x, const std::vector<double>& lo,
                                       const std::vector<double>& up, double total,
                                       const std::vector<double>& f) {
  const auto phi = escort(x, lo, up, total);
  double big_phi = 0.0, weighted = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    big_phi += phi[i];
    weighted += phi[i] * f[i];
  }
  const double f_phi = weighted / big_phi;
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = phi[i] * (f[i] - f_phi);
  return v;
}

// Zone temperature rates evaluated with the full double loop over the
// conductance matrix (the library accumulates per link instead).
inline std::vector<double> zone_derivative(const std::vector<double>& theta,
                                           const std::vector<int>& is_room,
                                           const btc::Matrix& alpha,
                                           const std::vector<double>& ambient_alpha,
                                           const std::vector<double>& t, double ambient,
                                           const std::vector<double>& u,
                                           const std::vector<double>& d) {
  const std::size_t n = t.size();
  std::vector<double> rate(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double power = 0.0;
    for (std::size_t j = 0; j < n; ++j) power += alpha(i, j) * (t[j] - t[i]);
    power += ambient_alpha[i] * (ambient - t[i]);
    if (is_room[i]) power += u[i] + (d.empty() ? 0.0 : d[i]);
    rate[i] = power / theta[i];
  }
  return rate;
}

// ---- randomized instances --------------------------------------------------

struct Instance {
  std::vector<double> lower;
  std::vector<double> upper;
  double total = 0.0;
  std::vector<double> x;  // strictly interior, sums to total

  btc::BoundedSimplex geometry() const { return {lower, upper, total}; }
};

// Builds the box around a sampled interior point, so feasibility and
// strict interiority hold by construction.
inline Instance random_instance(Rng& rng, int n) {
  Instance inst;
  inst.x.resize(static_cast<std::size_t>(n));
  inst.lower.resize(static_cast<std::size_t>(n));
  inst.upper.resize(static_cast<std::size_t>(n));
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const double xi = rng.uniform(0.5, 2.0);
    inst.x[idx] = xi;
    inst.lower[idx] = xi - rng.uniform(0.05, std::min(0.45, xi));
    inst.upper[idx] = xi + rng.uniform(0.05, 1.5);
    total += xi;
  }
  inst.total = total;
  return inst;
}

inline std::vector<double> random_payoff(Rng& rng, int n, double scale = 10.0) {
  std::vector<double> f(static_cast<std::size_t>(n));
  for (auto& v : f) v = rng.uniform(-scale, scale);
  return f;
}

// Random spanning tree plus a sprinkling of extra edges.
inline btc::CommGraph random_connected_graph(Rng& rng, int n) {
  std::vector<btc::Edge> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(rng.uniform_int(0, i - 1), i);
  const int extras = rng.uniform_int(0, n);
  for (int e = 0; e < extras; ++e) {
    const int a = rng.uniform_int(0, n - 1);
    const int b = rng.uniform_int(0, n - 1);
    if (a != b) edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  return btc::CommGraph::from_edges(n, std::move(edges));
}

}  // namespace oracle
