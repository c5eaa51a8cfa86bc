#include "btc/graph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "btc/errors.hpp"

namespace btc {

namespace {

std::vector<std::vector<int>> adjacency_lists(int node_count, std::span<const Edge> edges) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(node_count));
  for (const auto& [a, b] : edges) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  return adj;
}

}  // namespace

std::vector<int> unreachable_nodes(int node_count, std::span<const Edge> edges) {
  if (node_count <= 0) return {};
  auto adj = adjacency_lists(node_count, edges);
  std::vector<char> seen(static_cast<std::size_t>(node_count), 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop();
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        frontier.push(w);
      }
    }
  }
  std::vector<int> missing;
  for (int v = 0; v < node_count; ++v)
    if (!seen[static_cast<std::size_t>(v)]) missing.push_back(v);
  return missing;
}

bool is_connected(int node_count, std::span<const Edge> edges) {
  return unreachable_nodes(node_count, edges).empty();
}

CommGraph::CommGraph(int n, std::vector<Edge> edges)
    : node_count_(n), edges_(std::move(edges)) {
  neighbors_.resize(static_cast<std::size_t>(n));
  for (const auto& [a, b] : edges_) {
    neighbors_[static_cast<std::size_t>(a)].push_back(b);
    neighbors_[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& nbrs : neighbors_) std::sort(nbrs.begin(), nbrs.end());
}

CommGraph CommGraph::from_edges(int n, std::vector<Edge> edges) {
  if (n < 2) throw DomainError("graph requires at least 2 nodes");
  for (auto& [a, b] : edges) {
    if (a == b) {
      std::ostringstream msg;
      msg << "graph edge (" << a << "," << b << ") is a self-loop";
      throw DomainError(msg.str());
    }
    if (a < 0 || b < 0 || a >= n || b >= n) {
      std::ostringstream msg;
      msg << "graph edge (" << a << "," << b << ") out of range for " << n << " nodes";
      throw DomainError(msg.str());
    }
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  auto missing = unreachable_nodes(n, edges);
  if (!missing.empty()) {
    std::ostringstream msg;
    msg << "graph is not connected; unreachable nodes (0-based):";
    for (int v : missing) msg << ' ' << v;
    throw DomainError(msg.str());
  }
  return CommGraph(n, std::move(edges));
}

CommGraph CommGraph::ring(int n) {
  if (n < 2) throw DomainError("ring graph requires at least 2 nodes");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  if (n > 2) edges.emplace_back(0, n - 1);
  return from_edges(n, std::move(edges));
}

CommGraph CommGraph::path(int n) {
  if (n < 2) throw DomainError("path graph requires at least 2 nodes");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return from_edges(n, std::move(edges));
}

CommGraph CommGraph::complete(int n) {
  if (n < 2) throw DomainError("complete graph requires at least 2 nodes");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return from_edges(n, std::move(edges));
}

const std::vector<int>& CommGraph::neighbors(int i) const {
  if (i < 0 || i >= node_count_) {
    std::ostringstream msg;
    msg << "node id " << i << " out of range for " << node_count_ << " nodes";
    throw DomainError(msg.str());
  }
  return neighbors_[static_cast<std::size_t>(i)];
}

bool CommGraph::has_edge(int i, int j) const {
  if (i == j) return false;
  const auto& nbrs = neighbors(i);
  return std::binary_search(nbrs.begin(), nbrs.end(), j);
}

Matrix CommGraph::adjacency() const {
  auto n = static_cast<std::size_t>(node_count_);
  Matrix a(n, n);
  for (const auto& [i, j] : edges_) {
    a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = 1.0;
    a(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = 1.0;
  }
  return a;
}

Matrix CommGraph::laplacian() const {
  auto n = static_cast<std::size_t>(node_count_);
  Matrix l(n, n);
  for (const auto& [i, j] : edges_) {
    auto a = static_cast<std::size_t>(i);
    auto b = static_cast<std::size_t>(j);
    l(a, b) = -1.0;
    l(b, a) = -1.0;
    l(a, a) += 1.0;
    l(b, b) += 1.0;
  }
  return l;
}

}  // namespace btc
