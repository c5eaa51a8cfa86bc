#pragma once

#include <span>
#include <utility>
#include <vector>

#include "btc/matrix.hpp"

namespace btc {

/// Undirected edge between two node indices (0-based, stored with
/// first < second).
using Edge = std::pair<int, int>;

/// True iff the undirected graph on `node_count` nodes with the given
/// edges has a single connected component. A single node is connected.
bool is_connected(int node_count, std::span<const Edge> edges);

/// Nodes unreachable from node 0 (empty when connected).
std::vector<int> unreachable_nodes(int node_count, std::span<const Edge> edges);

/// Communication topology among actuator agents. Immutable after
/// construction; construction enforces: no self-loops, symmetry
/// (edges are undirected), connectivity.
class CommGraph {
 public:
  static CommGraph ring(int n);
  static CommGraph path(int n);
  static CommGraph complete(int n);

  /// Builds from an explicit edge list. Throws DomainError for
  /// self-loops, out-of-range indices, or a disconnected graph (the
  /// message lists the unreachable nodes).
  static CommGraph from_edges(int n, std::vector<Edge> edges);

  int node_count() const { return node_count_; }

  /// Sorted edge list, each edge once with first < second.
  const std::vector<Edge>& edges() const { return edges_; }

  /// Sorted neighbor ids of node i; never contains i itself.
  const std::vector<int>& neighbors(int i) const;

  bool has_edge(int i, int j) const;

  /// 0/1 adjacency matrix.
  Matrix adjacency() const;

  /// Graph Laplacian: diagonal holds degrees, off-diagonal -1 per edge.
  /// Symmetric with zero row sums.
  Matrix laplacian() const;

 private:
  CommGraph(int n, std::vector<Edge> edges);

  int node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> neighbors_;
};

}  // namespace btc
