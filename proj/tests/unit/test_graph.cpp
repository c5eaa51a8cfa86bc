#include <doctest.h>

#include "btc/errors.hpp"
#include "btc/graph.hpp"
#include "oracles.hpp"

using btc::CommGraph;
using btc::Edge;

TEST_CASE("builders produce the expected edge lists") {
  CHECK(CommGraph::path(3).edges() == std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(CommGraph::complete(3).edges() == std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
  CHECK(CommGraph::ring(2).edges() == std::vector<Edge>{{0, 1}});  // degenerates to one edge
  CHECK(CommGraph::ring(4).edges() == std::vector<Edge>{{0, 1}, {0, 3}, {1, 2}, {2, 3}});
  CHECK_THROWS_AS(CommGraph::ring(1), btc::DomainError);
}

TEST_CASE("disconnected custom edge lists are rejected naming the missing nodes") {
  try {
    CommGraph::from_edges(3, {{0, 1}});
    FAIL("expected DomainError");
  } catch (const btc::DomainError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("not connected") != std::string::npos);
    CHECK(msg.find("2") != std::string::npos);
  }
  CHECK_THROWS_AS(CommGraph::from_edges(3, {{0, 0}, {1, 2}}), btc::DomainError);  // self-loop
  CHECK_THROWS_AS(CommGraph::from_edges(3, {{0, 5}}), btc::DomainError);          // out of range
}

TEST_CASE("laplacian matches the degree/adjacency definition") {
  const auto path3 = CommGraph::path(3).laplacian();
  const double expected_path[3][3] = {{1, -1, 0}, {-1, 2, -1}, {0, -1, 1}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(path3(i, j) == expected_path[i][j]);

  const auto k3 = CommGraph::complete(3).laplacian();
  const double expected_k3[3][3] = {{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(k3(i, j) == expected_k3[i][j]);

  const auto pair = CommGraph::from_edges(2, {{0, 1}}).laplacian();
  CHECK(pair(0, 0) == 1.0);
  CHECK(pair(0, 1) == -1.0);
  CHECK(pair(1, 0) == -1.0);
  CHECK(pair(1, 1) == 1.0);
}

TEST_CASE("neighbors") {
  const auto path3 = CommGraph::path(3);
  CHECK(path3.neighbors(1) == std::vector<int>{0, 2});
  CHECK(path3.neighbors(0) == std::vector<int>{1});
  CHECK(CommGraph::complete(4).neighbors(0) == std::vector<int>{1, 2, 3});
  CHECK_THROWS_AS(path3.neighbors(3), btc::DomainError);
  CHECK_THROWS_AS(path3.neighbors(-1), btc::DomainError);
}

TEST_CASE("connectivity checks") {
  std::vector<Edge> path5 = {{0, 1}, {1, 2}, {2, 3}, {3, 4}};
  CHECK(btc::is_connected(5, path5));
  std::vector<Edge> disjoint = {{0, 1}, {2, 3}};
  CHECK_FALSE(btc::is_connected(4, disjoint));
  CHECK(btc::unreachable_nodes(4, disjoint) == std::vector<int>{2, 3});
  CHECK(btc::is_connected(1, {}));  // single node is vacuously connected
}

TEST_CASE("structural invariants hold on random graphs") {
  oracle::Rng rng(2024);
  for (int iter = 0; iter < 50; ++iter) {
    const int n = rng.uniform_int(2, 15);
    const auto g = oracle::random_connected_graph(rng, n);

    const auto lap = g.laplacian();
    for (std::size_t i = 0; i < lap.rows(); ++i) {
      double row_sum = 0.0;
      for (std::size_t j = 0; j < lap.cols(); ++j) row_sum += lap(i, j);
      CHECK(row_sum == 0.0);  // integer-valued entries, exact cancellation
    }

    CHECK(g.adjacency().is_symmetric());
    for (int i = 0; i < n; ++i) {
      for (int j : g.neighbors(i)) CHECK(j != i);
      CHECK_FALSE(g.has_edge(i, i));
    }
  }
}
