#pragma once

#include <queue>
#include <utility>
#include <vector>

#include "assignkit/errors.hpp"
#include "assignkit/grid.hpp"
#include "assignkit/rational.hpp"

namespace assignkit {

/// Communication graph for the distributed protocols: one node per agent,
/// symmetric adjacency, an independent per-message loss probability and
/// the seed that drives loss sampling.
struct NetworkTopology {
  int n_nodes = 0;
  Grid<std::uint8_t> adjacency;
  Rational loss_probability = Rational(0);
  std::uint64_t seed = 0;

  static NetworkTopology from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                                    const Rational& loss = Rational(0), std::uint64_t seed = 0) {
    if (n < 1) throw std::invalid_argument("topology needs at least one node");
    if (loss < Rational(0) || Rational(1) < loss)
      throw std::invalid_argument("loss probability must be within [0, 1]");
    NetworkTopology t;
    t.n_nodes = n;
    t.adjacency = Grid<std::uint8_t>(n, n, 0);
    t.loss_probability = loss;
    t.seed = seed;
    for (const auto& [i, j] : edges) {
      if (i < 0 || i >= n || j < 0 || j >= n) throw std::invalid_argument("edge endpoint out of range");
      if (i == j) throw std::invalid_argument("self-loops are not allowed");
      t.adjacency(i, j) = 1;
      t.adjacency(j, i) = 1;
    }
    return t;
  }

  static NetworkTopology complete(int n, const Rational& loss = Rational(0),
                                  std::uint64_t seed = 0) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return from_edges(n, edges, loss, seed);
  }

  static NetworkTopology ring(int n, const Rational& loss = Rational(0), std::uint64_t seed = 0) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    if (n > 2) edges.emplace_back(n - 1, 0);
    return from_edges(n, edges, loss, seed);
  }

  static NetworkTopology line(int n, const Rational& loss = Rational(0), std::uint64_t seed = 0) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return from_edges(n, edges, loss, seed);
  }

  [[nodiscard]] std::vector<int> neighbors(int i) const {
    std::vector<int> out;
    for (int j = 0; j < n_nodes; ++j)
      if (adjacency(i, j)) out.push_back(j);
    return out;
  }

  [[nodiscard]] std::vector<int> bfs_depths(int source) const {
    std::vector<int> depth(n_nodes, -1);
    std::queue<int> q;
    depth[source] = 0;
    q.push(source);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v = 0; v < n_nodes; ++v)
        if (adjacency(u, v) && depth[v] == -1) {
          depth[v] = depth[u] + 1;
          q.push(v);
        }
    }
    return depth;
  }

  [[nodiscard]] bool connected() const {
    for (int d : bfs_depths(0))
      if (d == -1) return false;
    return true;
  }

  /// Longest shortest path; bounded by n - 1 on a connected graph.
  [[nodiscard]] int diameter() const {
    int best = 0;
    for (int s = 0; s < n_nodes; ++s)
      for (int d : bfs_depths(s)) {
        if (d == -1) throw std::invalid_argument("diameter of a disconnected topology");
        best = std::max(best, d);
      }
    return best;
  }
};

}  // namespace assignkit
