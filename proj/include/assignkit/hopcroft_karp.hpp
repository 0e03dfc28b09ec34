#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "assignkit/instance.hpp"

namespace assignkit {

/// A bipartite edge set between `n_left` agents and `n_right` tasks.
struct BipartiteEdges {
  int n_left = 0;
  int n_right = 0;
  std::vector<std::pair<int, int>> edges;
};

/// Pairs of a maximum-cardinality matching of the given bipartite graph,
/// found with Hopcroft-Karp. The size is canonical; the pair choice
/// breaks ties toward lower indices via sorted adjacency.
inline std::vector<std::pair<int, int>> max_cardinality_pairs(const BipartiteEdges& g) {
  constexpr int kInf = std::numeric_limits<int>::max();
  std::vector<std::vector<int>> adj(g.n_left);
  for (const auto& [u, v] : g.edges) adj[u].push_back(v);
  for (auto& row : adj) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }

  std::vector<int> match_l(g.n_left, -1), match_r(g.n_right, -1), dist(g.n_left, 0);

  auto bfs = [&]() {
    std::queue<int> q;
    bool reachable_free = false;
    for (int u = 0; u < g.n_left; ++u) {
      if (match_l[u] == -1) {
        dist[u] = 0;
        q.push(u);
      } else {
        dist[u] = kInf;
      }
    }
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj[u]) {
        const int w = match_r[v];
        if (w == -1) {
          reachable_free = true;
        } else if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return reachable_free;
  };

  std::function<bool(int)> dfs = [&](int u) {
    for (int v : adj[u]) {
      const int w = match_r[v];
      if (w == -1 || (dist[w] == dist[u] + 1 && dfs(w))) {
        match_l[u] = v;
        match_r[v] = u;
        return true;
      }
    }
    dist[u] = kInf;
    return false;
  };

  while (bfs()) {
    for (int u = 0; u < g.n_left; ++u)
      if (match_l[u] == -1) dfs(u);
  }

  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < g.n_left; ++u)
    if (match_l[u] != -1) out.emplace_back(u, match_l[u]);
  return out;
}

/// Maximum-cardinality matching as a Matching value.
inline Matching max_cardinality_matching(const BipartiteEdges& g) {
  Matching m;
  m.pairs = max_cardinality_pairs(g);
  m.is_perfect = g.n_left == g.n_right && static_cast<int>(m.pairs.size()) == g.n_left;
  return m;
}

}  // namespace assignkit
