#pragma once

#include <algorithm>
#include <vector>

#include "assignkit/errors.hpp"
#include "assignkit/hopcroft_karp.hpp"
#include "assignkit/instance.hpp"

namespace assignkit {

struct ThresholdResult {
  Rational threshold;
  Matching matching;
  long feasibility_probes = 0;
};

namespace bottleneck_detail {

inline std::vector<Rational> sorted_distinct_allowed_weights(const AssignmentInstance& inst) {
  std::vector<Rational> vals;
  for (int i = 0; i < inst.n_agents; ++i)
    for (int j = 0; j < inst.n_tasks; ++j)
      if (inst.allowed(i, j)) vals.push_back(inst.weights(i, j));
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

}  // namespace bottleneck_detail

/// Threshold method for the bottleneck assignment problem: binary search
/// over the sorted distinct weights, probing each candidate threshold with
/// a Hopcroft-Karp perfect-matching check on the edges at or below it.
inline ThresholdResult solve_bottleneck(const AssignmentInstance& inst) {
  inst.validate();
  if (!inst.is_square()) throw std::invalid_argument("bottleneck requires a square instance");
  if (inst.sense != Sense::MinimizeCost)
    throw std::invalid_argument("bottleneck requires MinimizeCost sense");
  const int n = inst.n_agents;
  const std::vector<Rational> vals = bottleneck_detail::sorted_distinct_allowed_weights(inst);
  if (vals.empty()) throw InfeasibleError("infeasible: every pair is forbidden");

  ThresholdResult out;
  auto probe = [&](const Rational& t) {
    ++out.feasibility_probes;
    BipartiteEdges g{n, n, {}};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (inst.allowed(i, j) && inst.weights(i, j) <= t) g.edges.emplace_back(i, j);
    return max_cardinality_matching(g);
  };

  Matching feasible = probe(vals.back());
  if (!feasible.is_perfect)
    throw InfeasibleError("infeasible: no perfect matching even with every allowed pair");

  std::size_t lo = 0, hi = vals.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    Matching m = probe(vals[mid]);
    if (m.is_perfect) {
      hi = mid;
      feasible = std::move(m);
    } else {
      lo = mid + 1;
    }
  }
  out.threshold = vals[lo];
  out.matching = make_matching(inst, std::move(feasible.pairs));
  return out;
}

}  // namespace assignkit
