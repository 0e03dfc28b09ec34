#pragma once

#include <optional>
#include <vector>

#include "assignkit/bottleneck.hpp"
#include "assignkit/errors.hpp"
#include "assignkit/hopcroft_karp.hpp"
#include "assignkit/instance.hpp"

namespace assignkit {

struct FairMatchingResult {
  Matching matching;
  Rational spread;
  long feasibility_probes = 0;
};

/// Fair matching: minimize (max - min) over the matched weights. Walks the
/// lower band edge over the sorted distinct weights ascending; for each,
/// advances the smallest upper edge admitting a perfect matching within
/// the band (the upper pointer never moves back), keeping the best band.
inline FairMatchingResult solve_fair_matching(const AssignmentInstance& inst) {
  inst.validate();
  if (!inst.is_square()) throw std::invalid_argument("fair matching requires a square instance");
  if (inst.sense != Sense::MinimizeCost)
    throw std::invalid_argument("fair matching requires MinimizeCost sense");
  const int n = inst.n_agents;
  const std::vector<Rational> vals = bottleneck_detail::sorted_distinct_allowed_weights(inst);
  if (vals.empty()) throw InfeasibleError("infeasible: every pair is forbidden");

  FairMatchingResult out;
  auto probe = [&](const Rational& lo, const Rational& hi) {
    ++out.feasibility_probes;
    BipartiteEdges g{n, n, {}};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Rational& w = inst.weights(i, j);
        if (inst.allowed(i, j) && lo <= w && w <= hi) g.edges.emplace_back(i, j);
      }
    return max_cardinality_matching(g);
  };

  std::optional<Rational> best;
  Matching best_matching;
  std::size_t h = 0;
  for (std::size_t l = 0; l < vals.size(); ++l) {
    if (h < l) h = l;
    Matching m;
    bool found = false;
    while (h < vals.size()) {
      m = probe(vals[l], vals[h]);
      if (m.is_perfect) {
        found = true;
        break;
      }
      ++h;
    }
    if (!found) break;  // raising the lower edge only removes more edges
    const Rational spread = vals[h] - vals[l];
    if (!best || spread < *best) {
      best = spread;
      best_matching = std::move(m);
      if (best->is_zero()) break;
    }
  }
  if (!best) throw InfeasibleError("infeasible: no perfect matching even with every allowed pair");
  out.spread = *best;
  out.matching = make_matching(inst, std::move(best_matching.pairs));
  return out;
}

}  // namespace assignkit
