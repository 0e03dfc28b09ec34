#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "assignkit/bottleneck.hpp"
#include "assignkit/errors.hpp"
#include "assignkit/hopcroft_karp.hpp"
#include "assignkit/hungarian.hpp"
#include "assignkit/instance.hpp"

namespace assignkit {

struct MinDeviationResult {
  Matching matching;
  Rational deviation;
};

namespace variant_detail {

/// Minimum-cost assignment restricted to a pair predicate, or nothing if
/// the restriction kills every perfect matching.
template <typename Keep>
std::optional<HungarianResult> restricted_hungarian(const AssignmentInstance& inst, Keep keep) {
  const int n = inst.n_agents;
  AssignmentInstance sub = inst;
  bool any_row_empty = false;
  for (int i = 0; i < n; ++i) {
    bool any = false;
    for (int j = 0; j < n; ++j) {
      if (!inst.allowed(i, j) || !keep(i, j)) {
        sub.forbidden(i, j) = 1;
      } else {
        any = true;
      }
    }
    any_row_empty = any_row_empty || !any;
  }
  if (any_row_empty) return std::nullopt;
  try {
    return solve_hungarian(sub);
  } catch (const InfeasibleError&) {
    return std::nullopt;
  }
}

}  // namespace variant_detail

/// Minimum deviation: minimize n * max(matched) - sum(matched) over
/// perfect matchings. Sweeps the candidate maximum M over the distinct
/// weights that admit a perfect matching on the <= M subgraph; for each,
/// maximizes the restricted sum (a negated Hungarian solve) and keeps the
/// best candidate.
inline MinDeviationResult solve_min_deviation(const AssignmentInstance& inst) {
  inst.validate();
  if (!inst.is_square()) throw std::invalid_argument("min deviation requires a square instance");
  if (inst.sense != Sense::MinimizeCost)
    throw std::invalid_argument("min deviation requires MinimizeCost sense");
  const int n = inst.n_agents;
  const std::vector<Rational> vals = bottleneck_detail::sorted_distinct_allowed_weights(inst);
  if (vals.empty()) throw InfeasibleError("infeasible: every pair is forbidden");

  AssignmentInstance negated = inst;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) negated.weights(i, j) = -inst.weights(i, j);

  std::optional<Rational> best;
  Matching best_matching;
  for (const Rational& cap : vals) {
    const auto sub = variant_detail::restricted_hungarian(
        negated, [&](int i, int j) { return inst.weights(i, j) <= cap; });
    if (!sub) continue;
    Rational sum(0);
    for (const auto& [i, j] : sub->matching.pairs) sum += inst.weights(i, j);
    const Rational candidate = Rational(n) * cap - sum;
    if (!best || candidate < *best) {
      best = candidate;
      best_matching = sub->matching;
    }
  }
  if (!best) throw InfeasibleError("infeasible: no perfect matching avoids the forbidden pairs");

  MinDeviationResult out;
  out.matching = make_matching(inst, std::move(best_matching.pairs));
  // the winning candidate always attains its own bound, so re-evaluating
  // on the returned matching gives the same value
  out.deviation = objective_value(inst, out.matching, ObjectiveKind::min_deviation());
  return out;
}

}  // namespace assignkit
