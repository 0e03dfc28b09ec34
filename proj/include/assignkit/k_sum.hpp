#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "assignkit/bottleneck.hpp"
#include "assignkit/errors.hpp"
#include "assignkit/hungarian.hpp"
#include "assignkit/instance.hpp"

namespace assignkit {

struct KSumResult {
  Matching matching;
  Rational value;
};

/// Sigma-k assignment: minimize the sum of the k largest matched weights.
/// Uses the scalarized sweep min over t of { k*t + min-sum assignment with
/// costs clipped to max(c - t, 0) }; the sum of the k largest weights of
/// any matching equals the inner expression at t = its k-th largest
/// weight, so sweeping t over the distinct weights is exact.
inline KSumResult solve_k_sum(const AssignmentInstance& inst, int k) {
  inst.validate();
  if (!inst.is_square()) throw std::invalid_argument("k-sum requires a square instance");
  if (inst.sense != Sense::MinimizeCost)
    throw std::invalid_argument("k-sum requires MinimizeCost sense");
  const int n = inst.n_agents;
  if (k < 1 || k > n) throw std::invalid_argument("k must be between 1 and n");

  const std::vector<Rational> vals = bottleneck_detail::sorted_distinct_allowed_weights(inst);
  if (vals.empty()) throw InfeasibleError("infeasible: every pair is forbidden");

  std::optional<Rational> best;
  Matching best_matching;
  AssignmentInstance clipped = inst;
  for (const Rational& t : vals) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        clipped.weights(i, j) = max(inst.weights(i, j) - t, Rational(0));
    const HungarianResult sub = solve_hungarian(clipped);  // throws if infeasible
    Rational clipped_sum(0);
    for (const auto& [i, j] : sub.matching.pairs) clipped_sum += clipped.weights(i, j);
    const Rational candidate = Rational(k) * t + clipped_sum;
    if (!best || candidate < *best) {
      best = candidate;
      best_matching = sub.matching;
    }
  }

  KSumResult out;
  out.matching = make_matching(inst, std::move(best_matching.pairs));
  out.value = objective_value(inst, out.matching, ObjectiveKind::k_sum(k));
  return out;
}

}  // namespace assignkit
