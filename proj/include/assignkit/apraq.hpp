#pragma once

#include <utility>
#include <vector>

#include "assignkit/hungarian.hpp"
#include "assignkit/instance.hpp"

namespace assignkit {

struct ApraqResult {
  Matching matching;  // qualified pairs only; possibly partial or empty
  Rational utility;
};

/// Assignment recognizing agent qualification: a utility-maximizing,
/// possibly partial matching that only uses qualified pairs. Unqualified
/// pairs carry profit 0; padding with one zero-profit dummy task per agent
/// and one dummy agent per task turns the inequality constraints into a
/// square assignment where every party may opt out.
inline ApraqResult solve_apraq(const AssignmentInstance& inst) {
  inst.validate();
  if (inst.sense != Sense::MaximizeProfit)
    throw std::invalid_argument("apraq requires MaximizeProfit sense");
  if (!inst.qualification)
    throw std::invalid_argument("apraq requires a qualification mask");

  const int n = inst.n_agents;
  const int m = inst.n_tasks;
  const int s = n + m;

  Rational w_cap(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      if (inst.allowed(i, j)) w_cap = max(w_cap, inst.effective_weight(i, j));

  Grid<Rational> c(s, s, w_cap);  // dummies behave like zero-profit pairs
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      const Rational p = inst.allowed(i, j) ? inst.effective_weight(i, j) : Rational(0);
      c(i, j) = w_cap - p;
    }
  const HungarianResult res = solve_hungarian(AssignmentInstance(std::move(c)));

  ApraqResult out;
  out.utility = Rational(0);
  std::vector<std::pair<int, int>> pairs;
  for (const auto& [i, j] : res.matching.pairs) {
    if (i >= n || j >= m) continue;
    if (!inst.allowed(i, j) || !inst.qualified(i, j)) continue;
    pairs.emplace_back(i, j);
    out.utility += inst.weights(i, j);
  }
  out.matching = make_matching(inst, std::move(pairs));
  return out;
}

}  // namespace assignkit
