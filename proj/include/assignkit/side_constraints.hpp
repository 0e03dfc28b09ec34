#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "assignkit/errors.hpp"
#include "assignkit/hungarian.hpp"
#include "assignkit/instance.hpp"

namespace assignkit {

struct SideConstrainedResult {
  Matching matching;
  Rational cost;
  long nodes_explored = 0;
};

namespace apsc_detail {

inline bool within_budgets(const SideConstraintSet& cons, const std::vector<Rational>& used) {
  for (std::size_t k = 0; k < cons.resources.size(); ++k)
    if (cons.resources[k].budget < used[k]) return false;
  return true;
}

/// Unconstrained optimal cost of assigning agents `level..n-1` to the
/// unused tasks, or nothing when that relaxation is already infeasible.
inline std::optional<Rational> relaxation_bound(const AssignmentInstance& inst, int level,
                                                const std::vector<char>& task_used) {
  const int n = inst.n_agents;
  const int rem = n - level;
  if (rem == 0) return Rational(0);
  std::vector<int> tasks;
  for (int j = 0; j < n; ++j)
    if (!task_used[j]) tasks.push_back(j);
  Grid<Rational> w(rem, rem);
  Grid<std::uint8_t> forb(rem, rem, 0);
  for (int a = 0; a < rem; ++a)
    for (int b = 0; b < rem; ++b) {
      w(a, b) = inst.weights(level + a, tasks[b]);
      forb(a, b) = inst.forbidden(level + a, tasks[b]);
    }
  AssignmentInstance sub(std::move(w), Sense::MinimizeCost);
  sub.forbidden = std::move(forb);
  try {
    const HungarianResult r = solve_hungarian(sub);
    Rational total(0);
    for (const auto& [a, b] : r.matching.pairs) total += sub.weights(a, b);
    return total;
  } catch (const InfeasibleError&) {
    return std::nullopt;
  }
}

}  // namespace apsc_detail

/// Assignment with knapsack-type side constraints, solved exactly by
/// depth-first branch-and-bound: branch on agents in index order with
/// candidate tasks by ascending reduced cost, prune on budget violation
/// and on the unconstrained assignment relaxation of the residual
/// instance. NP-hard, intended for desk-scale instances.
inline SideConstrainedResult solve_with_side_constraints(const AssignmentInstance& inst,
                                                         const SideConstraintSet& constraints) {
  inst.validate();
  if (!inst.is_square())
    throw std::invalid_argument("side-constrained assignment requires a square instance");
  if (inst.sense != Sense::MinimizeCost)
    throw std::invalid_argument("side-constrained assignment requires MinimizeCost sense");
  constraints.validate_for(inst);
  const int n = inst.n_agents;
  const std::size_t n_res = constraints.resources.size();

  SideConstrainedResult out;

  // The unconstrained optimum is a lower bound; if it happens to satisfy
  // every budget it is the answer outright.
  const HungarianResult root = solve_hungarian(inst);
  {
    std::vector<Rational> used(n_res, Rational(0));
    for (const auto& [i, j] : root.matching.pairs)
      for (std::size_t k = 0; k < n_res; ++k) used[k] += constraints.resources[k].usage(i, j);
    if (apsc_detail::within_budgets(constraints, used)) {
      out.matching = root.matching;
      out.cost = objective_value(inst, root.matching, ObjectiveKind::sum());
      out.nodes_explored = 1;
      return out;
    }
  }

  // Candidate order per agent: ascending reduced cost under the root
  // duals, ties toward lower task index.
  std::vector<std::vector<int>> order(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (inst.allowed(i, j)) order[i].push_back(j);
    std::sort(order[i].begin(), order[i].end(), [&](int a, int b) {
      const Rational ra = inst.weights(i, a) - root.duals.u[i] - root.duals.v[a];
      const Rational rb = inst.weights(i, b) - root.duals.u[i] - root.duals.v[b];
      if (ra != rb) return ra < rb;
      return a < b;
    });
  }

  std::optional<Rational> incumbent;
  std::vector<int> best_assignment;
  std::vector<int> assignment(n, -1);
  std::vector<char> task_used(n, 0);
  std::vector<Rational> used(n_res, Rational(0));

  std::function<void(int, Rational)> dfs = [&](int level, Rational cost_so_far) {
    ++out.nodes_explored;
    if (level == n) {
      if (!incumbent || cost_so_far < *incumbent) {
        incumbent = cost_so_far;
        best_assignment = assignment;
      }
      return;
    }
    const auto bound = apsc_detail::relaxation_bound(inst, level, task_used);
    if (!bound) return;
    if (incumbent && !(cost_so_far + *bound < *incumbent)) return;
    for (int j : order[level]) {
      if (task_used[j]) continue;
      bool fits = true;
      for (std::size_t k = 0; k < n_res; ++k) {
        used[k] += constraints.resources[k].usage(level, j);
        if (constraints.resources[k].budget < used[k]) fits = false;
      }
      if (fits) {
        task_used[j] = 1;
        assignment[level] = j;
        dfs(level + 1, cost_so_far + inst.weights(level, j));
        assignment[level] = -1;
        task_used[j] = 0;
      }
      for (std::size_t k = 0; k < n_res; ++k) used[k] -= constraints.resources[k].usage(level, j);
    }
  };
  dfs(0, Rational(0));

  if (!incumbent)
    throw InfeasibleError("infeasible: no perfect matching satisfies the resource budgets");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) pairs.emplace_back(i, best_assignment[i]);
  out.matching = make_matching(inst, std::move(pairs));
  out.cost = *incumbent;
  return out;
}

}  // namespace assignkit
