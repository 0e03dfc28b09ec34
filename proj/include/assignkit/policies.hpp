#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "assignkit/apraq.hpp"
#include "assignkit/bottleneck.hpp"
#include "assignkit/dynamic_engine.hpp"
#include "assignkit/fair_matching.hpp"
#include "assignkit/hungarian.hpp"
#include "assignkit/k_sum.hpp"
#include "assignkit/min_deviation.hpp"
#include "assignkit/semi_assignment.hpp"
#include "assignkit/side_constraints.hpp"

namespace assignkit {

/// Configuration for a per-period variant policy. At most one of
/// `constraints` and `qualification` may be set, and only with the Sum
/// objective; dynamic semi-assignment runs as the Sum policy over an
/// expanded scenario (see expand_semi_scenario).
struct VariantPolicySpec {
  ObjectiveKind objective = ObjectiveKind::sum();
  std::optional<SideConstraintSet> constraints;     // usage indexed by (agent id, task id)
  std::optional<Grid<std::uint8_t>> qualification;  // per (agent id, task id)
};

namespace policy_detail {

/// Builds the square, cost-form instance for a view: zero-weight dummies
/// to the smaller side, then W - p normalization for profit scenarios.
inline AssignmentInstance squared_cost_form(const PeriodView& view) {
  const int a = static_cast<int>(view.agents.size());
  const int t = static_cast<int>(view.tasks.size());
  const int s = std::max(a, t);
  Grid<Rational> w(s, s, Rational(0));
  for (int r = 0; r < a; ++r)
    for (int c = 0; c < t; ++c) w(r, c) = view.weights(r, c);
  return to_min_cost(AssignmentInstance(std::move(w), view.sense));
}

inline std::vector<std::pair<int, int>> real_pairs(const PeriodView& view,
                                                   const Matching& matching) {
  std::vector<std::pair<int, int>> out;
  for (const auto& [r, c] : matching.pairs)
    if (r < static_cast<int>(view.agents.size()) && c < static_cast<int>(view.tasks.size()))
      out.emplace_back(r, c);
  return out;
}

/// The profit-form (or cost-form) criterion value on the chosen pairs,
/// used for the per-period objective column of the run metrics.
inline Rational criterion_value(const ObjectiveKind& objective, const PeriodView& view,
                                const std::vector<std::pair<int, int>>& local) {
  if (local.empty()) return Rational(0);
  std::vector<Rational> w;
  w.reserve(local.size());
  for (const auto& [r, c] : local) w.push_back(view.weights(r, c));
  std::sort(w.begin(), w.end());
  const auto cnt = static_cast<std::int64_t>(w.size());
  Rational sum(0);
  for (const auto& x : w) sum += x;
  const bool maximize = view.sense == Sense::MaximizeProfit;
  using Kind = ObjectiveKind::Kind;
  switch (objective.kind) {
    case Kind::Sum:
      return sum;
    case Kind::Bottleneck:
      return maximize ? w.front() : w.back();
    case Kind::Spread:
      return w.back() - w.front();
    case Kind::MinDeviation:
      return maximize ? sum - Rational(cnt) * w.front() : Rational(cnt) * w.back() - sum;
    case Kind::KSum: {
      const int k = std::min<std::int64_t>(objective.k, cnt);
      Rational s(0);
      for (int i = 0; i < k; ++i) s += maximize ? w[i] : w[w.size() - 1 - i];
      return s;
    }
  }
  return sum;
}

}  // namespace policy_detail

/// A policy that never assigns anything.
inline PerPeriodPolicy null_policy() {
  PerPeriodPolicy p;
  p.name = "null";
  p.decide = [](const PeriodView&) { return std::vector<std::pair<int, int>>{}; };
  return p;
}

/// Per-period sequential greedy: repeatedly commit the best remaining
/// pair (largest utility under MaximizeProfit, smallest cost otherwise;
/// ties toward lower indices). Profit scenarios skip non-positive scores.
inline PerPeriodPolicy greedy_policy() {
  PerPeriodPolicy p;
  p.name = "greedy";
  p.decide = [](const PeriodView& view) {
    const bool maximize = view.sense == Sense::MaximizeProfit;
    const int a = static_cast<int>(view.agents.size());
    const int t = static_cast<int>(view.tasks.size());
    std::vector<char> row_used(a, 0), col_used(t, 0);
    std::vector<std::pair<int, int>> out;
    while (true) {
      int br = -1, bc = -1;
      for (int r = 0; r < a; ++r) {
        if (row_used[r]) continue;
        for (int c = 0; c < t; ++c) {
          if (col_used[c]) continue;
          if (maximize && !(Rational(0) < view.weights(r, c))) continue;
          if (br == -1 || (maximize ? view.weights(br, bc) < view.weights(r, c)
                                    : view.weights(r, c) < view.weights(br, bc)))
            br = r, bc = c;
        }
      }
      if (br == -1) break;
      row_used[br] = 1;
      col_used[bc] = 1;
      out.emplace_back(br, bc);
    }
    return out;
  };
  return p;
}

/// Policy that solves the chosen static variant on the availability
/// submatrix each period. The submatrix is padded square with zero-weight
/// dummies and normalized to cost form before solving; dummy pairs are
/// dropped from the decisions.
inline PerPeriodPolicy per_period_variant_policy(const VariantPolicySpec& spec) {
  using Kind = ObjectiveKind::Kind;
  if (spec.constraints && spec.qualification)
    throw std::invalid_argument("unsupported combination: constraints with qualification");
  if ((spec.constraints || spec.qualification) && spec.objective.kind != Kind::Sum)
    throw std::invalid_argument("unsupported combination: side inputs need the sum objective");
  if (spec.objective.kind == Kind::KSum && spec.objective.k < 1)
    throw std::invalid_argument("k must be >= 1");

  PerPeriodPolicy p;
  p.name = spec.constraints ? "sideconstrained"
           : spec.qualification ? "apraq"
                                : spec.objective.name();
  const VariantPolicySpec cfg = spec;
  p.period_objective = [cfg](const PeriodView& view,
                             const std::vector<std::pair<int, int>>& local) {
    return policy_detail::criterion_value(cfg.objective, view, local);
  };
  p.decide = [cfg](const PeriodView& view) -> std::vector<std::pair<int, int>> {
    if (view.agents.empty() || view.tasks.empty()) return {};
    const int a = static_cast<int>(view.agents.size());
    const int t = static_cast<int>(view.tasks.size());

    if (cfg.qualification) {
      Grid<Rational> w(a, t);
      Grid<std::uint8_t> q(a, t);
      for (int r = 0; r < a; ++r)
        for (int c = 0; c < t; ++c) {
          w(r, c) = view.weights(r, c);
          q(r, c) = (*cfg.qualification)(view.agent_ids[r], view.tasks[c]);
        }
      AssignmentInstance inst(std::move(w), Sense::MaximizeProfit);
      inst.qualification = std::move(q);
      return solve_apraq(inst).matching.pairs;
    }

    if (cfg.constraints) {
      // Pad with one opt-out dummy per party so a period with binding
      // budgets can still decide "assign nothing".
      const int s = a + t;
      Grid<Rational> w(s, s, Rational(0));
      for (int r = 0; r < a; ++r)
        for (int c = 0; c < t; ++c) w(r, c) = view.weights(r, c);
      AssignmentInstance padded = to_min_cost(AssignmentInstance(std::move(w), view.sense));
      SideConstraintSet sub;
      for (const auto& res : cfg.constraints->resources) {
        Grid<Rational> usage(s, s, Rational(0));
        for (int r = 0; r < a; ++r)
          for (int c = 0; c < t; ++c) usage(r, c) = res.usage(view.agent_ids[r], view.tasks[c]);
        sub.resources.push_back({std::move(usage), res.budget});
      }
      const auto res = solve_with_side_constraints(padded, sub);
      return policy_detail::real_pairs(view, res.matching);
    }

    const AssignmentInstance inst = policy_detail::squared_cost_form(view);
    Matching matching;
    switch (cfg.objective.kind) {
      case Kind::Sum:
        matching = solve_hungarian(inst).matching;
        break;
      case Kind::Bottleneck:
        matching = solve_bottleneck(inst).matching;
        break;
      case Kind::Spread:
        matching = solve_fair_matching(inst).matching;
        break;
      case Kind::MinDeviation:
        matching = solve_min_deviation(inst).matching;
        break;
      case Kind::KSum:
        matching = solve_k_sum(inst, std::min(cfg.objective.k, inst.n_agents)).matching;
        break;
    }
    return policy_detail::real_pairs(view, matching);
  };
  return p;
}

/// Myopic utilitarian policy: the per-period optimal sum assignment.
inline PerPeriodPolicy myopic_policy() { return per_period_variant_policy({}); }

/// Encodes a dynamic semi-assignment scenario as a plain dynamic LAP by
/// replicating each task category into demand-many task columns (all
/// arriving with the category). Run the Sum policy on the result.
inline Scenario expand_semi_scenario(const Scenario& sc, const SemiAssignmentDemand& demand) {
  sc.validate();
  if (static_cast<int>(demand.d.size()) != sc.n_tasks())
    throw std::invalid_argument("demand vector size must equal the category count");
  Scenario out = sc;
  out.task_arrival.clear();
  std::vector<int> category_of_column;
  for (int j = 0; j < sc.n_tasks(); ++j) {
    if (demand.d[j] < 1) throw std::invalid_argument("demands must be positive");
    for (int r = 0; r < demand.d[j]; ++r) {
      out.task_arrival.push_back(sc.task_arrival[j]);
      category_of_column.push_back(j);
    }
  }
  const int m = static_cast<int>(category_of_column.size());
  out.utilities.clear();
  for (int tau = 1; tau <= sc.horizon; ++tau) {
    Grid<Rational> g(sc.n_agents(), m);
    for (int i = 0; i < sc.n_agents(); ++i)
      for (int c = 0; c < m; ++c) g(i, c) = sc.utility(i, category_of_column[c], tau);
    out.utilities.push_back(std::move(g));
  }
  out.travel_periods.reset();
  out.service_periods.reset();
  return out;
}

}  // namespace assignkit
