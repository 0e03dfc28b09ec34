#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "assignkit/errors.hpp"
#include "assignkit/instance.hpp"

namespace assignkit {

/// Exhaustive reference result. best_value is empty when no feasible
/// candidate exists. For semi-assignment candidates the second pair
/// element is a category index and may repeat.
struct OracleResult {
  std::optional<Rational> best_value;
  std::vector<std::vector<std::pair<int, int>>> best_matchings;
  std::uint64_t enumerated = 0;

  [[nodiscard]] bool feasible() const { return best_value.has_value(); }
};

struct OracleExtras {
  std::optional<std::vector<int>> demand;          // semi-assignment category demands
  const SideConstraintSet* constraints = nullptr;  // knapsack side constraints
  bool qualified_partial = false;                  // partial matchings over qualified pairs
};

namespace oracle_detail {

// The oracle evaluates objectives with its own arithmetic so it cannot
// inherit a bug from the shared objective_value path. Deliberately plain.
inline Rational evaluate(const std::vector<Rational>& w, const ObjectiveKind& objective) {
  using Kind = ObjectiveKind::Kind;
  switch (objective.kind) {
    case Kind::Sum: {
      Rational s(0);
      for (const auto& x : w) s += x;
      return s;
    }
    case Kind::Bottleneck: {
      Rational b = w.front();
      for (const auto& x : w)
        if (b < x) b = x;
      return b;
    }
    case Kind::Spread: {
      Rational lo = w.front(), hi = w.front();
      for (const auto& x : w) {
        if (x < lo) lo = x;
        if (hi < x) hi = x;
      }
      return hi - lo;
    }
    case Kind::MinDeviation: {
      Rational hi = w.front(), s(0);
      for (const auto& x : w) {
        if (hi < x) hi = x;
        s += x;
      }
      return Rational(static_cast<std::int64_t>(w.size())) * hi - s;
    }
    case Kind::KSum: {
      std::vector<Rational> sorted = w;
      std::sort(sorted.begin(), sorted.end());
      Rational s(0);
      for (int i = 0; i < objective.k; ++i) s += sorted[sorted.size() - 1 - i];
      return s;
    }
  }
  throw std::logic_error("unreachable objective kind");
}

}  // namespace oracle_detail

/// Enumerates every feasible candidate of the requested problem shape and
/// returns the exact optimum set. Guarded to min(n, m) <= 9.
///
/// Shapes: plain instance -> all full matchings of the smaller side;
/// extras.demand -> all demand-respecting agent-to-category maps;
/// extras.qualified_partial -> all partial matchings over qualified pairs
/// (MaximizeProfit); extras.constraints -> budget-feasible matchings only.
inline OracleResult brute_force(const AssignmentInstance& inst, const ObjectiveKind& objective,
                                const OracleExtras& extras = {}) {
  const int n = inst.n_agents;
  const int m = inst.n_tasks;
  if (std::min(n, m) > 9) throw GuardError("oracle limit: min(n, m) must be <= 9");
  if (objective.kind != ObjectiveKind::Kind::Sum && inst.sense != Sense::MinimizeCost)
    throw std::invalid_argument("oracle: non-sum objectives are defined on MinimizeCost instances");
  if (objective.kind == ObjectiveKind::Kind::KSum &&
      (objective.k < 1 || objective.k > std::min(n, m)))
    throw std::invalid_argument("oracle: k out of range");

  const bool maximize = inst.sense == Sense::MaximizeProfit;
  OracleResult out;

  auto consider = [&](const std::vector<std::pair<int, int>>& pairs) {
    ++out.enumerated;
    Rational value(0);
    if (!pairs.empty()) {
      std::vector<Rational> w;
      w.reserve(pairs.size());
      for (const auto& [i, j] : pairs) w.push_back(inst.weights(i, j));
      value = oracle_detail::evaluate(w, objective);
    } else if (objective.kind != ObjectiveKind::Kind::Sum) {
      return;  // spread/bottleneck/etc are undefined on empty candidates
    }
    if (!out.best_value || (maximize ? *out.best_value < value : value < *out.best_value)) {
      out.best_value = value;
      out.best_matchings.clear();
      out.best_matchings.push_back(pairs);
    } else if (*out.best_value == value) {
      out.best_matchings.push_back(pairs);
    }
  };

  if (extras.demand) {
    const std::vector<int>& d = *extras.demand;
    if (static_cast<int>(d.size()) != m)
      throw std::invalid_argument("oracle: demand size must equal category count");
    int total = 0;
    for (int x : d) total += x;
    if (total != n) throw std::invalid_argument("oracle: demands must sum to the agent count");
    std::vector<int> remaining = d;
    std::vector<std::pair<int, int>> pairs;
    std::function<void(int)> rec = [&](int agent) {
      if (agent == n) {
        consider(pairs);
        return;
      }
      for (int j = 0; j < m; ++j) {
        if (remaining[j] == 0 || !inst.allowed(agent, j)) continue;
        --remaining[j];
        pairs.emplace_back(agent, j);
        rec(agent + 1);
        pairs.pop_back();
        ++remaining[j];
      }
    };
    rec(0);
    return out;
  }

  if (extras.qualified_partial) {
    std::vector<bool> used_task(m, false);
    std::vector<std::pair<int, int>> pairs;
    std::function<void(int)> rec = [&](int agent) {
      if (agent == n) {
        consider(pairs);
        return;
      }
      rec(agent + 1);  // agent stays unmatched
      for (int j = 0; j < m; ++j) {
        if (used_task[j] || !inst.allowed(agent, j) || !inst.qualified(agent, j)) continue;
        used_task[j] = true;
        pairs.emplace_back(agent, j);
        rec(agent + 1);
        pairs.pop_back();
        used_task[j] = false;
      }
    };
    rec(0);
    return out;
  }

  const bool agents_small = n <= m;
  const int small = agents_small ? n : m;
  const int large = agents_small ? m : n;

  auto budget_ok = [&](const std::vector<std::pair<int, int>>& pairs) {
    if (extras.constraints == nullptr) return true;
    for (const auto& res : extras.constraints->resources) {
      Rational used(0);
      for (const auto& [i, j] : pairs) used += res.usage(i, j);
      if (res.budget < used) return false;
    }
    return true;
  };

  std::vector<bool> taken(large, false);
  std::vector<std::pair<int, int>> pairs;
  std::function<void(int)> rec = [&](int s) {
    if (s == small) {
      if (budget_ok(pairs)) consider(pairs);
      return;
    }
    for (int t = 0; t < large; ++t) {
      if (taken[t]) continue;
      const int i = agents_small ? s : t;
      const int j = agents_small ? t : s;
      if (!inst.allowed(i, j)) continue;
      taken[t] = true;
      pairs.emplace_back(i, j);
      rec(s + 1);
      pairs.pop_back();
      taken[t] = false;
    }
  };
  rec(0);
  return out;
}

}  // namespace assignkit
