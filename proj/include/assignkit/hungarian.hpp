#pragma once

#include <string>
#include <utility>
#include <vector>

#include "assignkit/errors.hpp"
#include "assignkit/instance.hpp"

namespace assignkit {

struct HungarianResult {
  Matching matching;
  DualState duals;
};

namespace hungarian_detail {

inline void check_no_blocked_line(const AssignmentInstance& inst) {
  const int n = inst.n_agents;
  for (int i = 0; i < n; ++i) {
    bool any = false;
    for (int j = 0; j < n; ++j) any = any || inst.allowed(i, j);
    if (!any) throw InfeasibleError("infeasible: agent " + std::to_string(i) + " has no allowed task");
  }
  for (int j = 0; j < n; ++j) {
    bool any = false;
    for (int i = 0; i < n; ++i) any = any || inst.allowed(i, j);
    if (!any) throw InfeasibleError("infeasible: task " + std::to_string(j) + " has no allowed agent");
  }
}

}  // namespace hungarian_detail

/// Primal-dual Hungarian method for the minimum-cost perfect matching of a
/// square instance. Grows one alternating tree per unmatched task, doing a
/// breadth-first relaxation over agents with cached slacks, and updates
/// the duals by the minimum slack whenever the tree is stuck; O(n^3).
///
/// Returns the optimal matching together with an exact feasible dual
/// (u_i + v_j <= c_ij everywhere, equality on matched pairs), so
/// sum(u) + sum(v) equals the primal objective.
inline HungarianResult solve_hungarian(const AssignmentInstance& inst) {
  inst.validate();
  if (!inst.is_square())
    throw std::invalid_argument("hungarian requires a square instance; use pad_to_square first");
  if (inst.sense != Sense::MinimizeCost)
    throw std::invalid_argument("hungarian requires MinimizeCost sense; normalize first");
  hungarian_detail::check_no_blocked_line(inst);

  const int n = inst.n_agents;
  const Rational big = inst.big_m();
  Grid<Rational> c(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(i, j) = inst.allowed(i, j) ? inst.weights(i, j) : big;

  // Starting dual: column minima for v, then row minima of the reduced
  // costs for u. Feasible by construction, with at least one tight edge
  // per row and column.
  std::vector<Rational> tv(n), au(n);
  for (int j = 0; j < n; ++j) {
    Rational m = c(0, j);
    for (int i = 1; i < n; ++i) m = min(m, c(i, j));
    tv[j] = m;
  }
  for (int i = 0; i < n; ++i) {
    Rational m = c(i, 0) - tv[0];
    for (int j = 1; j < n; ++j) m = min(m, c(i, j) - tv[j]);
    au[i] = m;
  }

  // match_of_agent[a] = task matched to agent a; slot n is a virtual agent
  // holding the root task of the current tree.
  std::vector<int> match_of_agent(n + 1, -1);
  std::vector<Rational> minv(n);
  std::vector<char> has_minv(n), used(n + 1);
  std::vector<int> way(n);

  for (int root = 0; root < n; ++root) {
    match_of_agent[n] = root;
    std::fill(has_minv.begin(), has_minv.end(), 0);
    std::fill(used.begin(), used.end(), 0);
    std::fill(way.begin(), way.end(), n);
    int a0 = n;
    do {
      used[a0] = 1;
      const int t0 = match_of_agent[a0];
      int a1 = -1;
      Rational delta;
      bool has_delta = false;
      for (int a = 0; a < n; ++a) {
        if (used[a]) continue;
        const Rational cur = c(a, t0) - au[a] - tv[t0];
        if (!has_minv[a] || cur < minv[a]) {
          minv[a] = cur;
          has_minv[a] = 1;
          way[a] = a0;
        }
        if (!has_delta || minv[a] < delta) {
          delta = minv[a];
          has_delta = true;
          a1 = a;
        }
      }
      for (int a = 0; a <= n; ++a) {
        if (used[a]) {
          tv[match_of_agent[a]] += delta;
          if (a < n) au[a] -= delta;
        } else if (has_minv[a]) {
          minv[a] -= delta;
        }
      }
      a0 = a1;
    } while (match_of_agent[a0] != -1);
    while (a0 != n) {
      const int prev = way[a0];
      match_of_agent[a0] = match_of_agent[prev];
      a0 = prev;
    }
  }

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(n);
  for (int a = 0; a < n; ++a) {
    if (!inst.allowed(a, match_of_agent[a]))
      throw InfeasibleError("infeasible: no perfect matching avoids the forbidden pairs");
    pairs.emplace_back(a, match_of_agent[a]);
  }

  HungarianResult out;
  out.matching = make_matching(inst, std::move(pairs));
  out.duals.u = std::move(au);
  out.duals.v = std::move(tv);
  out.duals.epsilon = Rational(0);
  return out;
}

}  // namespace assignkit
