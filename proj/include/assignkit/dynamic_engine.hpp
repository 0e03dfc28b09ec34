#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "assignkit/apraq.hpp"
#include "assignkit/bottleneck.hpp"
#include "assignkit/errors.hpp"
#include "assignkit/fair_matching.hpp"
#include "assignkit/hungarian.hpp"
#include "assignkit/k_sum.hpp"
#include "assignkit/min_deviation.hpp"
#include "assignkit/scenario.hpp"
#include "assignkit/side_constraints.hpp"

namespace assignkit {

/// What a policy sees each period: the currently available slots and
/// tasks and the current period's weight slice. Nothing about future
/// arrivals leaks through this interface.
struct PeriodView {
  int period = 1;
  Sense sense = Sense::MaximizeProfit;
  std::vector<int> agents;     // slot ids (rows)
  std::vector<int> agent_ids;  // underlying scenario agent per row
  std::vector<int> tasks;      // task ids (columns)
  Grid<Rational> weights;      // local, |agents| x |tasks|
};

struct PerPeriodPolicy {
  std::string name;
  // returns conflict-free (row, col) pairs in view-local indices
  std::function<std::vector<std::pair<int, int>>(const PeriodView&)> decide;
  // the policy's own per-period criterion, evaluated on its chosen pairs
  std::function<Rational(const PeriodView&, const std::vector<std::pair<int, int>>&)>
      period_objective;
};

struct StepResult {
  std::vector<Trajectory::Decision> decisions;  // model-level records
  FleetState next;
  Rational period_objective;
};

namespace dynamic_detail {

inline void check_policy_output(const PeriodView& view,
                                const std::vector<std::pair<int, int>>& local) {
  std::vector<char> row_used(view.agents.size(), 0), col_used(view.tasks.size(), 0);
  for (const auto& [r, c] : local) {
    if (r < 0 || r >= static_cast<int>(view.agents.size()) || c < 0 ||
        c >= static_cast<int>(view.tasks.size()))
      throw std::invalid_argument("constraint violation: policy pair out of range");
    if (row_used[r]++) throw std::invalid_argument("constraint violation: agent assigned twice");
    if (col_used[c]++) throw std::invalid_argument("constraint violation: task assigned twice");
  }
}

inline Rational default_period_objective(const PeriodView& view,
                                         const std::vector<std::pair<int, int>>& local) {
  Rational s(0);
  for (const auto& [r, c] : local) s += view.weights(r, c);
  return s;
}

}  // namespace dynamic_detail

/// Executes one period: builds the availability view, asks the policy for
/// conflict-free decisions, and advances the availability state by the
/// conservation identities. A policy output that violates the constraints
/// is rejected with "constraint violation" and the input state is
/// untouched (step is pure).
inline StepResult step(const FleetState& state, const Scenario& sc,
                       const PerPeriodPolicy& policy) {
  const int tau = state.period;
  if (tau < 1 || tau > sc.horizon) throw std::invalid_argument("step outside the horizon");
  StepResult out;
  FleetState next = state;

  if (sc.mode == Scenario::Mode::Reassign) {
    // Travel completions first: a commitment whose agent reaches its task
    // this period becomes irreversible, which is when the model-level
    // decision is recorded (valued at its commitment period).
    for (std::size_t s = 0; s < next.lifecycle.size(); ++s) {
      auto& life = next.lifecycle[s];
      if (life.phase == FleetState::Life::Phase::Assigned && life.arrive_at == tau) {
        const int agent = next.slots[s].first;
        life.phase = FleetState::Life::Phase::Assisting;
        life.complete_at = tau + sc.service(agent, life.task) - 1;
        next.task_phase[life.task] = FleetState::TaskPhase::Locked;
        next.beta[life.task] = 0;
        next.alpha[s] = 0;
        out.decisions.push_back({static_cast<int>(s), life.task, life.commit_period,
                                 sc.utility(agent, life.task, life.commit_period)});
      }
    }
  }

  // Availability view for this period.
  PeriodView view;
  view.period = tau;
  view.sense = sc.sense;
  for (std::size_t s = 0; s < next.slots.size(); ++s)
    if (next.alpha[s]) {
      view.agents.push_back(static_cast<int>(s));
      view.agent_ids.push_back(next.slots[s].first);
    }
  for (int j = 0; j < sc.n_tasks(); ++j)
    if (next.beta[j]) view.tasks.push_back(j);
  view.weights = Grid<Rational>(static_cast<int>(view.agents.size()),
                                static_cast<int>(view.tasks.size()));
  for (int r = 0; r < view.weights.rows(); ++r)
    for (int c = 0; c < view.weights.cols(); ++c)
      view.weights(r, c) = sc.utility(next.slots[view.agents[r]].first, view.tasks[c], tau);

  const std::vector<std::pair<int, int>> local = policy.decide(view);
  dynamic_detail::check_policy_output(view, local);
  out.period_objective = policy.period_objective
                             ? policy.period_objective(view, local)
                             : dynamic_detail::default_period_objective(view, local);

  if (sc.mode == Scenario::Mode::Commit) {
    for (const auto& [r, c] : local) {
      const int slot = view.agents[r];
      const int task = view.tasks[c];
      out.decisions.push_back({slot, task, tau, view.weights(r, c)});
      next.alpha[slot] = 0;
      next.beta[task] = 0;
    }
  } else {
    std::vector<char> committed(next.slots.size(), 0);
    for (const auto& [r, c] : local) {
      const int slot = view.agents[r];
      const int task = view.tasks[c];
      committed[slot] = 1;
      auto& life = next.lifecycle[slot];
      if (life.phase == FleetState::Life::Phase::Assigned && life.task == task) continue;
      if (life.phase == FleetState::Life::Phase::Assigned) ++next.reassignments;
      life.phase = FleetState::Life::Phase::Assigned;
      life.task = task;
      life.commit_period = tau;
      life.arrive_at = tau + sc.travel(next.slots[slot].first, task);
    }
    for (std::size_t s = 0; s < next.lifecycle.size(); ++s) {
      auto& life = next.lifecycle[s];
      if (life.phase == FleetState::Life::Phase::Assigned && !committed[s]) {
        // the policy dropped this commitment: the agent goes back to idle
        life = FleetState::Life{};
        ++next.reassignments;
      }
    }
    // Assistance that finishes at the end of this period frees the agent,
    // which re-enters as a synthetic arrival under a fresh slot. The
    // appends can reallocate the slot vectors, so finish every write
    // through index s before growing them.
    const std::size_t settled = next.lifecycle.size();
    for (std::size_t s = 0; s < settled; ++s) {
      if (next.lifecycle[s].phase != FleetState::Life::Phase::Assisting ||
          next.lifecycle[s].complete_at != tau)
        continue;
      next.task_phase[next.lifecycle[s].task] = FleetState::TaskPhase::Done;
      next.lifecycle[s].phase = FleetState::Life::Phase::Done;
      const int agent = next.slots[s].first;
      if (tau + 1 <= sc.horizon) {
        next.slots.emplace_back(agent, tau + 1);
        next.alpha.push_back(0);
        next.lifecycle.emplace_back();
      }
    }
  }

  // Arrivals for the next period.
  next.period = tau + 1;
  if (tau + 1 <= sc.horizon) {
    for (std::size_t s = 0; s < next.slots.size(); ++s)
      if (next.slots[s].second == tau + 1) next.alpha[s] = 1;
    for (int j = 0; j < sc.n_tasks(); ++j)
      if (sc.task_arrival[j] == tau + 1) next.beta[j] = 1;
  }
  out.next = std::move(next);
  return out;
}

/// Runs a policy over the whole horizon and assembles the model-level
/// trajectory: recorded decisions, the alpha/beta histories they induce
/// under the conservation identities, per-period values and the run
/// metrics.
inline Trajectory run_scenario(const Scenario& sc, const PerPeriodPolicy& policy) {
  FleetState st = FleetState::initial(sc);
  Trajectory tr;
  tr.per_period_objectives.reserve(sc.horizon);
  for (int tau = 1; tau <= sc.horizon; ++tau) {
    StepResult r = step(st, sc, policy);
    for (auto& d : r.decisions) tr.decisions.push_back(d);
    tr.per_period_objectives.push_back(r.period_objective);
    st = std::move(r.next);
  }
  if (sc.mode == Scenario::Mode::Reassign) {
    // Commitments still standing at horizon end were never revoked, so
    // they are model decisions like any other; only re-entry needed the
    // service to finish.
    for (std::size_t s = 0; s < st.lifecycle.size(); ++s) {
      const auto& life = st.lifecycle[s];
      if (life.phase == FleetState::Life::Phase::Assigned)
        tr.decisions.push_back({static_cast<int>(s), life.task, life.commit_period,
                                sc.utility(st.slots[s].first, life.task, life.commit_period)});
    }
  }
  tr.slots = st.slots;
  tr.reassignments = st.reassignments;
  std::sort(tr.decisions.begin(), tr.decisions.end(), [](const auto& a, const auto& b) {
    return a.period != b.period ? a.period < b.period : a.slot < b.slot;
  });

  const int n_slots = static_cast<int>(tr.slots.size());
  const int m = sc.n_tasks();
  tr.per_period_values.assign(sc.horizon, Rational(0));
  tr.total = Rational(0);
  std::vector<char> slot_used(n_slots, 0), task_used(m, 0);
  for (const auto& d : tr.decisions) {
    tr.per_period_values[d.period - 1] += d.value;
    tr.total += d.value;
    slot_used[d.slot] = 1;
    task_used[d.task] = 1;
  }

  // Alpha/beta histories via the conservation identities over the records.
  tr.alpha.assign(sc.horizon, std::vector<std::uint8_t>(n_slots, 0));
  tr.beta.assign(sc.horizon, std::vector<std::uint8_t>(m, 0));
  std::vector<int> a(n_slots, 0), b(m, 0);
  for (int tau = 1; tau <= sc.horizon; ++tau) {
    for (int s = 0; s < n_slots; ++s)
      if (tr.slots[s].second == tau) ++a[s];
    for (int j = 0; j < m; ++j)
      if (sc.task_arrival[j] == tau) ++b[j];
    for (int s = 0; s < n_slots; ++s) tr.alpha[tau - 1][s] = static_cast<std::uint8_t>(a[s]);
    for (int j = 0; j < m; ++j) tr.beta[tau - 1][j] = static_cast<std::uint8_t>(b[j]);
    for (const auto& d : tr.decisions) {
      if (d.period != tau) continue;
      --a[d.slot];
      --b[d.task];
    }
    for (int s = 0; s < n_slots; ++s)
      if (a[s] < 0 || a[s] > 1) throw std::logic_error("engine produced an inconsistent trajectory");
    for (int j = 0; j < m; ++j)
      if (b[j] < 0 || b[j] > 1) throw std::logic_error("engine produced an inconsistent trajectory");
  }

  tr.unused_agents = 0;
  for (int s = 0; s < n_slots; ++s)
    if (!slot_used[s]) ++tr.unused_agents;
  tr.stranded_tasks = 0;
  for (int j = 0; j < m; ++j)
    if (!task_used[j]) ++tr.stranded_tasks;
  const int target = std::min(n_slots, m);
  tr.coverage_satisfied = static_cast<int>(tr.decisions.size()) == target;
  return tr;
}

/// Exact offline optimum of the multi-period model, by exhaustive search
/// over feasible decision sequences (memoized over the used agent/task
/// sets). For MinimizeCost scenarios the full-coverage constraint is
/// enforced. Guarded to desk scale.
inline Rational clairvoyant_optimum(const Scenario& sc) {
  sc.validate();
  const int n = sc.n_agents();
  const int m = sc.n_tasks();
  if (std::min(n, m) > 10 || sc.horizon > 10 || n > 16 || m > 16)
    throw GuardError("clairvoyant guard exceeded: needs min(n,m) <= 10, sides <= 16, horizon <= 10");
  const bool maximize = sc.sense == Sense::MaximizeProfit;
  const int coverage = std::min(n, m);

  std::unordered_map<std::uint64_t, std::optional<Rational>> memo;
  std::function<std::optional<Rational>(int, std::uint32_t, std::uint32_t)> best =
      [&](int tau, std::uint32_t used_a, std::uint32_t used_t) -> std::optional<Rational> {
    if (tau > sc.horizon) {
      const int assigned = __builtin_popcount(used_a);
      if (!maximize && assigned != coverage) return std::nullopt;
      return Rational(0);
    }
    const std::uint64_t key = (static_cast<std::uint64_t>(tau) << 32) |
                              (static_cast<std::uint64_t>(used_a) << 16) | used_t;
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    std::vector<int> agents, tasks;
    for (int i = 0; i < n; ++i)
      if (sc.agent_arrival[i] <= tau && !(used_a & (1u << i))) agents.push_back(i);
    for (int j = 0; j < m; ++j)
      if (sc.task_arrival[j] <= tau && !(used_t & (1u << j))) tasks.push_back(j);

    std::optional<Rational> result;
    std::function<void(std::size_t, std::uint32_t, std::uint32_t, Rational)> enumerate =
        [&](std::size_t idx, std::uint32_t ua, std::uint32_t ut, Rational gained) {
          if (idx == agents.size()) {
            const auto rest = best(tau + 1, ua, ut);
            if (!rest) return;
            const Rational total = gained + *rest;
            if (!result || (maximize ? *result < total : total < *result)) result = total;
            return;
          }
          enumerate(idx + 1, ua, ut, gained);  // this agent sits the period out
          const int i = agents[idx];
          for (int j : tasks) {
            if (ut & (1u << j)) continue;
            enumerate(idx + 1, ua | (1u << i), ut | (1u << j),
                      gained + sc.utility(i, j, tau));
          }
        };
    enumerate(0, used_a, used_t, Rational(0));
    memo[key] = result;
    return result;
  };

  const auto r = best(1, 0, 0);
  if (!r) throw InfeasibleError("infeasible: no decision sequence covers every task");
  return *r;
}

/// Per-constraint-family check of a recorded trajectory against the
/// dynamic model: value ranges, initial conditions, availability limits
/// and the conservation identities. Violations are report content, not
/// errors.
struct ValidationFamily {
  std::string name;
  bool pass = true;
  std::string first_violation;
};

struct ValidationReport {
  std::vector<ValidationFamily> families;
  [[nodiscard]] bool all_pass() const {
    for (const auto& f : families)
      if (!f.pass) return false;
    return true;
  }
};

inline ValidationReport validate_trajectory(const Scenario& sc, const Trajectory& tr) {
  sc.validate();
  const int H = sc.horizon;
  const int S = static_cast<int>(tr.slots.size());
  const int M = sc.n_tasks();

  ValidationReport report;
  auto fail = [&](ValidationFamily& f, const std::string& where) {
    if (f.pass) {
      f.pass = false;
      f.first_violation = where;
    }
  };

  ValidationFamily ranges{"ranges", true, ""};
  if (static_cast<int>(tr.alpha.size()) != H || static_cast<int>(tr.beta.size()) != H)
    fail(ranges, "alpha/beta history length != horizon");
  for (int t = 0; t < H && ranges.pass; ++t) {
    if (static_cast<int>(tr.alpha[t].size()) != S) fail(ranges, "alpha row size at period " + std::to_string(t + 1));
    if (static_cast<int>(tr.beta[t].size()) != M) fail(ranges, "beta row size at period " + std::to_string(t + 1));
  }
  if (ranges.pass) {
    for (int t = 0; t < H; ++t) {
      for (int s = 0; s < S; ++s)
        if (tr.alpha[t][s] > 1) fail(ranges, "alpha not binary at (slot " + std::to_string(s) + ", period " + std::to_string(t + 1) + ")");
      for (int j = 0; j < M; ++j)
        if (tr.beta[t][j] > 1) fail(ranges, "beta not binary at (task " + std::to_string(j) + ", period " + std::to_string(t + 1) + ")");
    }
    for (std::size_t k = 0; k < tr.slots.size(); ++k) {
      const auto& [agent, arrival] = tr.slots[k];
      if (agent < 0 || agent >= sc.n_agents() || arrival < 1 || arrival > H)
        fail(ranges, "slot " + std::to_string(k) + " out of range");
      if (k < static_cast<std::size_t>(sc.n_agents()) &&
          (agent != static_cast<int>(k) || arrival != sc.agent_arrival[k]))
        fail(ranges, "slot " + std::to_string(k) + " does not match its scenario agent");
    }
    for (const auto& d : tr.decisions)
      if (d.slot < 0 || d.slot >= S || d.task < 0 || d.task >= M || d.period < 1 || d.period > H)
        fail(ranges, "decision out of range (slot " + std::to_string(d.slot) + ", task " +
                         std::to_string(d.task) + ", period " + std::to_string(d.period) + ")");
  }
  report.families.push_back(ranges);
  if (!ranges.pass) {
    report.families.push_back({"initial-conditions", false, "skipped: ranges failed"});
    report.families.push_back({"availability", false, "skipped: ranges failed"});
    report.families.push_back({"conservation", false, "skipped: ranges failed"});
    return report;
  }

  ValidationFamily init{"initial-conditions", true, ""};
  for (int s = 0; s < S; ++s) {
    const std::uint8_t expect = tr.slots[s].second == 1 ? 1 : 0;
    if (tr.alpha[0][s] != expect) fail(init, "alpha(slot " + std::to_string(s) + ", period 1)");
  }
  for (int j = 0; j < M; ++j) {
    const std::uint8_t expect = sc.task_arrival[j] == 1 ? 1 : 0;
    if (tr.beta[0][j] != expect) fail(init, "beta(task " + std::to_string(j) + ", period 1)");
  }
  report.families.push_back(init);

  // per-(slot, period) and (task, period) assignment counts
  Grid<int> xa(S, H, 0), xt(M, H, 0);
  for (const auto& d : tr.decisions) {
    ++xa(d.slot, d.period - 1);
    ++xt(d.task, d.period - 1);
  }

  ValidationFamily avail{"availability", true, ""};
  for (int t = 0; t < H; ++t) {
    for (int s = 0; s < S; ++s)
      if (xa(s, t) > static_cast<int>(tr.alpha[t][s]))
        fail(avail, "(slot " + std::to_string(s) + ", period " + std::to_string(t + 1) + ")");
    for (int j = 0; j < M; ++j)
      if (xt(j, t) > static_cast<int>(tr.beta[t][j]))
        fail(avail, "(task " + std::to_string(j) + ", period " + std::to_string(t + 1) + ")");
  }
  report.families.push_back(avail);

  ValidationFamily cons{"conservation", true, ""};
  for (int t = 0; t + 1 < H; ++t) {
    for (int s = 0; s < S; ++s) {
      const int arrives = tr.slots[s].second == t + 2 ? 1 : 0;
      if (static_cast<int>(tr.alpha[t + 1][s]) != static_cast<int>(tr.alpha[t][s]) - xa(s, t) + arrives)
        fail(cons, "alpha(slot " + std::to_string(s) + ", period " + std::to_string(t + 2) + ")");
    }
    for (int j = 0; j < M; ++j) {
      const int arrives = sc.task_arrival[j] == t + 2 ? 1 : 0;
      if (static_cast<int>(tr.beta[t + 1][j]) != static_cast<int>(tr.beta[t][j]) - xt(j, t) + arrives)
        fail(cons, "beta(task " + std::to_string(j) + ", period " + std::to_string(t + 2) + ")");
    }
  }
  report.families.push_back(cons);
  return report;
}

}  // namespace assignkit
