#pragma once

#include <string>
#include <utility>
#include <vector>

#include "assignkit/simulation.hpp"

namespace assignkit {

/// Centralized twin of synchronous CBAA: repeatedly commit the globally
/// largest remaining positive score (ties toward the lower agent id, then
/// the lower task id) and remove both parties.
inline Matching greedy_sequential(const AssignmentInstance& inst) {
  inst.validate();
  if (inst.sense != Sense::MaximizeProfit)
    throw std::invalid_argument("greedy_sequential requires MaximizeProfit sense");
  std::vector<char> agent_used(inst.n_agents, 0), task_used(inst.n_tasks, 0);
  std::vector<std::pair<int, int>> pairs;
  while (true) {
    int bi = -1, bj = -1;
    for (int i = 0; i < inst.n_agents; ++i) {
      if (agent_used[i]) continue;
      for (int j = 0; j < inst.n_tasks; ++j) {
        if (task_used[j] || !inst.allowed(i, j)) continue;
        const Rational s = inst.effective_weight(i, j);
        if (!(Rational(0) < s)) continue;
        if (bi == -1 || inst.effective_weight(bi, bj) < s) {
          bi = i;
          bj = j;
        }
      }
    }
    if (bi == -1) break;
    agent_used[bi] = 1;
    task_used[bj] = 1;
    pairs.emplace_back(bi, bj);
  }
  return make_matching(inst, std::move(pairs));
}

namespace cbaa {

/// Per-agent consensus state: the agent's selection x_i, the winning-bid
/// list y_i and the believed winners z_i.
struct AgentState {
  int selected = -1;
  std::vector<Rational> y;
  std::vector<int> z;

  friend bool operator==(const AgentState&, const AgentState&) = default;
};

inline std::vector<AgentState> initial_states(int n_agents, int n_tasks) {
  std::vector<AgentState> s(n_agents);
  for (auto& a : s) {
    a.y.assign(n_tasks, Rational(0));
    a.z.assign(n_tasks, -1);
  }
  return s;
}

/// One round: active unassigned agents bid on their best task whose score
/// beats the local winning bid; the (y, z) lists travel along the
/// delivered edges and merge by element-wise max (equal bids resolve to
/// the lower agent id); outbid agents release their selection.
///
/// Every comparison uses the same order as the merge: bid value first,
/// lower agent id on equal value. An agent may therefore also claim a
/// task whose standing equal bid belongs to a higher id, which keeps the
/// run aligned with the sequential greedy tie-breaking.
inline void advance_round(std::vector<AgentState>& agents, const Grid<Rational>& scores,
                          const std::vector<char>& active,
                          const std::vector<std::pair<int, int>>& deliveries) {
  const int n_tasks = scores.cols();
  for (std::size_t i = 0; i < agents.size(); ++i) {
    AgentState& a = agents[i];
    if (!active[i] || a.selected != -1) continue;
    int best = -1;
    for (int j = 0; j < n_tasks; ++j) {
      const Rational& s = scores(static_cast<int>(i), j);
      const bool beats = a.y[j] < s || (a.y[j] == s && a.z[j] != -1 &&
                                        static_cast<int>(i) < a.z[j]);
      if (!beats) continue;
      if (best == -1 || scores(static_cast<int>(i), best) < s) best = j;
    }
    if (best == -1) continue;
    a.selected = best;
    a.y[best] = scores(static_cast<int>(i), best);
    a.z[best] = static_cast<int>(i);
  }

  const std::vector<AgentState> snapshot = agents;
  for (const auto& [from, to] : deliveries) {
    const AgentState& src = snapshot[from];
    AgentState& dst = agents[to];
    for (int j = 0; j < n_tasks; ++j) {
      const bool better = dst.y[j] < src.y[j] ||
                          (dst.y[j] == src.y[j] && src.z[j] != -1 &&
                           (dst.z[j] == -1 || src.z[j] < dst.z[j]));
      if (better) {
        dst.y[j] = src.y[j];
        dst.z[j] = src.z[j];
      }
    }
  }
  for (std::size_t i = 0; i < agents.size(); ++i) {
    AgentState& a = agents[i];
    if (a.selected != -1 && a.z[a.selected] != static_cast<int>(i)) a.selected = -1;
  }
}

inline ProtocolRun simulate(const AssignmentInstance& inst, const NetworkTopology& topo,
                            bool sync, long max_rounds, int quiet_needed,
                            const SimOptions& opts) {
  const int n = inst.n_agents;
  Grid<Rational> scores(inst.n_agents, inst.n_tasks, Rational(0));
  for (int i = 0; i < inst.n_agents; ++i)
    for (int j = 0; j < inst.n_tasks; ++j)
      scores(i, j) = inst.allowed(i, j) ? inst.effective_weight(i, j) : Rational(0);

  std::vector<AgentState> agents = initial_states(n, inst.n_tasks);
  Rng rng(topo.seed);
  ProtocolRun run;
  int quiet = 0;
  for (long round = 1; round <= max_rounds; ++round) {
    RoundLog log;
    log.round = round;
    std::vector<char> active(n, 1);
    if (!sync)
      for (int i = 0; i < n; ++i) active[i] = rng.bernoulli(Rational(1, 2)) ? 1 : 0;
    const auto delivered = sim_detail::sample_deliveries(topo, rng, log.messages_sent,
                                                         log.messages_dropped);
    const std::vector<AgentState> before = agents;
    advance_round(agents, scores, active, delivered);
    if (opts.record_deliveries) run.deliveries.push_back(delivered);
    std::vector<int> claims(n);
    for (int i = 0; i < n; ++i) claims[i] = agents[i].selected;
    log.conflicts_open = sim_detail::count_conflicts(claims, inst.n_tasks);
    if (opts.record_state_digests) {
      for (const auto& a : agents) {
        std::string bytes;
        for (int j = 0; j < inst.n_tasks; ++j)
          bytes += a.y[j].to_string() + "@" + std::to_string(a.z[j]) + "|";
        bytes += "x=" + std::to_string(a.selected);
        log.agent_digests.push_back(fnv1a64(bytes));
      }
    }
    run.logs.push_back(log);
    run.rounds = round;
    quiet = agents == before ? quiet + 1 : 0;
    if (quiet >= quiet_needed && log.conflicts_open == 0) {
      run.converged = true;
      break;
    }
  }
  std::vector<int> claims(n);
  for (int i = 0; i < n; ++i) claims[i] = agents[i].selected;
  run.conflicts_open = sim_detail::count_conflicts(claims, inst.n_tasks);
  run.matching = sim_detail::uncontested_matching(inst, claims);
  return run;
}

}  // namespace cbaa

/// Consensus-based auction: alternating local bid and max-consensus
/// phases over the communication graph until nothing changes for a full
/// diameter's worth of rounds. Synchronous mode over a connected static
/// network reproduces greedy_sequential; async mode staggers bidding with
/// seeded per-round agent activation.
inline ProtocolRun run_cbaa(const AssignmentInstance& inst, const NetworkTopology& topo,
                            bool sync = true, const SimOptions& opts = {}) {
  inst.validate();
  if (inst.sense != Sense::MaximizeProfit)
    throw std::invalid_argument("cbaa requires MaximizeProfit sense");
  if (topo.n_nodes != inst.n_agents)
    throw std::invalid_argument("topology must have one node per agent");
  if (!topo.connected()) throw std::invalid_argument("cbaa requires a connected topology");
  if (!topo.loss_probability.is_zero())
    throw std::invalid_argument("lossless regime required; use run_lossy for lossy topologies");

  const int delta = std::max(topo.diameter(), 1);
  const int quiet_needed = sync ? delta : delta + 8;
  long guard = opts.max_rounds_override;
  if (guard <= 0) guard = 64 + 16L * inst.n_agents * delta;
  ProtocolRun run = cbaa::simulate(inst, topo, sync, guard, quiet_needed, opts);
  if (!run.converged)
    throw ConvergenceError("cbaa exceeded its round guard (" + std::to_string(guard) + " rounds)");
  return run;
}

}  // namespace assignkit
