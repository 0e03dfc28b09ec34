#pragma once

#include <string>
#include <utility>
#include <vector>

#include "assignkit/auction.hpp"
#include "assignkit/simulation.hpp"

namespace assignkit {
namespace dauction {

/// Per-agent local knowledge: a full price table with the believed winner
/// of every task, plus the agent's own claimed task. Updated only by the
/// agent's own bids and by merging neighbor tables.
struct AgentState {
  std::vector<Rational> prices;
  std::vector<int> winner;  // believed winning agent per task, -1 none
  int assigned = -1;

  friend bool operator==(const AgentState&, const AgentState&) = default;
};

inline std::vector<AgentState> initial_states(int n_agents, int n_tasks) {
  std::vector<AgentState> s(n_agents);
  for (auto& a : s) {
    a.prices.assign(n_tasks, Rational(0));
    a.winner.assign(n_tasks, -1);
  }
  return s;
}

/// One synchronous round: every agent that believes itself unassigned bids
/// against its local prices, then the post-bid tables travel along the
/// delivered edges and are merged entrywise (higher price wins; on equal
/// price the lower bidder id), and finally outbid agents release.
///
/// Pure in (states, deliveries): an agent's next state depends only on its
/// own state and the tables actually delivered to it this round.
inline void advance_round(std::vector<AgentState>& agents, const Grid<Rational>& benefit,
                          const Rational& eps,
                          const std::vector<std::pair<int, int>>& deliveries) {
  const int n_tasks = benefit.cols();
  for (std::size_t i = 0; i < agents.size(); ++i) {
    AgentState& a = agents[i];
    if (a.assigned != -1) continue;
    int best = 0;
    Rational alpha = benefit(static_cast<int>(i), 0) - a.prices[0];
    for (int j = 1; j < n_tasks; ++j) {
      const Rational v = benefit(static_cast<int>(i), j) - a.prices[j];
      if (alpha < v) {
        alpha = v;
        best = j;
      }
    }
    Rational beta = alpha;  // a single task bids with zero margin
    bool has_beta = false;
    for (int j = 0; j < n_tasks; ++j) {
      if (j == best) continue;
      const Rational v = benefit(static_cast<int>(i), j) - a.prices[j];
      if (!has_beta || beta < v) {
        beta = v;
        has_beta = true;
      }
    }
    a.prices[best] += (alpha - beta) + eps;
    a.winner[best] = static_cast<int>(i);
    a.assigned = best;
  }

  const std::vector<AgentState> snapshot = agents;
  for (const auto& [from, to] : deliveries) {
    const AgentState& src = snapshot[from];
    AgentState& dst = agents[to];
    for (int j = 0; j < n_tasks; ++j) {
      const bool better =
          dst.prices[j] < src.prices[j] ||
          (dst.prices[j] == src.prices[j] && src.winner[j] != -1 &&
           (dst.winner[j] == -1 || src.winner[j] < dst.winner[j]));
      if (better) {
        dst.prices[j] = src.prices[j];
        dst.winner[j] = src.winner[j];
      }
    }
  }
  for (std::size_t i = 0; i < agents.size(); ++i) {
    AgentState& a = agents[i];
    if (a.assigned != -1 && a.winner[a.assigned] != static_cast<int>(i)) a.assigned = -1;
  }
}

inline ProtocolRun simulate(const AssignmentInstance& inst, const NetworkTopology& topo,
                            const Rational& eps, long max_rounds, int quiet_needed,
                            const SimOptions& opts) {
  const int n = inst.n_agents;
  Grid<Rational> benefit = sim_detail::benefit_matrix(inst);
  std::vector<AgentState> agents = initial_states(n, inst.n_tasks);
  Rng rng(topo.seed);
  ProtocolRun run;
  int quiet = 0;
  for (long round = 1; round <= max_rounds; ++round) {
    RoundLog log;
    log.round = round;
    const auto delivered = sim_detail::sample_deliveries(topo, rng, log.messages_sent,
                                                         log.messages_dropped);
    const std::vector<AgentState> before = agents;
    advance_round(agents, benefit, eps, delivered);
    if (opts.record_deliveries) run.deliveries.push_back(delivered);
    std::vector<int> claims(n);
    for (int i = 0; i < n; ++i) claims[i] = agents[i].assigned;
    log.conflicts_open = sim_detail::count_conflicts(claims, inst.n_tasks);
    if (opts.record_state_digests) {
      for (const auto& a : agents) {
        std::string bytes;
        for (int j = 0; j < inst.n_tasks; ++j)
          bytes += a.prices[j].to_string() + "@" + std::to_string(a.winner[j]) + "|";
        bytes += "x=" + std::to_string(a.assigned);
        log.agent_digests.push_back(fnv1a64(bytes));
      }
    }
    run.logs.push_back(log);
    run.rounds = round;
    quiet = agents == before ? quiet + 1 : 0;
    bool all_assigned = true;
    for (int i = 0; i < n; ++i) all_assigned = all_assigned && claims[i] != -1;
    if (quiet >= quiet_needed && all_assigned && log.conflicts_open == 0) {
      run.converged = true;
      break;
    }
  }
  std::vector<int> claims(n);
  for (int i = 0; i < n; ++i) claims[i] = agents[i].assigned;
  run.conflicts_open = sim_detail::count_conflicts(claims, inst.n_tasks);
  run.matching = sim_detail::uncontested_matching(inst, claims);
  return run;
}

}  // namespace dauction

/// Distributed Bertsekas auction over a communication graph: prices move
/// only by local neighbor exchange, multi-hop. Lossless and connected is
/// the guaranteed regime; the run ends with a conflict-free perfect
/// matching satisfying eps-complementary slackness with respect to the
/// converged global prices. Integer weights with eps < 1/n give the
/// centralized optimum exactly.
inline ProtocolRun run_distributed_auction(const AssignmentInstance& inst,
                                           const NetworkTopology& topo, const Rational& eps,
                                           const SimOptions& opts = {}) {
  inst.validate();
  if (!inst.is_square()) throw std::invalid_argument("distributed auction requires a square instance");
  if (topo.n_nodes != inst.n_agents)
    throw std::invalid_argument("topology must have one node per agent");
  if (!topo.connected()) throw std::invalid_argument("distributed auction requires a connected topology");
  if (!topo.loss_probability.is_zero())
    throw std::invalid_argument("lossless regime required; use run_lossy for lossy topologies");
  if (!(Rational(0) < eps)) throw std::invalid_argument("distributed auction requires epsilon > 0");
  hungarian_detail::check_no_blocked_line(inst);

  const int delta = topo.diameter();
  long guard = opts.max_rounds_override;
  if (guard <= 0) {
    const long double big = inst.big_m().to_double();
    const long double bound = 64.0L + 4.0L * std::max(delta, 1) * inst.n_agents *
                                          static_cast<long double>(inst.n_agents) * inst.n_agents *
                                          (big / eps.to_double() + 1.0L);
    guard = bound > 4.0e18L ? static_cast<long>(4e18) : static_cast<long>(bound);
  }
  ProtocolRun run = dauction::simulate(inst, topo, eps, guard, std::max(delta, 1), opts);
  if (!run.converged)
    throw ConvergenceError("distributed auction exceeded its round guard (" +
                           std::to_string(guard) + " rounds)");
  for (const auto& [i, j] : run.matching.pairs)
    if (!inst.allowed(i, j))
      throw InfeasibleError("infeasible: no perfect matching avoids the forbidden pairs");
  if (!run.matching.is_perfect)
    throw ConvergenceError("distributed auction terminated without a perfect matching");
  return run;
}

}  // namespace assignkit
