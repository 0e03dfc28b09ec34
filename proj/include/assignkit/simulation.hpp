#pragma once

#include <utility>
#include <vector>

#include "assignkit/digest.hpp"
#include "assignkit/errors.hpp"
#include "assignkit/instance.hpp"
#include "assignkit/rng.hpp"
#include "assignkit/topology.hpp"

namespace assignkit {

/// Per-round accounting shared by both protocols.
struct RoundLog {
  long round = 0;
  long messages_sent = 0;
  long messages_dropped = 0;
  int conflicts_open = 0;
  std::vector<std::uint64_t> agent_digests;  // filled when requested
};

struct SimOptions {
  long max_rounds_override = 0;      // 0 = use the protocol's own guard
  bool record_deliveries = false;    // keep the delivered (from, to) lists for replay
  bool record_state_digests = false; // per-agent state digest per round
};

/// Outcome of a protocol run. For strict (lossless) runs the matching is
/// perfect and conflict-free; lossy runs may end unconverged, in which
/// case `matching` holds only the uncontested claims.
struct ProtocolRun {
  Matching matching;
  long rounds = 0;
  bool converged = false;
  int conflicts_open = 0;
  std::vector<RoundLog> logs;
  std::vector<std::vector<std::pair<int, int>>> deliveries;  // when recorded
};

namespace sim_detail {

/// Samples one round of directed neighbor messages under the topology's
/// loss probability. Broadcast model: every node sends to every neighbor
/// every round.
inline std::vector<std::pair<int, int>> sample_deliveries(const NetworkTopology& topo, Rng& rng,
                                                          long& sent, long& dropped) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < topo.n_nodes; ++i)
    for (int j = 0; j < topo.n_nodes; ++j) {
      if (i == j || !topo.adjacency(i, j)) continue;
      ++sent;
      if (!topo.loss_probability.is_zero() && rng.bernoulli(topo.loss_probability)) {
        ++dropped;
        continue;
      }
      out.emplace_back(i, j);
    }
  return out;
}

/// Profit-form benefit matrix: what agent i gains from task j. Cost
/// instances are negated; forbidden pairs get a prohibitive penalty.
inline Grid<Rational> benefit_matrix(const AssignmentInstance& inst) {
  const Rational big = inst.big_m();
  Grid<Rational> b(inst.n_agents, inst.n_tasks);
  for (int i = 0; i < inst.n_agents; ++i)
    for (int j = 0; j < inst.n_tasks; ++j) {
      if (!inst.allowed(i, j))
        b(i, j) = -big;
      else
        b(i, j) = inst.sense == Sense::MaximizeProfit ? inst.effective_weight(i, j)
                                                      : -inst.weights(i, j);
    }
  return b;
}

inline int count_conflicts(const std::vector<int>& claims, int n_tasks) {
  std::vector<int> claimants(n_tasks, 0);
  for (int c : claims)
    if (c >= 0) ++claimants[c];
  int conflicts = 0;
  for (int c : claimants)
    if (c > 1) ++conflicts;
  return conflicts;
}

inline Matching uncontested_matching(const AssignmentInstance& inst,
                                     const std::vector<int>& claims) {
  std::vector<int> claimants(inst.n_tasks, 0);
  for (int c : claims)
    if (c >= 0) ++claimants[c];
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < static_cast<int>(claims.size()); ++i)
    if (claims[i] >= 0 && claimants[claims[i]] == 1) pairs.emplace_back(i, claims[i]);
  return make_matching(inst, std::move(pairs));
}

}  // namespace sim_detail

}  // namespace assignkit
