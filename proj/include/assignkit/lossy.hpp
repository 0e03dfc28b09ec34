#pragma once

#include "assignkit/cbaa.hpp"
#include "assignkit/distributed_auction.hpp"

namespace assignkit {

enum class Protocol { DistributedAuction, Cbaa };

inline const char* to_string(Protocol p) {
  return p == Protocol::DistributedAuction ? "dauction" : "cbaa";
}

/// Degradation harness: runs a protocol under the topology's per-message
/// loss probability and reports what happened rather than asserting
/// optimality. loss 0 reduces to the strict runs.
inline ProtocolRun run_lossy(Protocol protocol, const AssignmentInstance& inst,
                             const NetworkTopology& topo, const Rational& eps, long max_rounds,
                             const SimOptions& opts = {}) {
  inst.validate();
  if (topo.n_nodes != inst.n_agents)
    throw std::invalid_argument("topology must have one node per agent");
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
  const int quiet_needed = std::max(topo.connected() ? topo.diameter() : topo.n_nodes, 1);
  if (protocol == Protocol::DistributedAuction) {
    if (!inst.is_square())
      throw std::invalid_argument("distributed auction requires a square instance");
    if (!(Rational(0) < eps)) throw std::invalid_argument("epsilon must be > 0");
    return dauction::simulate(inst, topo, eps, max_rounds, quiet_needed, opts);
  }
  if (inst.sense != Sense::MaximizeProfit)
    throw std::invalid_argument("cbaa requires MaximizeProfit sense");
  return cbaa::simulate(inst, topo, /*sync=*/true, max_rounds, quiet_needed, opts);
}

}  // namespace assignkit
