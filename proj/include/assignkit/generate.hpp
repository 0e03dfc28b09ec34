#pragma once

#include <string>
#include <vector>

#include "assignkit/instance.hpp"
#include "assignkit/rng.hpp"
#include "assignkit/scenario.hpp"
#include "assignkit/topology.hpp"

namespace assignkit {

/// Seeded uniform-integer instance. Optional qualification density (per
/// mille qualified) and a count of uniformly placed forbidden pairs.
struct InstanceGenSpec {
  int n_agents = 4;
  int n_tasks = 4;
  std::int64_t lo = 0;
  std::int64_t hi = 10;
  Sense sense = Sense::MinimizeCost;
  int qualification_permille = -1;  // <0: no qualification mask
  int forbidden_pairs = 0;
  std::uint64_t seed = 0;
};

inline AssignmentInstance random_instance(const InstanceGenSpec& spec) {
  if (spec.n_agents < 1 || spec.n_tasks < 1 || spec.n_agents > 10000 || spec.n_tasks > 10000)
    throw std::invalid_argument("instance dimensions must be within [1, 10000]");
  if (spec.hi < spec.lo) throw std::invalid_argument("weight range is empty");
  Rng rng(spec.seed);
  Grid<Rational> w(spec.n_agents, spec.n_tasks);
  for (int i = 0; i < spec.n_agents; ++i)
    for (int j = 0; j < spec.n_tasks; ++j)
      w(i, j) = Rational(spec.lo + static_cast<std::int64_t>(
                                       rng.next() % static_cast<std::uint64_t>(spec.hi - spec.lo + 1)));
  AssignmentInstance inst(std::move(w), spec.sense);
  if (spec.qualification_permille >= 0) {
    Grid<std::uint8_t> q(spec.n_agents, spec.n_tasks, 0);
    for (int i = 0; i < spec.n_agents; ++i)
      for (int j = 0; j < spec.n_tasks; ++j)
        q(i, j) = rng.bernoulli(Rational(spec.qualification_permille, 1000)) ? 1 : 0;
    inst.qualification = std::move(q);
  }
  for (int k = 0; k < spec.forbidden_pairs; ++k) {
    const int i = rng.uniform_int(0, spec.n_agents - 1);
    const int j = rng.uniform_int(0, spec.n_tasks - 1);
    inst.forbidden(i, j) = 1;
  }
  return inst;
}

/// Seeded scenario: uniform arrival periods, uniform integer utilities.
struct ScenarioGenSpec {
  int n_agents = 3;
  int n_tasks = 3;
  int horizon = 3;
  std::int64_t lo = 0;
  std::int64_t hi = 10;
  Sense sense = Sense::MaximizeProfit;
  Scenario::Mode mode = Scenario::Mode::Commit;
  std::uint64_t seed = 0;
};

inline Scenario random_scenario(const ScenarioGenSpec& spec) {
  if (spec.horizon < 1 || spec.horizon > 10000)
    throw std::invalid_argument("horizon must be within [1, 10000]");
  if (spec.n_agents < 1 || spec.n_tasks < 1 || spec.n_agents > 10000 || spec.n_tasks > 10000)
    throw std::invalid_argument("scenario sides must be within [1, 10000]");
  if (spec.hi < spec.lo) throw std::invalid_argument("utility range is empty");
  Rng rng(spec.seed);
  Scenario sc;
  sc.horizon = spec.horizon;
  sc.sense = spec.sense;
  sc.mode = spec.mode;
  sc.seed = spec.seed;
  for (int i = 0; i < spec.n_agents; ++i) sc.agent_arrival.push_back(rng.uniform_int(1, spec.horizon));
  for (int j = 0; j < spec.n_tasks; ++j) sc.task_arrival.push_back(rng.uniform_int(1, spec.horizon));
  for (int tau = 0; tau < spec.horizon; ++tau) {
    Grid<Rational> g(spec.n_agents, spec.n_tasks);
    for (int i = 0; i < spec.n_agents; ++i)
      for (int j = 0; j < spec.n_tasks; ++j)
        g(i, j) = Rational(spec.lo + static_cast<std::int64_t>(
                                         rng.next() % static_cast<std::uint64_t>(spec.hi - spec.lo + 1)));
    sc.utilities.push_back(std::move(g));
  }
  return sc;
}

enum class TopologyKind { Complete, Ring, Line, Erdos };

inline TopologyKind topology_kind_from_string(const std::string& s) {
  if (s == "complete") return TopologyKind::Complete;
  if (s == "ring") return TopologyKind::Ring;
  if (s == "line") return TopologyKind::Line;
  if (s == "erdos") return TopologyKind::Erdos;
  throw std::invalid_argument("unknown topology kind '" + s + "'");
}

/// Seeded topology. The erdos variant samples each edge with probability
/// p and then chains any disconnected components so protocols that need
/// connectivity can run on it.
inline NetworkTopology make_topology(TopologyKind kind, int n, const Rational& edge_probability,
                                     const Rational& loss, std::uint64_t seed) {
  if (n < 1 || n > 10000) throw std::invalid_argument("topology size must be within [1, 10000]");
  switch (kind) {
    case TopologyKind::Complete:
      return NetworkTopology::complete(n, loss, seed);
    case TopologyKind::Ring:
      return NetworkTopology::ring(n, loss, seed);
    case TopologyKind::Line:
      return NetworkTopology::line(n, loss, seed);
    case TopologyKind::Erdos:
      break;
  }
  Rng rng(seed);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.bernoulli(edge_probability)) edges.emplace_back(i, j);
  NetworkTopology topo = NetworkTopology::from_edges(n, edges, loss, seed);
  // chain components deterministically until connected
  std::vector<int> depth = topo.bfs_depths(0);
  while (true) {
    int missing = -1;
    for (int v = 0; v < n; ++v)
      if (depth[v] == -1) {
        missing = v;
        break;
      }
    if (missing == -1) break;
    edges.emplace_back(missing - 1, missing);
    topo = NetworkTopology::from_edges(n, edges, loss, seed);
    depth = topo.bfs_depths(0);
  }
  return topo;
}

}  // namespace assignkit
