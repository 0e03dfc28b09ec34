#pragma once

#include <numeric>
#include <vector>

#include "assignkit/errors.hpp"
#include "assignkit/hungarian.hpp"
#include "assignkit/instance.hpp"

namespace assignkit {

/// Tasks grouped into categories; d[j] agents must serve category j.
struct SemiAssignmentDemand {
  std::vector<int> d;

  void validate_for(const AssignmentInstance& inst) const {
    if (static_cast<int>(d.size()) != inst.n_tasks)
      throw std::invalid_argument("demand vector size must equal the category count");
    if (inst.n_tasks > inst.n_agents)
      throw std::invalid_argument("semi-assignment requires no more categories than agents");
    int total = 0;
    for (int x : d) {
      if (x < 1) throw std::invalid_argument("demands must be positive");
      total += x;
    }
    if (total != inst.n_agents)
      throw std::invalid_argument("demands must sum to the agent count");
  }
};

struct SemiAssignmentResult {
  std::vector<int> category_of_agent;  // one category per agent
  Rational total;
};

/// Semi-assignment: each agent gets exactly one category, category j gets
/// exactly d_j agents, total weight minimal. Solved by replicating each
/// category column d_j times into an equivalent square assignment.
inline SemiAssignmentResult solve_semi_assignment(const AssignmentInstance& inst,
                                                  const SemiAssignmentDemand& demand) {
  inst.validate();
  demand.validate_for(inst);
  if (inst.sense != Sense::MinimizeCost)
    throw std::invalid_argument("semi-assignment requires MinimizeCost sense");

  const int n = inst.n_agents;
  std::vector<int> column_category;
  column_category.reserve(n);
  for (int j = 0; j < inst.n_tasks; ++j)
    for (int r = 0; r < demand.d[j]; ++r) column_category.push_back(j);

  Grid<Rational> w(n, n);
  Grid<std::uint8_t> forb(n, n, 0);
  for (int i = 0; i < n; ++i)
    for (int col = 0; col < n; ++col) {
      w(i, col) = inst.weights(i, column_category[col]);
      forb(i, col) = inst.forbidden(i, column_category[col]);
    }
  AssignmentInstance expanded(std::move(w), Sense::MinimizeCost);
  expanded.forbidden = std::move(forb);

  const HungarianResult res = solve_hungarian(expanded);
  SemiAssignmentResult out;
  out.category_of_agent.assign(n, -1);
  out.total = Rational(0);
  for (const auto& [i, col] : res.matching.pairs) {
    out.category_of_agent[i] = column_category[col];
    out.total += inst.weights(i, column_category[col]);
  }
  return out;
}

}  // namespace assignkit
