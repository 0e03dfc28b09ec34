#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "assignkit/errors.hpp"
#include "assignkit/grid.hpp"
#include "assignkit/instance.hpp"

namespace assignkit {

/// Arrival streams plus per-period utilities for a rolling-horizon run.
/// Periods are 1-based. Every listed agent and task arrives exactly once
/// (the nonrenewable convention); in Reassign mode a completed agent
/// re-enters the engine as a synthetic arrival under a fresh slot.
struct Scenario {
  enum class Mode { Commit, Reassign };

  int horizon = 1;
  std::vector<int> agent_arrival;         // arrival period per agent
  std::vector<int> task_arrival;          // arrival period per task
  std::vector<Grid<Rational>> utilities;  // [period-1] -> n_agents x n_tasks
  Sense sense = Sense::MaximizeProfit;
  Mode mode = Mode::Commit;
  std::optional<Grid<int>> travel_periods;   // Reassign: commitment-to-arrival lag, >= 1
  std::optional<Grid<int>> service_periods;  // Reassign: assisting duration, >= 1
  std::uint64_t seed = 0;

  [[nodiscard]] int n_agents() const { return static_cast<int>(agent_arrival.size()); }
  [[nodiscard]] int n_tasks() const { return static_cast<int>(task_arrival.size()); }

  [[nodiscard]] const Rational& utility(int agent, int task, int period) const {
    return utilities[period - 1](agent, task);
  }
  [[nodiscard]] int travel(int agent, int task) const {
    return travel_periods ? (*travel_periods)(agent, task) : 1;
  }
  [[nodiscard]] int service(int agent, int task) const {
    return service_periods ? (*service_periods)(agent, task) : 1;
  }

  void validate() const {
    if (horizon < 1) throw std::invalid_argument("scenario horizon must be >= 1");
    if (agent_arrival.empty() || task_arrival.empty())
      throw std::invalid_argument("scenario needs at least one agent and one task");
    for (int a : agent_arrival)
      if (a < 1 || a > horizon) throw std::invalid_argument("agent arrival outside the horizon");
    for (int t : task_arrival)
      if (t < 1 || t > horizon) throw std::invalid_argument("task arrival outside the horizon");
    if (static_cast<int>(utilities.size()) != horizon)
      throw std::invalid_argument("utilities must provide one matrix per period");
    for (const auto& g : utilities)
      if (g.rows() != n_agents() || g.cols() != n_tasks())
        throw std::invalid_argument("utility matrix shape mismatch");
    for (const auto* durations : {&travel_periods, &service_periods}) {
      if (!durations->has_value()) continue;
      const Grid<int>& g = **durations;
      if (g.rows() != n_agents() || g.cols() != n_tasks())
        throw std::invalid_argument("duration matrix shape mismatch");
      for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j)
          if (g(i, j) < 1) throw std::invalid_argument("durations must be >= 1");
    }
  }
};

/// The availability state between periods. In Commit mode alpha/beta are
/// exactly the model's availability bits; in Reassign mode they reflect
/// the engine view (traveling agents and their target tasks stay in play)
/// and the model-level trajectory is derived from the recorded decisions.
struct FleetState {
  struct Life {
    enum class Phase { Idle, Assigned, Assisting, Done };
    Phase phase = Phase::Idle;
    int task = -1;
    int commit_period = 0;  // period of the commitment that is in force
    int arrive_at = 0;      // Assigned: period the agent reaches the task
    int complete_at = 0;    // Assisting: last period of assistance
  };
  enum class TaskPhase { Open, Locked, Done };

  int period = 1;  // the period this state is about to execute
  std::vector<std::uint8_t> alpha;  // per slot
  std::vector<std::uint8_t> beta;   // per task
  std::vector<Life> lifecycle;      // Reassign mode only; per slot
  std::vector<TaskPhase> task_phase;
  std::vector<std::pair<int, int>> slots;  // (agent id, arrival period) per slot
  long reassignments = 0;

  static FleetState initial(const Scenario& sc) {
    sc.validate();
    FleetState st;
    st.period = 1;
    st.alpha.assign(sc.n_agents(), 0);
    st.beta.assign(sc.n_tasks(), 0);
    st.task_phase.assign(sc.n_tasks(), TaskPhase::Open);
    for (int i = 0; i < sc.n_agents(); ++i) {
      st.slots.emplace_back(i, sc.agent_arrival[i]);
      if (sc.agent_arrival[i] == 1) st.alpha[i] = 1;
    }
    for (int j = 0; j < sc.n_tasks(); ++j)
      if (sc.task_arrival[j] == 1) st.beta[j] = 1;
    if (sc.mode == Scenario::Mode::Reassign) st.lifecycle.assign(sc.n_agents(), Life{});
    return st;
  }
};

/// The recorded model-level run: decisions x_{sj tau}, the availability
/// histories they induce, and the aggregate metrics.
struct Trajectory {
  struct Decision {
    int slot = -1;
    int task = -1;
    int period = 0;
    Rational value;
    friend bool operator==(const Decision& a, const Decision& b) {
      return a.slot == b.slot && a.task == b.task && a.period == b.period && a.value == b.value;
    }
  };

  std::vector<std::pair<int, int>> slots;  // (agent id, arrival period)
  std::vector<Decision> decisions;
  std::vector<std::vector<std::uint8_t>> alpha;  // [period-1][slot]
  std::vector<std::vector<std::uint8_t>> beta;   // [period-1][task]
  std::vector<Rational> per_period_values;       // model-period utility sums
  std::vector<Rational> per_period_objectives;   // policy's per-period criterion values
  Rational total;
  int stranded_tasks = 0;
  int unused_agents = 0;
  long reassignments = 0;
  bool coverage_satisfied = true;
};

}  // namespace assignkit
