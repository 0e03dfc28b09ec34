#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "assignkit/digest.hpp"
#include "assignkit/instance.hpp"
#include "assignkit/scenario.hpp"
#include "assignkit/simulation.hpp"

namespace assignkit {

/// One run's structured report. Reports are reproducible: identical
/// inputs and seed give a byte-identical body, with wall_ms the single
/// field excluded from that contract.
struct RunReport {
  nlohmann::json body = nlohmann::json::object();

  void set(const std::string& key, const nlohmann::json& value) { body[key] = value; }

  [[nodiscard]] std::string to_string() const { return body.dump(2) + "\n"; }

  /// The report without its wall-time field, for determinism checks.
  [[nodiscard]] std::string deterministic_body() const {
    nlohmann::json copy = body;
    copy.erase("wall_ms");
    return copy.dump(2) + "\n";
  }
};

inline nlohmann::json matching_to_json(const Matching& m) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [i, j] : m.pairs) pairs.push_back(nlohmann::json::array({i, j}));
  return pairs;
}

inline nlohmann::json dual_to_json(const DualState& d) {
  nlohmann::json doc;
  nlohmann::json u = nlohmann::json::array(), v = nlohmann::json::array();
  for (const auto& x : d.u) u.push_back(x.to_string());
  for (const auto& x : d.v) v.push_back(x.to_string());
  doc["u"] = std::move(u);
  doc["v"] = std::move(v);
  doc["epsilon"] = d.epsilon.to_string();
  doc["dual_sum"] = d.dual_sum().to_string();
  return doc;
}

/// Per-period series of a dynamic run as CSV.
inline std::string trajectory_csv(const Trajectory& tr) {
  std::ostringstream out;
  out << "period,assignments,period_value,period_objective,stranded_tasks\n";
  const int horizon = static_cast<int>(tr.per_period_values.size());
  // stranded at period t: tasks arrived by t and not yet assigned by t
  for (int t = 1; t <= horizon; ++t) {
    int assignments = 0;
    for (const auto& d : tr.decisions)
      if (d.period == t) ++assignments;
    int stranded = 0;
    for (std::size_t j = 0; j < tr.beta[t - 1].size(); ++j) {
      bool assigned_by_t = false;
      for (const auto& d : tr.decisions)
        if (d.task == static_cast<int>(j) && d.period <= t) assigned_by_t = true;
      bool arrived = false;
      for (int earlier = 0; earlier < t; ++earlier) arrived = arrived || tr.beta[earlier][j];
      if (arrived && !assigned_by_t) ++stranded;
    }
    out << t << ',' << assignments << ',' << tr.per_period_values[t - 1] << ','
        << (t <= static_cast<int>(tr.per_period_objectives.size())
                ? tr.per_period_objectives[t - 1].to_string()
                : "0")
        << ',' << stranded << '\n';
  }
  return out.str();
}

/// Per-round series of a protocol run as CSV.
inline std::string round_log_csv(const std::vector<RoundLog>& logs) {
  std::ostringstream out;
  out << "round,messages_sent,messages_dropped,conflicts_open\n";
  for (const auto& log : logs)
    out << log.round << ',' << log.messages_sent << ',' << log.messages_dropped << ','
        << log.conflicts_open << '\n';
  return out.str();
}

}  // namespace assignkit
