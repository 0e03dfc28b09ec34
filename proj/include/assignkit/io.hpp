#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "assignkit/errors.hpp"
#include "assignkit/instance.hpp"
#include "assignkit/scenario.hpp"
#include "assignkit/semi_assignment.hpp"
#include "assignkit/topology.hpp"

namespace assignkit {
namespace io {

using nlohmann::json;

namespace detail {

inline Rational parse_rational_token(const std::string& tok, const std::string& where) {
  try {
    return Rational::parse(tok);
  } catch (const std::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
}

inline Rational rational_from_json(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) return parse_rational_token(v.get<std::string>(), where);
  throw ParseError(where + ": expected an integer or a rational string");
}

inline Sense sense_from_string(const std::string& s, const std::string& where) {
  if (s == "min") return Sense::MinimizeCost;
  if (s == "max") return Sense::MaximizeProfit;
  throw ParseError(where + ": sense must be 'min' or 'max', got '" + s + "'");
}

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

inline bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline json load_json(std::istream& in, const std::string& name) {
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(name + ": " + e.what());
  }
}

}  // namespace detail

/// Line-oriented text format: header "n m sense", n rows of m rationals,
/// optional QUAL block (n rows of 0/1), optional FORBID block of "i j"
/// pairs. Blank lines are ignored; anything else is rejected.
inline AssignmentInstance parse_instance_text(std::istream& in, const std::string& name) {
  std::vector<std::pair<int, std::string>> lines;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (detail::split_ws(raw).empty()) continue;
    lines.emplace_back(lineno, raw);
  }
  if (lines.empty()) throw ParseError(name + ": empty instance file");

  auto where = [&](std::size_t idx) { return name + ":" + std::to_string(lines[idx].first); };

  std::size_t cur = 0;
  const auto header = detail::split_ws(lines[cur].second);
  if (header.size() != 3)
    throw ParseError(where(cur) + ": header must be 'n m sense'");
  int n = 0, m = 0;
  try {
    n = std::stoi(header[0]);
    m = std::stoi(header[1]);
  } catch (const std::exception&) {
    throw ParseError(where(cur) + ": header must be 'n m sense'");
  }
  if (n < 1 || m < 1) throw ParseError(where(cur) + ": dimensions must be >= 1");
  const Sense sense = detail::sense_from_string(header[2], where(cur));
  ++cur;

  Grid<Rational> w(n, m);
  for (int i = 0; i < n; ++i, ++cur) {
    if (cur >= lines.size()) throw ParseError(name + ": missing weight row " + std::to_string(i));
    const auto toks = detail::split_ws(lines[cur].second);
    if (static_cast<int>(toks.size()) != m)
      throw ParseError(where(cur) + ": expected " + std::to_string(m) + " entries, got " +
                       std::to_string(toks.size()));
    for (int j = 0; j < m; ++j) w(i, j) = detail::parse_rational_token(toks[j], where(cur));
  }
  AssignmentInstance inst(std::move(w), sense);

  if (cur < lines.size() && detail::split_ws(lines[cur].second) == std::vector<std::string>{"QUAL"}) {
    ++cur;
    Grid<std::uint8_t> q(n, m, 0);
    for (int i = 0; i < n; ++i, ++cur) {
      if (cur >= lines.size()) throw ParseError(name + ": missing QUAL row " + std::to_string(i));
      const auto toks = detail::split_ws(lines[cur].second);
      if (static_cast<int>(toks.size()) != m)
        throw ParseError(where(cur) + ": expected " + std::to_string(m) + " entries, got " +
                         std::to_string(toks.size()));
      for (int j = 0; j < m; ++j) {
        if (toks[j] != "0" && toks[j] != "1")
          throw ParseError(where(cur) + ": QUAL entries must be 0 or 1");
        q(i, j) = toks[j] == "1" ? 1 : 0;
      }
    }
    inst.qualification = std::move(q);
  }

  if (cur < lines.size() &&
      detail::split_ws(lines[cur].second) == std::vector<std::string>{"FORBID"}) {
    ++cur;
    for (; cur < lines.size(); ++cur) {
      const auto toks = detail::split_ws(lines[cur].second);
      if (toks.size() != 2) throw ParseError(where(cur) + ": FORBID lines must be 'i j'");
      int i = 0, j = 0;
      try {
        i = std::stoi(toks[0]);
        j = std::stoi(toks[1]);
      } catch (const std::exception&) {
        throw ParseError(where(cur) + ": FORBID lines must be 'i j'");
      }
      if (i < 0 || i >= n || j < 0 || j >= m)
        throw ParseError(where(cur) + ": forbidden pair out of range");
      inst.forbidden(i, j) = 1;
    }
  }

  if (cur < lines.size())
    throw ParseError(where(cur) + ": unknown block '" + lines[cur].second + "'");
  return inst;
}

inline AssignmentInstance parse_instance_json(std::istream& in, const std::string& name) {
  const json doc = detail::load_json(in, name);
  for (const auto& [key, value] : doc.items()) {
    static_cast<void>(value);
    if (key != "agents" && key != "tasks" && key != "sense" && key != "weights" &&
        key != "qualification" && key != "forbidden")
      throw ParseError(name + ": unknown key '" + key + "'");
  }
  try {
    const int n = doc.at("agents").get<int>();
    const int m = doc.at("tasks").get<int>();
    if (n < 1 || m < 1) throw ParseError(name + ": dimensions must be >= 1");
    const Sense sense = detail::sense_from_string(doc.at("sense").get<std::string>(), name);
    const json& rows = doc.at("weights");
    if (static_cast<int>(rows.size()) != n) throw ParseError(name + ": weights row count mismatch");
    Grid<Rational> w(n, m);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[i].size()) != m)
        throw ParseError(name + ": weights row " + std::to_string(i) + " has the wrong length");
      for (int j = 0; j < m; ++j)
        w(i, j) = detail::rational_from_json(rows[i][j],
                                             name + ": weights[" + std::to_string(i) + "]");
    }
    AssignmentInstance inst(std::move(w), sense);
    if (doc.contains("qualification")) {
      const json& q = doc["qualification"];
      if (static_cast<int>(q.size()) != n) throw ParseError(name + ": qualification row count mismatch");
      Grid<std::uint8_t> qual(n, m, 0);
      for (int i = 0; i < n; ++i) {
        if (static_cast<int>(q[i].size()) != m)
          throw ParseError(name + ": qualification row " + std::to_string(i) + " has the wrong length");
        for (int j = 0; j < m; ++j) {
          const int v = q[i][j].get<int>();
          if (v != 0 && v != 1) throw ParseError(name + ": qualification entries must be 0 or 1");
          qual(i, j) = static_cast<std::uint8_t>(v);
        }
      }
      inst.qualification = std::move(qual);
    }
    if (doc.contains("forbidden")) {
      for (const auto& pair : doc["forbidden"]) {
        if (pair.size() != 2) throw ParseError(name + ": forbidden entries must be [i, j]");
        const int i = pair[0].get<int>(), j = pair[1].get<int>();
        if (i < 0 || i >= n || j < 0 || j >= m)
          throw ParseError(name + ": forbidden pair out of range");
        inst.forbidden(i, j) = 1;
      }
    }
    return inst;
  } catch (const json::exception& e) {
    throw ParseError(name + ": " + e.what());
  }
}

inline AssignmentInstance parse_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  return detail::has_suffix(path, ".json") ? parse_instance_json(in, path)
                                           : parse_instance_text(in, path);
}

inline std::string serialize_instance_text(const AssignmentInstance& inst) {
  std::ostringstream out;
  out << inst.n_agents << ' ' << inst.n_tasks << ' ' << to_string(inst.sense) << '\n';
  for (int i = 0; i < inst.n_agents; ++i) {
    for (int j = 0; j < inst.n_tasks; ++j) out << (j ? " " : "") << inst.weights(i, j);
    out << '\n';
  }
  if (inst.qualification) {
    out << "QUAL\n";
    for (int i = 0; i < inst.n_agents; ++i) {
      for (int j = 0; j < inst.n_tasks; ++j)
        out << (j ? " " : "") << static_cast<int>((*inst.qualification)(i, j));
      out << '\n';
    }
  }
  bool any_forbidden = false;
  for (int i = 0; i < inst.n_agents && !any_forbidden; ++i)
    for (int j = 0; j < inst.n_tasks; ++j) any_forbidden = any_forbidden || inst.forbidden(i, j);
  if (any_forbidden) {
    out << "FORBID\n";
    for (int i = 0; i < inst.n_agents; ++i)
      for (int j = 0; j < inst.n_tasks; ++j)
        if (inst.forbidden(i, j)) out << i << ' ' << j << '\n';
  }
  return out.str();
}

inline json instance_to_json(const AssignmentInstance& inst) {
  json doc;
  doc["agents"] = inst.n_agents;
  doc["tasks"] = inst.n_tasks;
  doc["sense"] = to_string(inst.sense);
  json rows = json::array();
  for (int i = 0; i < inst.n_agents; ++i) {
    json row = json::array();
    for (int j = 0; j < inst.n_tasks; ++j) row.push_back(inst.weights(i, j).to_string());
    rows.push_back(std::move(row));
  }
  doc["weights"] = std::move(rows);
  if (inst.qualification) {
    json q = json::array();
    for (int i = 0; i < inst.n_agents; ++i) {
      json row = json::array();
      for (int j = 0; j < inst.n_tasks; ++j)
        row.push_back(static_cast<int>((*inst.qualification)(i, j)));
      q.push_back(std::move(row));
    }
    doc["qualification"] = std::move(q);
  }
  json forb = json::array();
  for (int i = 0; i < inst.n_agents; ++i)
    for (int j = 0; j < inst.n_tasks; ++j)
      if (inst.forbidden(i, j)) forb.push_back(json::array({i, j}));
  if (!forb.empty()) doc["forbidden"] = std::move(forb);
  return doc;
}

inline Scenario scenario_from_json(const json& doc, const std::string& name) {
  for (const auto& [key, value] : doc.items()) {
    static_cast<void>(value);
    if (key != "horizon" && key != "sense" && key != "mode" && key != "seed" && key != "agents" &&
        key != "tasks" && key != "utilities" && key != "durations")
      throw ParseError(name + ": unknown key '" + key + "'");
  }
  try {
    Scenario sc;
    sc.horizon = doc.at("horizon").get<int>();
    if (doc.contains("sense"))
      sc.sense = detail::sense_from_string(doc["sense"].get<std::string>(), name);
    if (doc.contains("mode")) {
      const std::string mode = doc["mode"].get<std::string>();
      if (mode == "commit")
        sc.mode = Scenario::Mode::Commit;
      else if (mode == "reassign")
        sc.mode = Scenario::Mode::Reassign;
      else
        throw ParseError(name + ": mode must be 'commit' or 'reassign'");
    }
    if (doc.contains("seed")) sc.seed = doc["seed"].get<std::uint64_t>();

    const auto read_arrivals = [&](const json& list, const char* what) {
      std::vector<int> arrivals(list.size(), 0);
      std::vector<char> seen(list.size(), 0);
      for (const auto& entry : list) {
        const int id = entry.at("id").get<int>();
        if (id < 0 || id >= static_cast<int>(list.size()) || seen[id])
          throw ParseError(name + ": " + what + " ids must be 0..count-1 without repeats");
        seen[id] = 1;
        arrivals[id] = entry.at("arrival").get<int>();
      }
      return arrivals;
    };
    sc.agent_arrival = read_arrivals(doc.at("agents"), "agent");
    sc.task_arrival = read_arrivals(doc.at("tasks"), "task");

    for (int t = 0; t < sc.horizon; ++t)
      sc.utilities.emplace_back(sc.n_agents(), sc.n_tasks(), Rational(0));
    if (doc.contains("utilities")) {
      for (const auto& entry : doc["utilities"]) {
        const int i = entry.at("agent").get<int>();
        const int j = entry.at("task").get<int>();
        const int tau = entry.at("period").get<int>();
        if (i < 0 || i >= sc.n_agents() || j < 0 || j >= sc.n_tasks() || tau < 1 ||
            tau > sc.horizon)
          throw ParseError(name + ": utility entry out of range");
        sc.utilities[tau - 1](i, j) = detail::rational_from_json(entry.at("value"), name);
      }
    }
    if (doc.contains("durations")) {
      Grid<int> travel(sc.n_agents(), sc.n_tasks(), 1);
      Grid<int> service(sc.n_agents(), sc.n_tasks(), 1);
      for (const auto& entry : doc["durations"]) {
        const int i = entry.at("agent").get<int>();
        const int j = entry.at("task").get<int>();
        if (i < 0 || i >= sc.n_agents() || j < 0 || j >= sc.n_tasks())
          throw ParseError(name + ": duration entry out of range");
        if (entry.contains("travel")) travel(i, j) = entry["travel"].get<int>();
        if (entry.contains("service")) service(i, j) = entry["service"].get<int>();
      }
      sc.travel_periods = std::move(travel);
      sc.service_periods = std::move(service);
    }
    try {
      sc.validate();
    } catch (const std::exception& e) {
      throw ParseError(name + ": " + e.what());
    }
    return sc;
  } catch (const json::exception& e) {
    throw ParseError(name + ": " + e.what());
  }
}

inline Scenario parse_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  return scenario_from_json(detail::load_json(in, path), path);
}

inline json scenario_to_json(const Scenario& sc) {
  json doc;
  doc["horizon"] = sc.horizon;
  doc["sense"] = to_string(sc.sense);
  doc["mode"] = sc.mode == Scenario::Mode::Commit ? "commit" : "reassign";
  doc["seed"] = sc.seed;
  json agents = json::array(), tasks = json::array();
  for (int i = 0; i < sc.n_agents(); ++i)
    agents.push_back(json{{"id", i}, {"arrival", sc.agent_arrival[i]}});
  for (int j = 0; j < sc.n_tasks(); ++j)
    tasks.push_back(json{{"id", j}, {"arrival", sc.task_arrival[j]}});
  doc["agents"] = std::move(agents);
  doc["tasks"] = std::move(tasks);
  json utilities = json::array();
  for (int tau = 1; tau <= sc.horizon; ++tau)
    for (int i = 0; i < sc.n_agents(); ++i)
      for (int j = 0; j < sc.n_tasks(); ++j)
        if (!sc.utility(i, j, tau).is_zero())
          utilities.push_back(json{{"agent", i},
                                   {"task", j},
                                   {"period", tau},
                                   {"value", sc.utility(i, j, tau).to_string()}});
  doc["utilities"] = std::move(utilities);
  if (sc.travel_periods || sc.service_periods) {
    json durations = json::array();
    for (int i = 0; i < sc.n_agents(); ++i)
      for (int j = 0; j < sc.n_tasks(); ++j)
        if (sc.travel(i, j) != 1 || sc.service(i, j) != 1)
          durations.push_back(json{{"agent", i},
                                   {"task", j},
                                   {"travel", sc.travel(i, j)},
                                   {"service", sc.service(i, j)}});
    doc["durations"] = std::move(durations);
  }
  return doc;
}

inline NetworkTopology topology_from_json(const json& doc, const std::string& name) {
  for (const auto& [key, value] : doc.items()) {
    static_cast<void>(value);
    if (key != "n" && key != "edges" && key != "loss" && key != "seed")
      throw ParseError(name + ": unknown key '" + key + "'");
  }
  try {
    const int n = doc.at("n").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : doc.at("edges")) {
      if (e.size() != 2) throw ParseError(name + ": edges must be [i, j] pairs");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    const Rational loss =
        doc.contains("loss") ? detail::rational_from_json(doc["loss"], name) : Rational(0);
    const std::uint64_t seed = doc.contains("seed") ? doc["seed"].get<std::uint64_t>() : 0;
    try {
      return NetworkTopology::from_edges(n, edges, loss, seed);
    } catch (const std::exception& e) {
      throw ParseError(name + ": " + e.what());
    }
  } catch (const json::exception& e) {
    throw ParseError(name + ": " + e.what());
  }
}

inline NetworkTopology parse_topology(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  return topology_from_json(detail::load_json(in, path), path);
}

inline json topology_to_json(const NetworkTopology& topo) {
  json doc;
  doc["n"] = topo.n_nodes;
  json edges = json::array();
  for (int i = 0; i < topo.n_nodes; ++i)
    for (int j = i + 1; j < topo.n_nodes; ++j)
      if (topo.adjacency(i, j)) edges.push_back(json::array({i, j}));
  doc["edges"] = std::move(edges);
  doc["loss"] = topo.loss_probability.to_string();
  doc["seed"] = topo.seed;
  return doc;
}

/// Demand file: whitespace-separated positive integers, one per category.
inline SemiAssignmentDemand parse_demand(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  SemiAssignmentDemand demand;
  int v = 0;
  while (in >> v) demand.d.push_back(v);
  if (!in.eof()) throw ParseError(path + ": demand entries must be integers");
  if (demand.d.empty()) throw ParseError(path + ": empty demand file");
  return demand;
}

/// Resources file: first line K, then per resource a budget line followed
/// by n rows of m usage entries.
inline SideConstraintSet parse_resources(const std::string& path, int n, int m) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  SideConstraintSet out;
  std::string tok;
  if (!(in >> tok)) throw ParseError(path + ": missing resource count");
  int count = 0;
  try {
    count = std::stoi(tok);
  } catch (const std::exception&) {
    throw ParseError(path + ": missing resource count");
  }
  if (count < 1) throw ParseError(path + ": resource count must be >= 1");
  for (int k = 0; k < count; ++k) {
    if (!(in >> tok)) throw ParseError(path + ": missing budget for resource " + std::to_string(k));
    SideConstraintSet::Resource res{Grid<Rational>(n, m), detail::parse_rational_token(tok, path)};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) {
        if (!(in >> tok))
          throw ParseError(path + ": resource " + std::to_string(k) + " usage matrix is truncated");
        res.usage(i, j) = detail::parse_rational_token(tok, path);
      }
    out.resources.push_back(std::move(res));
  }
  if (in >> tok) throw ParseError(path + ": trailing content '" + tok + "'");
  return out;
}

inline json trajectory_to_json(const Trajectory& tr) {
  json doc;
  json slots = json::array();
  for (const auto& [agent, arrival] : tr.slots)
    slots.push_back(json{{"agent", agent}, {"arrival", arrival}});
  doc["slots"] = std::move(slots);
  json decisions = json::array();
  for (const auto& d : tr.decisions)
    decisions.push_back(json{{"slot", d.slot},
                             {"task", d.task},
                             {"period", d.period},
                             {"value", d.value.to_string()}});
  doc["decisions"] = std::move(decisions);
  doc["alpha"] = tr.alpha;
  doc["beta"] = tr.beta;
  doc["total"] = tr.total.to_string();
  doc["stranded_tasks"] = tr.stranded_tasks;
  doc["unused_agents"] = tr.unused_agents;
  doc["reassignments"] = tr.reassignments;
  doc["coverage_satisfied"] = tr.coverage_satisfied;
  return doc;
}

inline Trajectory trajectory_from_json(const json& doc, const std::string& name) {
  try {
    Trajectory tr;
    for (const auto& s : doc.at("slots"))
      tr.slots.emplace_back(s.at("agent").get<int>(), s.at("arrival").get<int>());
    for (const auto& d : doc.at("decisions")) {
      Trajectory::Decision dec;
      dec.slot = d.at("slot").get<int>();
      dec.task = d.at("task").get<int>();
      dec.period = d.at("period").get<int>();
      dec.value = detail::rational_from_json(d.at("value"), name);
      tr.decisions.push_back(dec);
    }
    tr.alpha = doc.at("alpha").get<std::vector<std::vector<std::uint8_t>>>();
    tr.beta = doc.at("beta").get<std::vector<std::vector<std::uint8_t>>>();
    if (doc.contains("total"))
      tr.total = detail::rational_from_json(doc["total"], name);
    return tr;
  } catch (const json::exception& e) {
    throw ParseError(name + ": " + e.what());
  }
}

inline Trajectory parse_trajectory(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  return trajectory_from_json(detail::load_json(in, path), path);
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << content;
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace io
}  // namespace assignkit
