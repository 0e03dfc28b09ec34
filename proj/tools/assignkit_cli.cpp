// assignkit command-line front door: solve, oracle, simulate, run-scenario,
// generate, validate. One binary, one command per invocation.
//
// Exit codes: 0 success, 1 usage/validation failure, 2 parse error,
// 3 infeasible, 4 guard exceeded, 5 protocol non-convergence.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "assignkit/assignkit.hpp"

namespace ak = assignkit;
using nlohmann::json;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  [[nodiscard]] long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 start)
        .count();
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ak::ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit_report(const ak::RunReport& report, const std::string& out_path) {
  if (out_path.empty())
    std::cout << report.to_string();
  else
    ak::io::write_file(out_path, report.to_string());
}

std::string command_echo(int argc, char** argv) {
  std::string echo;
  for (int i = 0; i < argc; ++i) {
    if (i) echo += ' ';
    echo += argv[i];
  }
  return echo;
}

struct ObjectiveChoice {
  std::string raw;
  ak::ObjectiveKind kind;
  bool semi = false;
  bool apraq = false;
  bool side_constrained = false;
};

ObjectiveChoice parse_objective(const std::string& s) {
  ObjectiveChoice c;
  c.raw = s;
  if (s == "sum") {
    c.kind = ak::ObjectiveKind::sum();
  } else if (s == "bottleneck") {
    c.kind = ak::ObjectiveKind::bottleneck();
  } else if (s == "fair") {
    c.kind = ak::ObjectiveKind::spread();
  } else if (s == "mindev") {
    c.kind = ak::ObjectiveKind::min_deviation();
  } else if (s.rfind("ksum:", 0) == 0) {
    c.kind = ak::ObjectiveKind::k_sum(std::stoi(s.substr(5)));
  } else if (s == "semi") {
    c.kind = ak::ObjectiveKind::sum();
    c.semi = true;
  } else if (s == "apraq") {
    c.kind = ak::ObjectiveKind::sum();
    c.apraq = true;
  } else if (s == "sideconstrained") {
    c.kind = ak::ObjectiveKind::sum();
    c.side_constrained = true;
  } else {
    throw CLI::ValidationError("--objective", "unknown objective '" + s + "'");
  }
  return c;
}

json pairs_json(const std::vector<std::pair<int, int>>& pairs) {
  json out = json::array();
  for (const auto& [i, j] : pairs) out.push_back(json::array({i, j}));
  return out;
}

struct SolveArgs {
  std::string instance_path;
  std::string objective = "sum";
  std::string method = "hungarian";
  std::string epsilon;
  std::string trace_path;
  std::string demand_path;
  std::string resources_path;
  std::string out_path;
  std::string batch_path;
  std::string batch_out_dir;
};

void solve_one(const SolveArgs& args, const std::string& echo, ak::RunReport& report) {
  Timer timer;
  const ObjectiveChoice choice = parse_objective(args.objective);
  const std::string content = read_file(args.instance_path);
  const ak::AssignmentInstance parsed = ak::io::parse_instance(args.instance_path);
  report.set("command", echo);
  report.set("instance", args.instance_path);
  report.set("instance_digest", ak::digest_hex(content));
  report.set("objective", choice.raw);

  if (choice.apraq) {
    const auto res = ak::solve_apraq(parsed);
    report.set("method", "apraq");
    report.set("pairs", pairs_json(res.matching.pairs));
    report.set("value", res.utility.to_string());
  } else if (choice.semi) {
    if (args.demand_path.empty()) throw CLI::ValidationError("--demand", "semi needs a demand file");
    const auto demand = ak::io::parse_demand(args.demand_path);
    const auto res = ak::solve_semi_assignment(parsed, demand);
    report.set("method", "semi");
    json cats = json::array();
    for (int c : res.category_of_agent) cats.push_back(c);
    report.set("category_of_agent", cats);
    report.set("value", res.total.to_string());
  } else if (choice.side_constrained) {
    if (args.resources_path.empty())
      throw CLI::ValidationError("--resources", "sideconstrained needs a resources file");
    const auto cons =
        ak::io::parse_resources(args.resources_path, parsed.n_agents, parsed.n_tasks);
    const auto res = ak::solve_with_side_constraints(parsed, cons);
    report.set("method", "branch-and-bound");
    report.set("pairs", pairs_json(res.matching.pairs));
    report.set("value", res.cost.to_string());
    report.set("nodes_explored", res.nodes_explored);
  } else if (choice.kind == ak::ObjectiveKind::sum()) {
    const bool normalized = parsed.sense == ak::Sense::MaximizeProfit;
    const ak::AssignmentInstance inst = normalized ? ak::to_min_cost(parsed) : parsed;
    const ak::PaddedInstance padded = ak::pad_to_square(inst);
    report.set("normalized", normalized);
    ak::Matching matching;
    ak::DualState duals;
    if (args.method == "hungarian") {
      auto res = ak::solve_hungarian(padded.instance);
      matching = std::move(res.matching);
      duals = std::move(res.duals);
    } else if (args.method == "auction" || args.method == "auction-scaled") {
      ak::AuctionResult res =
          args.method == "auction"
              ? ak::solve_auction(padded.instance,
                                  args.epsilon.empty()
                                      ? ak::Rational(1, padded.instance.n_agents + 1)
                                      : ak::Rational::parse(args.epsilon),
                                  !args.trace_path.empty())
              : ak::solve_auction_scaled(padded.instance, !args.trace_path.empty());
      matching = std::move(res.matching);
      duals = std::move(res.duals);
      report.set("rounds", res.trace.rounds);
      if (!args.trace_path.empty() && res.trace.price_history) {
        std::ostringstream csv;
        csv << "round";
        for (int j = 0; j < padded.instance.n_tasks; ++j) csv << ",p" << j;
        csv << '\n';
        for (std::size_t r = 0; r < res.trace.price_history->size(); ++r) {
          csv << (r + 1);
          for (const auto& p : (*res.trace.price_history)[r]) csv << ',' << p;
          csv << '\n';
        }
        ak::io::write_file(args.trace_path, csv.str());
      }
    } else {
      throw CLI::ValidationError("--method", "unknown method '" + args.method + "'");
    }
    const auto real = padded.real_pairs(matching);
    ak::Rational value(0);
    for (const auto& [i, j] : real) value += parsed.effective_weight(i, j);
    report.set("method", args.method);
    report.set("pairs", pairs_json(real));
    report.set("value", value.to_string());
    json cert;
    cert["dual_sum"] = duals.dual_sum().to_string();
    cert["epsilon"] = duals.epsilon.to_string();
    cert["feasible"] = duals.feasible_for(padded.instance);
    ak::Rational padded_value(0);
    for (const auto& [i, j] : matching.pairs) padded_value += padded.instance.weights(i, j);
    cert["gap"] = (padded_value - duals.dual_sum()).to_string();
    report.set("certificate", cert);
  } else {
    if (parsed.sense != ak::Sense::MinimizeCost)
      throw std::invalid_argument(choice.raw + " expects a MinimizeCost instance");
    if (choice.kind == ak::ObjectiveKind::bottleneck()) {
      const auto res = ak::solve_bottleneck(parsed);
      report.set("method", "threshold");
      report.set("pairs", pairs_json(res.matching.pairs));
      report.set("value", res.threshold.to_string());
      report.set("feasibility_probes", res.feasibility_probes);
    } else if (choice.kind == ak::ObjectiveKind::spread()) {
      const auto res = ak::solve_fair_matching(parsed);
      report.set("method", "band-sweep");
      report.set("pairs", pairs_json(res.matching.pairs));
      report.set("value", res.spread.to_string());
      report.set("feasibility_probes", res.feasibility_probes);
    } else if (choice.kind == ak::ObjectiveKind::min_deviation()) {
      const auto res = ak::solve_min_deviation(parsed);
      report.set("method", "max-sweep");
      report.set("pairs", pairs_json(res.matching.pairs));
      report.set("value", res.deviation.to_string());
    } else {
      const auto res = ak::solve_k_sum(parsed, choice.kind.k);
      report.set("method", "scalarized-sweep");
      report.set("pairs", pairs_json(res.matching.pairs));
      report.set("value", res.value.to_string());
    }
  }
  report.set("wall_ms", timer.ms());
}

int run_solve(const SolveArgs& args, const std::string& echo) {
  if (!args.batch_path.empty()) {
    std::ifstream list(args.batch_path);
    if (!list) throw ak::ParseError(args.batch_path + ": cannot open file");
    std::string line;
    while (std::getline(list, line)) {
      if (line.empty()) continue;
      SolveArgs entry = args;
      entry.instance_path = line;
      entry.batch_path.clear();
      ak::RunReport report;
      solve_one(entry, echo, report);
      const auto slash = line.find_last_of('/');
      const std::string base = slash == std::string::npos ? line : line.substr(slash + 1);
      const std::string out = args.batch_out_dir.empty()
                                  ? base + ".report.json"
                                  : args.batch_out_dir + "/" + base + ".report.json";
      emit_report(report, out);
    }
    return 0;
  }
  ak::RunReport report;
  solve_one(args, echo, report);
  emit_report(report, args.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"assignment-problem solvers, oracle, fleet engine and protocol simulator"};
  app.require_subcommand(1);
  const std::string echo = command_echo(argc, argv);

  // ---- solve ----
  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "solve a static assignment instance");
  solve->add_option("--instance", solve_args.instance_path, "instance file (.txt or .json)");
  solve->add_option("--objective", solve_args.objective,
                    "sum|bottleneck|fair|mindev|ksum:<k>|semi|apraq|sideconstrained");
  solve->add_option("--method", solve_args.method, "hungarian|auction|auction-scaled (sum only)");
  solve->add_option("--epsilon", solve_args.epsilon, "auction epsilon, e.g. 1/5");
  solve->add_option("--trace", solve_args.trace_path, "write per-round auction prices CSV");
  solve->add_option("--demand", solve_args.demand_path, "demand file for semi");
  solve->add_option("--resources", solve_args.resources_path, "resources file for sideconstrained");
  solve->add_option("--out", solve_args.out_path, "report path (default: stdout)");
  solve->add_option("--batch", solve_args.batch_path, "file listing instance paths, one per line");
  solve->add_option("--batch-out-dir", solve_args.batch_out_dir, "directory for batch reports");

  // ---- oracle ----
  std::string oracle_instance, oracle_objective = "sum", oracle_demand, oracle_resources,
              oracle_out;
  bool oracle_all = false;
  auto* oracle = app.add_subcommand("oracle", "brute-force reference optimum");
  oracle->add_option("--instance", oracle_instance, "instance file");
  oracle->add_option("--objective", oracle_objective, "objective kind (as in solve)");
  oracle->add_option("--demand", oracle_demand, "demand file for semi");
  oracle->add_option("--resources", oracle_resources, "resources file for sideconstrained");
  oracle->add_flag("--all-optima", oracle_all, "list every optimal matching");
  oracle->add_option("--out", oracle_out, "report path (default: stdout)");

  // ---- simulate ----
  std::string sim_protocol = "dauction", sim_instance, sim_topology, sim_epsilon = "",
              sim_log, sim_sweep, sim_out;
  long sim_max_rounds = 2000;
  bool sim_async = false;
  auto* simulate = app.add_subcommand("simulate", "run a distributed protocol");
  simulate->add_option("--protocol", sim_protocol, "dauction|cbaa");
  simulate->add_option("--instance", sim_instance, "instance file");
  simulate->add_option("--topology", sim_topology, "topology file (.json)");
  simulate->add_option("--epsilon", sim_epsilon, "bid increment for dauction, e.g. 1/7");
  simulate->add_option("--max-rounds", sim_max_rounds, "round cap for lossy runs");
  simulate->add_option("--log", sim_log, "round log path (JSON lines)");
  simulate->add_option("--sweep", sim_sweep, "comma list of loss levels, e.g. 0,0.1,0.2");
  simulate->add_flag("--async", sim_async, "staggered agent activation (cbaa only)");
  simulate->add_option("--out", sim_out, "report path (default: stdout)");

  // ---- run-scenario ----
  std::string rs_scenario, rs_policy = "myopic", rs_objective = "sum", rs_resources, rs_demand,
              rs_csv, rs_traj_out, rs_mode, rs_out;
  bool rs_clairvoyant = false;
  auto* runsc = app.add_subcommand("run-scenario", "roll a policy over a dynamic scenario");
  runsc->add_option("--scenario", rs_scenario, "scenario file (.json)");
  runsc->add_option("--policy", rs_policy, "myopic|greedy|null|variant");
  runsc->add_option("--objective", rs_objective, "variant objective (with --policy variant)");
  runsc->add_option("--resources", rs_resources, "resources file (variant policy)");
  runsc->add_option("--demand", rs_demand, "demand file: expand categories before running");
  runsc->add_flag("--clairvoyant", rs_clairvoyant, "also compute the offline optimum and regret");
  runsc->add_option("--csv", rs_csv, "per-period metrics CSV path");
  runsc->add_option("--trajectory-out", rs_traj_out, "write the recorded trajectory JSON");
  runsc->add_option("--mode", rs_mode, "override the scenario mode: commit|reassign");
  runsc->add_option("--out", rs_out, "report path (default: stdout)");

  // ---- generate ----
  auto* generate = app.add_subcommand("generate", "seeded instance/scenario/topology files");
  ak::InstanceGenSpec ispec;
  std::string gi_sense = "min", gi_out;
  auto* gen_inst = generate->add_subcommand("instance", "random instance");
  gen_inst->add_option("--n", ispec.n_agents, "agents");
  gen_inst->add_option("--m", ispec.n_tasks, "tasks");
  gen_inst->add_option("--lo", ispec.lo, "smallest weight");
  gen_inst->add_option("--hi", ispec.hi, "largest weight");
  gen_inst->add_option("--sense", gi_sense, "min|max");
  gen_inst->add_option("--qual-permille", ispec.qualification_permille,
                       "qualified density per mille (-1: none)");
  gen_inst->add_option("--forbid", ispec.forbidden_pairs, "number of forbidden pairs");
  gen_inst->add_option("--seed", ispec.seed, "seed");
  gen_inst->add_option("--out", gi_out, "output path (.txt or .json)")->required();

  ak::ScenarioGenSpec sspec;
  std::string gs_sense = "max", gs_mode = "commit", gs_out;
  auto* gen_sc = generate->add_subcommand("scenario", "random scenario");
  gen_sc->add_option("--agents", sspec.n_agents, "agents");
  gen_sc->add_option("--tasks", sspec.n_tasks, "tasks");
  gen_sc->add_option("--horizon", sspec.horizon, "periods");
  gen_sc->add_option("--lo", sspec.lo, "smallest utility");
  gen_sc->add_option("--hi", sspec.hi, "largest utility");
  gen_sc->add_option("--sense", gs_sense, "min|max");
  gen_sc->add_option("--mode", gs_mode, "commit|reassign");
  gen_sc->add_option("--seed", sspec.seed, "seed");
  gen_sc->add_option("--out", gs_out, "output path (.json)")->required();

  std::string gt_kind = "complete", gt_p = "1/2", gt_loss = "0", gt_out;
  int gt_n = 4;
  std::uint64_t gt_seed = 0;
  auto* gen_topo = generate->add_subcommand("topology", "communication graph");
  gen_topo->add_option("--kind", gt_kind, "complete|ring|line|erdos");
  gen_topo->add_option("--n", gt_n, "nodes");
  gen_topo->add_option("--p", gt_p, "edge probability (erdos)");
  gen_topo->add_option("--loss", gt_loss, "per-message loss probability");
  gen_topo->add_option("--seed", gt_seed, "seed");
  gen_topo->add_option("--out", gt_out, "output path (.json)")->required();

  // ---- validate ----
  std::string val_scenario, val_trajectory, val_out;
  auto* validate = app.add_subcommand("validate", "check a trajectory against its scenario");
  validate->add_option("--scenario", val_scenario, "scenario file (.json)")->required();
  validate->add_option("--trajectory", val_trajectory, "trajectory file (.json)")->required();
  validate->add_option("--out", val_out, "report path (default: stdout)");

  try {
    app.parse(argc, argv);

    if (*solve) return run_solve(solve_args, echo);

    if (*oracle) {
      Timer timer;
      const ObjectiveChoice choice = parse_objective(oracle_objective);
      const std::string content = read_file(oracle_instance);
      const auto inst = ak::io::parse_instance(oracle_instance);
      ak::OracleExtras extras;
      ak::SideConstraintSet cons;
      if (choice.semi) {
        if (oracle_demand.empty()) throw CLI::ValidationError("--demand", "semi needs a demand file");
        extras.demand = ak::io::parse_demand(oracle_demand).d;
      }
      if (choice.apraq) extras.qualified_partial = true;
      if (choice.side_constrained) {
        if (oracle_resources.empty())
          throw CLI::ValidationError("--resources", "sideconstrained needs a resources file");
        cons = ak::io::parse_resources(oracle_resources, inst.n_agents, inst.n_tasks);
        extras.constraints = &cons;
      }
      const auto res = ak::brute_force(inst, choice.kind, extras);
      ak::RunReport report;
      report.set("command", echo);
      report.set("instance_digest", ak::digest_hex(content));
      report.set("objective", oracle_objective);
      report.set("enumerated", res.enumerated);
      report.set("feasible", res.feasible());
      if (res.feasible()) {
        report.set("value", res.best_value->to_string());
        report.set("optima_count", res.best_matchings.size());
        if (oracle_all) {
          json all = json::array();
          for (const auto& m : res.best_matchings) all.push_back(pairs_json(m));
          report.set("optima", all);
        } else {
          report.set("pairs", pairs_json(res.best_matchings.front()));
        }
      }
      report.set("wall_ms", timer.ms());
      emit_report(report, oracle_out);
      return res.feasible() ? 0 : 3;
    }

    if (*simulate) {
      Timer timer;
      const std::string content = read_file(sim_instance);
      const auto inst = ak::io::parse_instance(sim_instance);
      const auto topo = ak::io::parse_topology(sim_topology);
      const ak::Protocol proto = sim_protocol == "dauction" ? ak::Protocol::DistributedAuction
                                 : sim_protocol == "cbaa"
                                     ? ak::Protocol::Cbaa
                                     : throw CLI::ValidationError("--protocol",
                                                                  "must be dauction or cbaa");
      const ak::Rational eps = sim_epsilon.empty()
                                   ? ak::Rational(1, std::max(inst.n_agents, inst.n_tasks) + 1)
                                   : ak::Rational::parse(sim_epsilon);
      ak::SimOptions opts;
      opts.record_state_digests = !sim_log.empty();

      ak::RunReport report;
      report.set("command", echo);
      report.set("instance_digest", ak::digest_hex(content));
      report.set("protocol", sim_protocol);
      report.set("seed", topo.seed);

      auto log_rounds = [&](const std::vector<ak::RoundLog>& logs) {
        if (sim_log.empty()) return;
        std::ostringstream out;
        for (const auto& log : logs) {
          json rec;
          rec["round"] = log.round;
          rec["messages_sent"] = log.messages_sent;
          rec["messages_dropped"] = log.messages_dropped;
          rec["conflicts_open"] = log.conflicts_open;
          json digests = json::array();
          for (auto d : log.agent_digests) digests.push_back(d);
          rec["agent_digests"] = digests;
          out << rec.dump() << '\n';
        }
        ak::io::write_file(sim_log, out.str());
      };

      if (!sim_sweep.empty()) {
        std::ostringstream csv;
        csv << "loss,converged,rounds,conflicts_open,value,value_ratio\n";
        std::stringstream levels(sim_sweep);
        std::string level;
        json rows = json::array();
        while (std::getline(levels, level, ',')) {
          ak::NetworkTopology lossy_topo = topo;
          lossy_topo.loss_probability = ak::Rational::parse(level);
          const auto run = ak::run_lossy(proto, inst, lossy_topo, eps, sim_max_rounds, opts);
          ak::Rational value(0);
          for (const auto& [i, j] : run.matching.pairs) value += inst.weights(i, j);
          std::string ratio = "";
          if (std::min(inst.n_agents, inst.n_tasks) <= 9) {
            const auto best = ak::brute_force(inst, ak::ObjectiveKind::sum());
            if (best.feasible() && !best.best_value->is_zero())
              ratio = (value / *best.best_value).to_string();
          }
          csv << level << ',' << (run.converged ? 1 : 0) << ',' << run.rounds << ','
              << run.conflicts_open << ',' << value << ',' << ratio << '\n';
          rows.push_back(json{{"loss", level},
                              {"converged", run.converged},
                              {"rounds", run.rounds},
                              {"conflicts_open", run.conflicts_open},
                              {"value", value.to_string()},
                              {"value_ratio", ratio}});
        }
        report.set("sweep", rows);
        if (!sim_log.empty()) ak::io::write_file(sim_log, csv.str());
        report.set("wall_ms", timer.ms());
        emit_report(report, sim_out);
        return 0;
      }

      ak::ProtocolRun run;
      if (!topo.loss_probability.is_zero()) {
        run = ak::run_lossy(proto, inst, topo, eps, sim_max_rounds, opts);
      } else if (proto == ak::Protocol::DistributedAuction) {
        run = ak::run_distributed_auction(inst, topo, eps, opts);
      } else {
        run = ak::run_cbaa(inst, topo, !sim_async, opts);
      }
      ak::Rational value(0);
      for (const auto& [i, j] : run.matching.pairs) value += inst.weights(i, j);
      report.set("converged", run.converged);
      report.set("rounds", run.rounds);
      report.set("conflicts_open", run.conflicts_open);
      report.set("pairs", pairs_json(run.matching.pairs));
      report.set("value", value.to_string());
      if (proto == ak::Protocol::DistributedAuction) report.set("epsilon", eps.to_string());
      log_rounds(run.logs);
      report.set("wall_ms", timer.ms());
      emit_report(report, sim_out);
      return run.converged ? 0 : 5;
    }

    if (*runsc) {
      Timer timer;
      const std::string content = read_file(rs_scenario);
      ak::Scenario sc = ak::io::parse_scenario(rs_scenario);
      if (!rs_mode.empty()) {
        if (rs_mode == "commit")
          sc.mode = ak::Scenario::Mode::Commit;
        else if (rs_mode == "reassign")
          sc.mode = ak::Scenario::Mode::Reassign;
        else
          throw CLI::ValidationError("--mode", "must be commit or reassign");
      }
      if (!rs_demand.empty())
        sc = ak::expand_semi_scenario(sc, ak::io::parse_demand(rs_demand));

      ak::PerPeriodPolicy policy;
      if (rs_policy == "myopic") {
        policy = ak::myopic_policy();
      } else if (rs_policy == "greedy") {
        policy = ak::greedy_policy();
      } else if (rs_policy == "null") {
        policy = ak::null_policy();
      } else if (rs_policy == "variant") {
        ak::VariantPolicySpec spec;
        spec.objective = parse_objective(rs_objective).kind;
        if (!rs_resources.empty())
          spec.constraints = ak::io::parse_resources(rs_resources, sc.n_agents(), sc.n_tasks());
        policy = ak::per_period_variant_policy(spec);
      } else {
        throw CLI::ValidationError("--policy", "must be myopic, greedy, null or variant");
      }

      const ak::Trajectory tr = ak::run_scenario(sc, policy);
      ak::RunReport report;
      report.set("command", echo);
      report.set("scenario_digest", ak::digest_hex(content));
      report.set("policy", rs_policy == "variant" ? rs_policy + ":" + policy.name : rs_policy);
      report.set("seed", sc.seed);
      report.set("total", tr.total.to_string());
      report.set("decisions", tr.decisions.size());
      report.set("stranded_tasks", tr.stranded_tasks);
      report.set("unused_agents", tr.unused_agents);
      report.set("reassignments", tr.reassignments);
      report.set("coverage_satisfied", tr.coverage_satisfied);
      if (rs_clairvoyant) {
        const ak::Rational opt = ak::clairvoyant_optimum(sc);
        report.set("clairvoyant", opt.to_string());
        report.set("regret", (opt - tr.total).to_string());
      }
      if (!rs_csv.empty()) ak::io::write_file(rs_csv, ak::trajectory_csv(tr));
      if (!rs_traj_out.empty())
        ak::io::write_file(rs_traj_out, ak::io::trajectory_to_json(tr).dump(2) + "\n");
      report.set("wall_ms", timer.ms());
      emit_report(report, rs_out);
      return 0;
    }

    if (*generate) {
      if (*gen_inst) {
        ispec.sense = gi_sense == "max" ? ak::Sense::MaximizeProfit : ak::Sense::MinimizeCost;
        const auto inst = ak::random_instance(ispec);
        if (ak::io::detail::has_suffix(gi_out, ".json"))
          ak::io::write_file(gi_out, ak::io::instance_to_json(inst).dump(2) + "\n");
        else
          ak::io::write_file(gi_out, ak::io::serialize_instance_text(inst));
        return 0;
      }
      if (*gen_sc) {
        sspec.sense = gs_sense == "max" ? ak::Sense::MaximizeProfit : ak::Sense::MinimizeCost;
        if (gs_mode == "reassign")
          sspec.mode = ak::Scenario::Mode::Reassign;
        else if (gs_mode != "commit")
          throw CLI::ValidationError("--mode", "must be commit or reassign");
        const auto sc = ak::random_scenario(sspec);
        ak::io::write_file(gs_out, ak::io::scenario_to_json(sc).dump(2) + "\n");
        return 0;
      }
      if (*gen_topo) {
        const auto topo = ak::make_topology(ak::topology_kind_from_string(gt_kind), gt_n,
                                            ak::Rational::parse(gt_p),
                                            ak::Rational::parse(gt_loss), gt_seed);
        ak::io::write_file(gt_out, ak::io::topology_to_json(topo).dump(2) + "\n");
        return 0;
      }
      throw CLI::ValidationError("generate", "needs instance, scenario or topology");
    }

    if (*validate) {
      const ak::Scenario sc = ak::io::parse_scenario(val_scenario);
      const ak::Trajectory tr = ak::io::parse_trajectory(val_trajectory);
      const auto result = ak::validate_trajectory(sc, tr);
      ak::RunReport report;
      report.set("command", echo);
      json families = json::array();
      for (const auto& f : result.families) {
        json fam;
        fam["name"] = f.name;
        fam["pass"] = f.pass;
        if (!f.pass) fam["first_violation"] = f.first_violation;
        families.push_back(fam);
      }
      report.set("families", families);
      report.set("all_pass", result.all_pass());
      emit_report(report, val_out);
      return result.all_pass() ? 0 : 1;
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ak::ParseError& e) {
    std::cerr << "E_PARSE: " << e.what() << '\n';
    return 2;
  } catch (const ak::InfeasibleError& e) {
    std::cerr << "E_INFEASIBLE: " << e.what() << '\n';
    return 3;
  } catch (const ak::GuardError& e) {
    std::cerr << "E_GUARD: " << e.what() << '\n';
    return 4;
  } catch (const ak::ConvergenceError& e) {
    std::cerr << "E_NOCONVERGE: " << e.what() << '\n';
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "E_RUNTIME: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
