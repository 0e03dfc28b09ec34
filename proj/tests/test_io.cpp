#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "assignkit/generate.hpp"
#include "assignkit/io.hpp"
#include "assignkit/policies.hpp"
#include "assignkit/report.hpp"

using namespace assignkit;

TEST_CASE("text instance parsing matches the documented format") {
  std::istringstream in("2 2 min\n1 2\n4 3\n");
  const auto inst = io::parse_instance_text(in, "t");
  REQUIRE(inst.n_agents == 2);
  REQUIRE(inst.n_tasks == 2);
  REQUIRE(inst.sense == Sense::MinimizeCost);
  REQUIRE(inst.weights(1, 0) == Rational(4));
}

TEST_CASE("text instance parsing handles QUAL and FORBID blocks") {
  std::istringstream in("2 2 max\n1 2\n4 3\nQUAL\n1 0\n0 1\nFORBID\n0 1\n");
  const auto inst = io::parse_instance_text(in, "t");
  REQUIRE(inst.qualification.has_value());
  REQUIRE((*inst.qualification)(0, 1) == 0);
  REQUIRE(inst.forbidden(0, 1) == 1);
  REQUIRE(inst.forbidden(0, 0) == 0);
}

TEST_CASE("text parse errors carry the offending line") {
  std::istringstream ragged("2 2 min\n1 2 3\n4 3\n");
  REQUIRE_THROWS_WITH(io::parse_instance_text(ragged, "t"),
                      Catch::Matchers::ContainsSubstring("t:2"));
  std::istringstream bad_tok("2 2 min\n1 x\n4 3\n");
  REQUIRE_THROWS_AS(io::parse_instance_text(bad_tok, "t"), ParseError);
  std::istringstream bad_sense("2 2 minimize\n1 2\n4 3\n");
  REQUIRE_THROWS_AS(io::parse_instance_text(bad_sense, "t"), ParseError);
  std::istringstream unknown("2 2 min\n1 2\n4 3\nEXTRA\n");
  REQUIRE_THROWS_WITH(io::parse_instance_text(unknown, "t"),
                      Catch::Matchers::ContainsSubstring("unknown block"));
  std::istringstream truncated("3 2 min\n1 2\n4 3\n");
  REQUIRE_THROWS_AS(io::parse_instance_text(truncated, "t"), ParseError);
}

TEST_CASE("instance text and json serializations round-trip") {
  InstanceGenSpec spec;
  spec.n_agents = 4;
  spec.n_tasks = 3;
  spec.qualification_permille = 700;
  spec.forbidden_pairs = 2;
  spec.seed = 99;
  for (std::uint64_t seed : {1, 7, 42}) {
    spec.seed = seed;
    const auto inst = random_instance(spec);
    std::istringstream text(io::serialize_instance_text(inst));
    const auto re_text = io::parse_instance_text(text, "t");
    REQUIRE(re_text.weights == inst.weights);
    REQUIRE(re_text.forbidden == inst.forbidden);
    REQUIRE(re_text.qualification == inst.qualification);

    std::istringstream jin(io::instance_to_json(inst).dump());
    const auto re_json = io::parse_instance_json(jin, "j");
    REQUIRE(re_json.weights == inst.weights);
    REQUIRE(re_json.forbidden == inst.forbidden);
    REQUIRE(re_json.qualification == inst.qualification);
  }
}

TEST_CASE("json instance parsing rejects unknown keys and bad shapes") {
  std::istringstream unknown(R"({"agents":1,"tasks":1,"sense":"min","weights":[[1]],"extra":1})");
  REQUIRE_THROWS_AS(io::parse_instance_json(unknown, "j"), ParseError);
  std::istringstream short_row(R"({"agents":2,"tasks":2,"sense":"min","weights":[[1,2],[3]]})");
  REQUIRE_THROWS_AS(io::parse_instance_json(short_row, "j"), ParseError);
  std::istringstream rational(R"({"agents":1,"tasks":1,"sense":"min","weights":[["3/4"]]})");
  REQUIRE(io::parse_instance_json(rational, "j").weights(0, 0) == Rational(3, 4));
}

TEST_CASE("scenario json round-trips through its serialization") {
  ScenarioGenSpec spec;
  spec.n_agents = 3;
  spec.n_tasks = 4;
  spec.horizon = 3;
  spec.seed = 5;
  const Scenario sc = random_scenario(spec);
  const auto doc = io::scenario_to_json(sc);
  const Scenario re = io::scenario_from_json(doc, "s");
  REQUIRE(re.horizon == sc.horizon);
  REQUIRE(re.agent_arrival == sc.agent_arrival);
  REQUIRE(re.task_arrival == sc.task_arrival);
  for (int tau = 1; tau <= sc.horizon; ++tau)
    REQUIRE(re.utilities[tau - 1] == sc.utilities[tau - 1]);
  REQUIRE(re.sense == sc.sense);
  REQUIRE(re.mode == sc.mode);
}

TEST_CASE("scenario json validates ids and ranges") {
  const auto base = R"({"horizon":2,"agents":[{"id":0,"arrival":1}],"tasks":[{"id":0,"arrival":1}]})";
  REQUIRE_NOTHROW(io::scenario_from_json(nlohmann::json::parse(base), "s"));
  const auto dup = R"({"horizon":2,"agents":[{"id":0,"arrival":1},{"id":0,"arrival":2}],
                       "tasks":[{"id":0,"arrival":1}]})";
  REQUIRE_THROWS_AS(io::scenario_from_json(nlohmann::json::parse(dup), "s"), ParseError);
  const auto late = R"({"horizon":2,"agents":[{"id":0,"arrival":9}],"tasks":[{"id":0,"arrival":1}]})";
  REQUIRE_THROWS_AS(io::scenario_from_json(nlohmann::json::parse(late), "s"), ParseError);
}

TEST_CASE("topology json round-trips and reports diameter 1 for complete graphs") {
  const auto topo = make_topology(TopologyKind::Complete, 3, Rational(0), Rational(0), 1);
  REQUIRE(topo.diameter() == 1);
  const auto re = io::topology_from_json(io::topology_to_json(topo), "t");
  REQUIRE(re.adjacency == topo.adjacency);
  REQUIRE(re.n_nodes == 3);
}

TEST_CASE("erdos topologies are connected after chaining") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto topo = make_topology(TopologyKind::Erdos, 8, Rational(1, 10), Rational(0), seed);
    REQUIRE(topo.connected());
  }
}

TEST_CASE("generators are deterministic in the seed") {
  InstanceGenSpec ispec;
  ispec.n_agents = 5;
  ispec.n_tasks = 5;
  ispec.seed = 1234;
  REQUIRE(io::serialize_instance_text(random_instance(ispec)) ==
          io::serialize_instance_text(random_instance(ispec)));
  ispec.seed = 1235;
  const auto different = io::serialize_instance_text(random_instance(ispec));
  ispec.seed = 1234;
  REQUIRE(io::serialize_instance_text(random_instance(ispec)) != different);

  ScenarioGenSpec sspec;
  sspec.seed = 42;
  REQUIRE(io::scenario_to_json(random_scenario(sspec)).dump() ==
          io::scenario_to_json(random_scenario(sspec)).dump());

  // single-period scenarios put every arrival at period 1
  sspec.horizon = 1;
  const Scenario sp = random_scenario(sspec);
  for (int a : sp.agent_arrival) REQUIRE(a == 1);
  for (int t : sp.task_arrival) REQUIRE(t == 1);
}

TEST_CASE("generator parameter guards") {
  InstanceGenSpec bad;
  bad.n_agents = 20000;
  REQUIRE_THROWS_AS(random_instance(bad), std::invalid_argument);
  ScenarioGenSpec bad_h;
  bad_h.horizon = 20000;
  REQUIRE_THROWS_AS(random_scenario(bad_h), std::invalid_argument);
}

TEST_CASE("demand and resources files parse strictly") {
  io::write_file("/tmp/ak_demand.txt", "2 1\n");
  const auto demand = io::parse_demand("/tmp/ak_demand.txt");
  REQUIRE(demand.d == std::vector<int>{2, 1});
  io::write_file("/tmp/ak_demand_bad.txt", "2 x\n");
  REQUIRE_THROWS_AS(io::parse_demand("/tmp/ak_demand_bad.txt"), ParseError);

  io::write_file("/tmp/ak_res.txt", "1\n5\n1 0\n0 1\n");
  const auto res = io::parse_resources("/tmp/ak_res.txt", 2, 2);
  REQUIRE(res.resources.size() == 1);
  REQUIRE(res.resources[0].budget == Rational(5));
  REQUIRE(res.resources[0].usage(1, 1) == Rational(1));
  io::write_file("/tmp/ak_res_bad.txt", "1\n5\n1 0\n0\n");
  REQUIRE_THROWS_AS(io::parse_resources("/tmp/ak_res_bad.txt", 2, 2), ParseError);
}

TEST_CASE("trajectory serialization round-trips and validates") {
  ScenarioGenSpec spec;
  spec.n_agents = 3;
  spec.n_tasks = 3;
  spec.horizon = 3;
  spec.seed = 77;
  const Scenario sc = random_scenario(spec);
  const Trajectory tr = run_scenario(sc, myopic_policy());
  const auto doc = io::trajectory_to_json(tr);
  const Trajectory re = io::trajectory_from_json(doc, "t");
  REQUIRE(re.decisions == tr.decisions);
  REQUIRE(re.alpha == tr.alpha);
  REQUIRE(re.beta == tr.beta);
  REQUIRE(validate_trajectory(sc, re).all_pass());
}

TEST_CASE("digests identify content, not formatting") {
  REQUIRE(digest_hex("abc") == digest_hex("abc"));
  REQUIRE(digest_hex("abc") != digest_hex("abd"));
  REQUIRE(digest_hex("").size() == 16);
}

TEST_CASE("run reports are byte-identical modulo the wall-time field") {
  RunReport a, b;
  a.set("value", "42");
  a.set("wall_ms", 17);
  b.set("value", "42");
  b.set("wall_ms", 900);
  REQUIRE(a.deterministic_body() == b.deterministic_body());
  REQUIRE(a.to_string() != b.to_string());
}

TEST_CASE("trajectory csv has one row per period") {
  ScenarioGenSpec spec;
  spec.horizon = 4;
  spec.seed = 3;
  const Scenario sc = random_scenario(spec);
  const Trajectory tr = run_scenario(sc, myopic_policy());
  const std::string csv = trajectory_csv(tr);
  REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 5);  // header + 4 periods
  REQUIRE(csv.rfind("period,assignments,period_value,period_objective,stranded_tasks", 0) == 0);
}

TEST_CASE("the text parser survives random garbage with parse errors only") {
  std::mt19937_64 eng(123);
  const std::string alphabet = "0123456789 ./-\nabcQUALFORBIDminmax";
  for (int trial = 0; trial < 400; ++trial) {
    std::string blob;
    const int len = static_cast<int>(eng() % 120);
    for (int i = 0; i < len; ++i) blob += alphabet[eng() % alphabet.size()];
    std::istringstream in(blob);
    try {
      const auto inst = io::parse_instance_text(in, "fuzz");
      inst.validate();  // anything accepted must be a coherent instance
    } catch (const ParseError&) {
    } catch (const std::invalid_argument&) {
    } catch (const std::overflow_error&) {
    }
  }
  SUCCEED("no crash and no unexpected exception type");
}

TEST_CASE("fractional and negative weights round-trip through both formats") {
  Grid<Rational> w(2, 3);
  w(0, 0) = Rational(-5, 7);
  w(0, 1) = Rational(3, 2);
  w(0, 2) = Rational(0);
  w(1, 0) = Rational(-11);
  w(1, 1) = Rational(1, 3);
  w(1, 2) = Rational(22, 7);
  AssignmentInstance inst(std::move(w), Sense::MaximizeProfit);
  inst.forbidden(1, 2) = 1;

  std::istringstream text(io::serialize_instance_text(inst));
  const auto re_text = io::parse_instance_text(text, "t");
  REQUIRE(re_text.weights == inst.weights);
  REQUIRE(re_text.sense == inst.sense);
  REQUIRE(re_text.forbidden == inst.forbidden);

  std::istringstream jin(io::instance_to_json(inst).dump());
  const auto re_json = io::parse_instance_json(jin, "j");
  REQUIRE(re_json.weights == inst.weights);
  REQUIRE(re_json.forbidden == inst.forbidden);
}
