#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "assignkit/instance.hpp"
#include "assignkit/oracle.hpp"
#include "assignkit/rational.hpp"

using namespace assignkit;

namespace {

AssignmentInstance make_instance(std::vector<std::vector<std::int64_t>> rows,
                                 Sense sense = Sense::MinimizeCost) {
  Grid<Rational> w(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < w.rows(); ++i)
    for (int j = 0; j < w.cols(); ++j) w(i, j) = Rational(rows[i][j]);
  return AssignmentInstance(std::move(w), sense);
}

}  // namespace

TEST_CASE("rational arithmetic is exact and normalized") {
  REQUIRE(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  REQUIRE(Rational(2, 4) == Rational(1, 2));
  REQUIRE(Rational(-2, -4) == Rational(1, 2));
  REQUIRE(Rational(1, -2) == Rational(-1, 2));
  REQUIRE(Rational(3, 7) * Rational(7, 3) == Rational(1));
  REQUIRE(Rational(1) / Rational(4) == Rational(1, 4));
  REQUIRE(Rational(5, 6) - Rational(1, 6) == Rational(2, 3));
  REQUIRE(Rational(-3).abs() == Rational(3));
  REQUIRE(Rational(1, 3) < Rational(1, 2));
  REQUIRE(Rational(-1, 2) < Rational(1, 3));
  REQUIRE_THROWS_AS(Rational(1, 0), std::domain_error);
  REQUIRE_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational parse and print round-trip") {
  REQUIRE(Rational::parse("3") == Rational(3));
  REQUIRE(Rational::parse("-5/7") == Rational(-5, 7));
  REQUIRE(Rational::parse("1.25") == Rational(5, 4));
  REQUIRE(Rational::parse("-0.5") == Rational(-1, 2));
  REQUIRE(Rational::parse("+2/6") == Rational(1, 3));
  REQUIRE(Rational(5, 4).to_string() == "5/4");
  REQUIRE(Rational(-3).to_string() == "-3");
  REQUIRE_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
  REQUIRE_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  REQUIRE_THROWS_AS(Rational::parse(""), std::invalid_argument);
}

TEST_CASE("rational overflow is detected, not wrapped") {
  const Rational big(std::numeric_limits<std::int64_t>::max() / 2);
  REQUIRE_THROWS_AS(big * Rational(8), std::overflow_error);
  REQUIRE_NOTHROW(big + big);  // exactly representable
}

TEST_CASE("objective_value matches the worked 2x2 examples") {
  const auto inst = make_instance({{1, 2}, {4, 3}});
  const auto diag = make_matching(inst, {{0, 0}, {1, 1}});
  REQUIRE(objective_value(inst, diag, ObjectiveKind::sum()) == Rational(4));

  const auto zero = make_instance({{0, 5}, {5, 5}});
  const auto single = make_matching(zero, {{0, 0}});
  REQUIRE(objective_value(zero, single, ObjectiveKind::bottleneck()) == Rational(0));

  const auto spread_inst = make_instance({{1, 9}, {2, 1}});
  const auto spread_diag = make_matching(spread_inst, {{0, 0}, {1, 1}});
  REQUIRE(objective_value(spread_inst, spread_diag, ObjectiveKind::spread()) == Rational(0));
}

TEST_CASE("objective_value rejects undefined cases") {
  const auto inst = make_instance({{1, 2}, {4, 3}});
  const Matching empty;
  REQUIRE_THROWS_WITH(objective_value(inst, empty, ObjectiveKind::spread()),
                      "undefined objective on empty matching");
  REQUIRE_THROWS_AS(objective_value(inst, empty, ObjectiveKind::bottleneck()),
                    std::invalid_argument);
  const auto diag = make_matching(inst, {{0, 0}, {1, 1}});
  REQUIRE_THROWS_AS(objective_value(inst, diag, ObjectiveKind::k_sum(3)), std::invalid_argument);
  REQUIRE_NOTHROW(objective_value(inst, empty, ObjectiveKind::sum()));
}

TEST_CASE("objective_value is permutation stable") {
  const auto inst = make_instance({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  auto a = make_matching(inst, {{0, 2}, {1, 0}, {2, 1}});
  auto b = make_matching(inst, {{2, 1}, {0, 2}, {1, 0}});
  for (const auto& kind :
       {ObjectiveKind::sum(), ObjectiveKind::bottleneck(), ObjectiveKind::spread(),
        ObjectiveKind::min_deviation(), ObjectiveKind::k_sum(2)}) {
    REQUIRE(objective_value(inst, a, kind) == objective_value(inst, b, kind));
  }
}

TEST_CASE("ksum special cases collapse to bottleneck and sum") {
  const auto inst = make_instance({{3, 1, 4}, {1, 5, 9}, {2, 6, 5}});
  const auto m = make_matching(inst, {{0, 1}, {1, 2}, {2, 0}});
  REQUIRE(objective_value(inst, m, ObjectiveKind::k_sum(1)) ==
          objective_value(inst, m, ObjectiveKind::bottleneck()));
  REQUIRE(objective_value(inst, m, ObjectiveKind::k_sum(3)) ==
          objective_value(inst, m, ObjectiveKind::sum()));
}

TEST_CASE("make_matching rejects conflicts") {
  const auto inst = make_instance({{1, 2}, {4, 3}});
  REQUIRE_THROWS_AS(make_matching(inst, {{0, 0}, {0, 1}}), std::invalid_argument);
  REQUIRE_THROWS_AS(make_matching(inst, {{0, 0}, {1, 0}}), std::invalid_argument);
  REQUIRE_THROWS_AS(make_matching(inst, {{0, 5}}), std::invalid_argument);
  REQUIRE(make_matching(inst, {{0, 0}, {1, 1}}).is_perfect);
  REQUIRE_FALSE(make_matching(inst, {{0, 0}}).is_perfect);
}

TEST_CASE("pad_to_square adds zero dummy rows") {
  auto inst = make_instance({{2, 3, 4}, {5, 6, 7}});
  const auto padded = pad_to_square(inst);
  REQUIRE(padded.instance.n_agents == 3);
  REQUIRE(padded.instance.n_tasks == 3);
  REQUIRE(padded.orig_agents == 2);
  for (int j = 0; j < 3; ++j) REQUIRE(padded.instance.weights(2, j) == Rational(0));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) REQUIRE(padded.instance.weights(i, j) == inst.weights(i, j));
  // square input comes back identical
  const auto square = make_instance({{1, 2}, {4, 3}});
  const auto same = pad_to_square(square);
  REQUIRE(same.instance.weights == square.weights);
  REQUIRE(same.instance.n_agents == 2);
}

TEST_CASE("pad_to_square 1x4: optimal sum of the padded square equals the min row entry") {
  auto inst = make_instance({{7, 3, 9, 5}});
  const auto padded = pad_to_square(inst);
  REQUIRE(padded.instance.n_agents == 4);
  const auto res = brute_force(padded.instance, ObjectiveKind::sum());
  REQUIRE(res.feasible());
  REQUIRE(*res.best_value == Rational(3));
}

TEST_CASE("pad_to_square preserves the optimal sum on random rectangles") {
  std::mt19937_64 eng(20240817);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(eng() % 5);
    const int m = 1 + static_cast<int>(eng() % 5);
    Grid<Rational> w(n, m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) w(i, j) = Rational(static_cast<std::int64_t>(eng() % 30));
    AssignmentInstance inst(std::move(w));
    const auto direct = brute_force(inst, ObjectiveKind::sum());
    const auto padded = brute_force(pad_to_square(inst).instance, ObjectiveKind::sum());
    REQUIRE(direct.feasible());
    REQUIRE(*direct.best_value == *padded.best_value);
  }
}

TEST_CASE("oracle counts candidates and finds unique optima") {
  const auto inst = make_instance({{1, 2}, {4, 3}});
  const auto res = brute_force(inst, ObjectiveKind::sum());
  REQUIRE(res.enumerated == 2);
  REQUIRE(*res.best_value == Rational(4));
  REQUIRE(res.best_matchings.size() == 1);

  const auto one = make_instance({{7}});
  REQUIRE(*brute_force(one, ObjectiveKind::sum()).best_value == Rational(7));
  REQUIRE(*brute_force(one, ObjectiveKind::bottleneck()).best_value == Rational(7));

  const auto bot = make_instance({{1, 5}, {5, 1}});
  const auto bres = brute_force(bot, ObjectiveKind::bottleneck());
  REQUIRE(*bres.best_value == Rational(1));
  REQUIRE(bres.best_matchings.size() == 1);
  REQUIRE(bres.best_matchings[0] == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
}

TEST_CASE("oracle respects forbidden pairs and reports infeasibility") {
  auto inst = make_instance({{1, 2}, {4, 3}});
  inst.forbidden(0, 0) = 1;
  inst.forbidden(0, 1) = 1;
  const auto res = brute_force(inst, ObjectiveKind::sum());
  REQUIRE_FALSE(res.feasible());
  REQUIRE(res.best_matchings.empty());
}

TEST_CASE("oracle size guard") {
  Grid<Rational> w(10, 10, Rational(1));
  AssignmentInstance inst(std::move(w));
  REQUIRE_THROWS_AS(brute_force(inst, ObjectiveKind::sum()), GuardError);
}

TEST_CASE("to_min_cost maps profit optima onto cost optima") {
  auto inst = make_instance({{3, 9}, {8, 2}}, Sense::MaximizeProfit);
  const auto res_max = brute_force(inst, ObjectiveKind::sum());
  const auto norm = to_min_cost(inst);
  const auto res_min = brute_force(norm, ObjectiveKind::sum());
  REQUIRE(res_max.best_matchings == res_min.best_matchings);
  REQUIRE(*res_max.best_value == Rational(17));
}

TEST_CASE("qualification zeroes profits of unqualified pairs") {
  auto inst = make_instance({{3, 9}, {8, 2}}, Sense::MaximizeProfit);
  Grid<std::uint8_t> q(2, 2, 1);
  q(0, 1) = 0;
  inst.qualification = q;
  REQUIRE(inst.effective_weight(0, 1) == Rational(0));
  REQUIRE(inst.effective_weight(0, 0) == Rational(3));
}
