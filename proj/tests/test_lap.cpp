#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "assignkit/auction.hpp"
#include "assignkit/hungarian.hpp"
#include "assignkit/oracle.hpp"

using namespace assignkit;

namespace {

AssignmentInstance make_instance(std::vector<std::vector<std::int64_t>> rows,
                                 Sense sense = Sense::MinimizeCost) {
  Grid<Rational> w(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < w.rows(); ++i)
    for (int j = 0; j < w.cols(); ++j) w(i, j) = Rational(rows[i][j]);
  return AssignmentInstance(std::move(w), sense);
}

AssignmentInstance random_square(std::mt19937_64& eng, int n, int lo, int hi) {
  Grid<Rational> w(n, n);
  const std::int64_t span = hi - lo + 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      w(i, j) = Rational(lo + static_cast<std::int64_t>(eng() % span));
  return AssignmentInstance(std::move(w));
}

}  // namespace

TEST_CASE("hungarian solves the 2x2 example with a tight certificate") {
  const auto inst = make_instance({{1, 2}, {4, 3}});
  const auto res = solve_hungarian(inst);
  REQUIRE(res.matching.pairs == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
  REQUIRE(objective_value(inst, res.matching, ObjectiveKind::sum()) == Rational(4));
  REQUIRE(res.duals.feasible_for(inst));
  REQUIRE(res.duals.dual_sum() == Rational(4));
  REQUIRE(res.duals.max_matched_slack(inst, res.matching) == Rational(0));
}

TEST_CASE("hungarian finds the zero diagonal") {
  for (int n : {1, 3, 6}) {
    Grid<Rational> w(n, n, Rational(1));
    for (int i = 0; i < n; ++i) w(i, i) = Rational(0);
    const auto res = solve_hungarian(AssignmentInstance(std::move(w)));
    Rational sum(0);
    for (const auto& [i, j] : res.matching.pairs) {
      REQUIRE(i == j);
      sum += Rational(0);
    }
    REQUIRE(sum == Rational(0));
  }
}

TEST_CASE("hungarian equals the oracle on 200 random 7x7 instances") {
  std::mt19937_64 eng(7001);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = random_square(eng, 7, 0, 50);
    const auto res = solve_hungarian(inst);
    const auto best = brute_force(inst, ObjectiveKind::sum());
    REQUIRE(objective_value(inst, res.matching, ObjectiveKind::sum()) == *best.best_value);
    REQUIRE(res.duals.feasible_for(inst));
    REQUIRE(res.duals.dual_sum() == *best.best_value);
    REQUIRE(res.duals.max_matched_slack(inst, res.matching) == Rational(0));
  }
}

TEST_CASE("hungarian works with negative and rational weights") {
  std::mt19937_64 eng(7002);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(eng() % 4);
    Grid<Rational> w(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        w(i, j) = Rational(static_cast<std::int64_t>(eng() % 41) - 20,
                           1 + static_cast<std::int64_t>(eng() % 4));
    AssignmentInstance inst(std::move(w));
    const auto res = solve_hungarian(inst);
    const auto best = brute_force(inst, ObjectiveKind::sum());
    REQUIRE(objective_value(inst, res.matching, ObjectiveKind::sum()) == *best.best_value);
    REQUIRE(res.duals.feasible_for(inst));
  }
}

TEST_CASE("hungarian honors forbidden pairs and reports infeasibility") {
  auto inst = make_instance({{1, 2}, {4, 3}});
  inst.forbidden(0, 0) = 1;
  const auto res = solve_hungarian(inst);
  REQUIRE(res.matching.pairs == std::vector<std::pair<int, int>>{{0, 1}, {1, 0}});

  auto blocked = make_instance({{1, 2}, {4, 3}});
  blocked.forbidden(0, 0) = 1;
  blocked.forbidden(0, 1) = 1;
  REQUIRE_THROWS_AS(solve_hungarian(blocked), InfeasibleError);

  // feasible rows and columns, but no perfect matching avoids the mask
  auto hall = make_instance({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
  hall.forbidden(0, 1) = 1;
  hall.forbidden(0, 2) = 1;
  hall.forbidden(1, 1) = 1;
  hall.forbidden(1, 2) = 1;
  REQUIRE_THROWS_AS(solve_hungarian(hall), InfeasibleError);
}

TEST_CASE("hungarian rejects bad input") {
  const auto rect = make_instance({{1, 2, 3}, {4, 5, 6}});
  REQUIRE_THROWS_AS(solve_hungarian(rect), std::invalid_argument);
  const auto maxi = make_instance({{1, 2}, {4, 3}}, Sense::MaximizeProfit);
  REQUIRE_THROWS_AS(solve_hungarian(maxi), std::invalid_argument);
}

TEST_CASE("auction with epsilon below 1/n matches hungarian") {
  std::mt19937_64 eng(7010);
  for (int trial = 0; trial < 60; ++trial) {
    const auto inst = random_square(eng, 4, 0, 20);
    const auto h = solve_hungarian(inst);
    const auto a = solve_auction(inst, Rational(1, 5));
    REQUIRE(objective_value(inst, a.matching, ObjectiveKind::sum()) ==
            objective_value(inst, h.matching, ObjectiveKind::sum()));
    REQUIRE(a.duals.feasible_for(inst));
    REQUIRE(a.duals.max_matched_slack(inst, a.matching) <= Rational(1, 5));
  }
}

TEST_CASE("auction on a 1x1 instance takes one bidding round") {
  const auto inst = make_instance({{0}});
  const auto res = solve_auction(inst, Rational(3, 2));
  REQUIRE(res.matching.pairs == std::vector<std::pair<int, int>>{{0, 0}});
  REQUIRE(objective_value(inst, res.matching, ObjectiveKind::sum()) == Rational(0));
  REQUIRE(res.trace.rounds == 1);
}

TEST_CASE("auction optimality and the n*epsilon bound on 100 random 6x6 instances") {
  std::mt19937_64 eng(7011);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = random_square(eng, 6, 0, 30);
    const auto best = *brute_force(inst, ObjectiveKind::sum()).best_value;
    const auto exact = solve_auction(inst, Rational(1, 7));
    REQUIRE(objective_value(inst, exact.matching, ObjectiveKind::sum()) == best);
    const auto loose = solve_auction(inst, Rational(10));
    const Rational got = objective_value(inst, loose.matching, ObjectiveKind::sum());
    REQUIRE(got - best <= Rational(60));  // n * epsilon
    REQUIRE(best <= got);
  }
}

TEST_CASE("auction prices are monotone and rise by at least epsilon per win") {
  std::mt19937_64 eng(7012);
  const auto inst = random_square(eng, 5, 0, 25);
  const Rational eps(1, 3);
  const auto res = solve_auction(inst, eps, /*record_prices=*/true);
  REQUIRE(res.trace.price_history.has_value());
  const auto& hist = *res.trace.price_history;
  std::vector<Rational> prev(5, Rational(0));
  for (const auto& prices : hist) {
    for (int j = 0; j < 5; ++j) {
      REQUIRE(prev[j] <= prices[j]);
      if (prev[j] != prices[j]) REQUIRE(prices[j] - prev[j] >= eps);
    }
    prev = prices;
  }
}

TEST_CASE("auction rejects non-positive epsilon") {
  const auto inst = make_instance({{1, 2}, {4, 3}});
  REQUIRE_THROWS_AS(solve_auction(inst, Rational(0)), std::invalid_argument);
  REQUIRE_THROWS_AS(solve_auction(inst, Rational(-1, 2)), std::invalid_argument);
}

TEST_CASE("naive auction cycles on ties and converges on the 2x2 example") {
  const auto ties = make_instance({{1, 1}, {1, 1}});
  const auto cyc = detect_naive_auction_cycle(ties, 100);
  REQUIRE_FALSE(cyc.converged);

  const auto inst = make_instance({{1, 2}, {4, 3}});
  const auto ok = detect_naive_auction_cycle(inst, 100);
  REQUIRE(ok.converged);
  REQUIRE(objective_value(inst, ok.matching, ObjectiveKind::sum()) == Rational(4));

  const auto one = make_instance({{5}});
  const auto single = detect_naive_auction_cycle(one, 100);
  REQUIRE(single.converged);
  REQUIRE(single.round == 1);
}

TEST_CASE("corrected auction converges where the naive one cycles") {
  for (int n : {2, 3, 4, 5}) {
    Grid<Rational> w(n, n, Rational(1));
    AssignmentInstance inst(std::move(w));
    REQUIRE_FALSE(detect_naive_auction_cycle(inst, 500).converged);
    const auto res = solve_auction(inst, Rational(1, n + 1));
    REQUIRE(res.matching.is_perfect);
    REQUIRE(objective_value(inst, res.matching, ObjectiveKind::sum()) == Rational(n));
  }
}

TEST_CASE("epsilon schedule follows the stated ladder") {
  const auto s1 = epsilon_schedule(4, Rational(8));
  REQUIRE(s1 == std::vector<Rational>{Rational(4), Rational(1), Rational(1, 4), Rational(1, 16)});
  const auto s2 = epsilon_schedule(1, Rational(1));
  REQUIRE(s2 == std::vector<Rational>{Rational(1, 2)});
  const auto s3 = epsilon_schedule(10, Rational(1));
  REQUIRE(s3.back() < Rational(1, 10));
  for (std::size_t i = 0; i + 1 < s3.size(); ++i) {
    REQUIRE(s3[i + 1] == s3[i] / Rational(4));
    REQUIRE(!(s3[i] < Rational(1, 10)));
  }
}

TEST_CASE("scaled auction is exactly optimal on integer instances") {
  std::mt19937_64 eng(7020);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(eng() % 5);
    const auto inst = random_square(eng, n, 0, 100);
    const auto res = solve_auction_scaled(inst);
    const auto best = *brute_force(inst, ObjectiveKind::sum()).best_value;
    REQUIRE(objective_value(inst, res.matching, ObjectiveKind::sum()) == best);
    REQUIRE(res.trace.final_epsilon < Rational(1, n));
  }
}

TEST_CASE("a converged naive auction is exactly optimal") {
  // epsilon = 0 equilibria satisfy exact complementary slackness, so any
  // instance the naive auction survives must come out optimal
  std::mt19937_64 eng(7030);
  int converged = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 2 + static_cast<int>(eng() % 4);
    const auto inst = random_square(eng, n, 0, 60);
    const auto out = detect_naive_auction_cycle(inst, 5000);
    if (!out.converged) continue;
    ++converged;
    REQUIRE(objective_value(inst, out.matching, ObjectiveKind::sum()) ==
            *brute_force(inst, ObjectiveKind::sum()).best_value);
  }
  REQUIRE(converged > 50);  // the generic case converges
}

TEST_CASE("scaled auction returns an epsilon-CS certificate for its final phase") {
  std::mt19937_64 eng(7031);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 3 + static_cast<int>(eng() % 4);
    const auto inst = random_square(eng, n, 0, 50);
    const auto res = solve_auction_scaled(inst);
    REQUIRE(res.duals.feasible_for(inst));
    REQUIRE(res.duals.max_matched_slack(inst, res.matching) <= res.duals.epsilon);
    REQUIRE(res.duals.epsilon < Rational(1, n));
  }
}

TEST_CASE("auction handles rational-valued weights exactly") {
  std::mt19937_64 eng(7032);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(eng() % 4);
    Grid<Rational> w(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        w(i, j) = Rational(static_cast<std::int64_t>(eng() % 60) - 30,
                           1 + static_cast<std::int64_t>(eng() % 5));
    AssignmentInstance inst(std::move(w));
    const auto best = *brute_force(inst, ObjectiveKind::sum()).best_value;
    // the integrality shortcut does not apply; assert the n*eps bound
    const Rational eps(1, 100);
    const auto res = solve_auction(inst, eps);
    const Rational got = objective_value(inst, res.matching, ObjectiveKind::sum());
    REQUIRE(best <= got);
    REQUIRE(got - best <= Rational(n) * eps);
  }
}
