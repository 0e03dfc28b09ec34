#pragma once

#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "assignkit/errors.hpp"
#include "assignkit/hungarian.hpp"
#include "assignkit/instance.hpp"

namespace assignkit {

struct AuctionTrace {
  long rounds = 0;
  Rational final_epsilon;
  std::optional<std::vector<std::vector<Rational>>> price_history;  // per round, per task
};

struct AuctionResult {
  Matching matching;
  DualState duals;
  AuctionTrace trace;
};

/// Outcome of the uncorrected (epsilon = 0) auction diagnostic.
struct NaiveAuctionOutcome {
  bool converged = false;
  long round = 0;            // round of convergence or of cycle detection
  Matching matching;         // only meaningful when converged
};

/// The epsilon ladder for scaled auction runs: a geometric sequence with
/// ratio 1/4 starting at max(1, C)/2, ending with the first term below
/// 1/n (so the final phase is exact for integer weights).
inline std::vector<Rational> epsilon_schedule(int n, const Rational& max_abs_weight) {
  if (n < 1) throw std::invalid_argument("epsilon_schedule requires n >= 1");
  std::vector<Rational> schedule;
  Rational eps = max(Rational(1), max_abs_weight) / Rational(2);
  const Rational stop(1, n);
  schedule.push_back(eps);
  while (!(schedule.back() < stop)) {
    eps = eps / Rational(4);
    schedule.push_back(eps);
  }
  return schedule;
}

namespace auction_detail {

struct PhaseState {
  std::vector<Rational> price;   // per task, monotone nondecreasing
  std::vector<int> owner;        // task -> agent or -1
  std::vector<int> assigned;     // agent -> task or -1
};

// One Jacobi bidding round of the epsilon-corrected auction: every agent
// that is currently unassigned bids for its cheapest task at the current
// prices; each task then goes to the highest offer, displacing any
// previous owner, and its price rises to that offer. Returns false when
// there was nothing to do (all agents assigned).
inline bool corrected_round(const Grid<Rational>& c, const Rational& eps, PhaseState& st) {
  const int n = c.rows();
  bool any_unassigned = false;
  std::vector<int> best_bidder(n, -1);
  std::vector<Rational> best_offer(n);
  for (int i = 0; i < n; ++i) {
    if (st.assigned[i] != -1) continue;
    any_unassigned = true;
    int ji = 0;
    Rational alpha = c(i, 0) + st.price[0];
    for (int j = 1; j < n; ++j) {
      const Rational v = c(i, j) + st.price[j];
      if (v < alpha) {
        alpha = v;
        ji = j;
      }
    }
    Rational beta = alpha;  // single-task instances bid with gamma = 0
    bool has_beta = false;
    for (int j = 0; j < n; ++j) {
      if (j == ji) continue;
      const Rational v = c(i, j) + st.price[j];
      if (!has_beta || v < beta) {
        beta = v;
        has_beta = true;
      }
    }
    const Rational offer = st.price[ji] + (beta - alpha) + eps;
    if (best_bidder[ji] == -1 || best_offer[ji] < offer) {
      best_bidder[ji] = i;
      best_offer[ji] = offer;
    }
  }
  if (!any_unassigned) return false;
  for (int j = 0; j < n; ++j) {
    if (best_bidder[j] == -1) continue;
    if (st.owner[j] != -1) st.assigned[st.owner[j]] = -1;
    st.owner[j] = best_bidder[j];
    st.assigned[best_bidder[j]] = j;
    st.price[j] = best_offer[j];
  }
  return true;
}

inline long rounds_guard(int n, const Rational& big, const Rational& eps) {
  const long double work = 64.0L + 8.0L * n * n *
                                       (4.0L * big.to_double() / eps.to_double() + 4.0L);
  return work > 4.0e18L ? static_cast<long>(4e18) : static_cast<long>(work);
}

inline Grid<Rational> substituted_costs(const AssignmentInstance& inst) {
  const int n = inst.n_agents;
  const Rational bigm = inst.big_m();
  Grid<Rational> c(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(i, j) = inst.allowed(i, j) ? inst.weights(i, j) : bigm;
  return c;
}

inline AuctionResult finish(const AssignmentInstance& inst, const Grid<Rational>& c,
                            PhaseState&& st, AuctionTrace&& trace, const Rational& eps) {
  const int n = inst.n_agents;
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (!inst.allowed(i, st.assigned[i]))
      throw InfeasibleError("infeasible: no perfect matching avoids the forbidden pairs");
    pairs.emplace_back(i, st.assigned[i]);
  }
  AuctionResult out;
  out.matching = make_matching(inst, std::move(pairs));
  out.duals.v.resize(n);
  for (int j = 0; j < n; ++j) out.duals.v[j] = -st.price[j];
  out.duals.u.resize(n);
  for (int i = 0; i < n; ++i) {
    Rational u = c(i, 0) + st.price[0];
    for (int j = 1; j < n; ++j) u = min(u, c(i, j) + st.price[j]);
    out.duals.u[i] = u;
  }
  out.duals.epsilon = eps;
  trace.final_epsilon = eps;
  out.trace = std::move(trace);
  return out;
}

inline void check_auction_pre(const AssignmentInstance& inst) {
  inst.validate();
  if (!inst.is_square())
    throw std::invalid_argument("auction requires a square instance; use pad_to_square first");
  if (inst.sense != Sense::MinimizeCost)
    throw std::invalid_argument("auction requires MinimizeCost sense; normalize first");
  hungarian_detail::check_no_blocked_line(inst);
}

}  // namespace auction_detail

/// Bertsekas epsilon-corrected auction. Terminates with a perfect matching
/// satisfying epsilon-complementary slackness; for integer weights and
/// epsilon < 1/n the result is exactly optimal.
inline AuctionResult solve_auction(const AssignmentInstance& inst, const Rational& epsilon,
                                   bool record_prices = false) {
  auction_detail::check_auction_pre(inst);
  if (!(Rational(0) < epsilon)) throw std::invalid_argument("auction requires epsilon > 0");
  const int n = inst.n_agents;
  const Grid<Rational> c = auction_detail::substituted_costs(inst);

  auction_detail::PhaseState st;
  st.price.assign(n, Rational(0));
  st.owner.assign(n, -1);
  st.assigned.assign(n, -1);

  AuctionTrace trace;
  if (record_prices) trace.price_history.emplace();
  const long guard = auction_detail::rounds_guard(n, inst.big_m(), epsilon);
  while (auction_detail::corrected_round(c, epsilon, st)) {
    ++trace.rounds;
    if (record_prices) trace.price_history->push_back(st.price);
    if (trace.rounds > guard)
      throw ConvergenceError("auction exceeded its round guard (" + std::to_string(guard) + ")");
  }
  return auction_detail::finish(inst, c, std::move(st), std::move(trace), epsilon);
}

/// Auction with the scaling schedule: phases run the corrected auction
/// with decreasing epsilon, warm-starting each phase from the previous
/// phase's prices. Exact-optimal for integer weights since the last
/// epsilon is below 1/n.
inline AuctionResult solve_auction_scaled(const AssignmentInstance& inst,
                                          bool record_prices = false) {
  auction_detail::check_auction_pre(inst);
  const int n = inst.n_agents;
  const Grid<Rational> c = auction_detail::substituted_costs(inst);
  const std::vector<Rational> schedule = epsilon_schedule(n, inst.max_abs_weight());

  auction_detail::PhaseState st;
  st.price.assign(n, Rational(0));
  AuctionTrace trace;
  if (record_prices) trace.price_history.emplace();
  for (const Rational& eps : schedule) {
    st.owner.assign(n, -1);
    st.assigned.assign(n, -1);
    const long guard = auction_detail::rounds_guard(n, inst.big_m(), eps);
    long phase_rounds = 0;
    while (auction_detail::corrected_round(c, eps, st)) {
      ++trace.rounds;
      ++phase_rounds;
      if (record_prices) trace.price_history->push_back(st.price);
      if (phase_rounds > guard)
        throw ConvergenceError("auction exceeded its round guard (" + std::to_string(guard) + ")");
    }
  }
  return auction_detail::finish(inst, c, std::move(st), std::move(trace), schedule.back());
}

/// Runs the naive (epsilon = 0) auction to exhibit its cycling flaw.
/// A cycle is reported as soon as some unassigned agent repeats a
/// zero-increment bid for the same task at an unchanged price, or when
/// max_rounds is exhausted; otherwise the equilibrium matching is
/// returned.
inline NaiveAuctionOutcome detect_naive_auction_cycle(const AssignmentInstance& inst,
                                                      long max_rounds) {
  auction_detail::check_auction_pre(inst);
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
  const int n = inst.n_agents;
  const Grid<Rational> c = auction_detail::substituted_costs(inst);

  std::vector<Rational> price(n, Rational(0));
  std::vector<int> owner(n, -1), assigned(n, -1);
  // per agent: zero-increment bids seen so far, as (task, price num, den)
  std::vector<std::set<std::tuple<int, std::int64_t, std::int64_t>>> seen(n);

  NaiveAuctionOutcome out;
  for (long round = 1; round <= max_rounds; ++round) {
    bool all_assigned = true;
    std::vector<int> best_bidder(n, -1);
    std::vector<Rational> best_offer(n);
    for (int i = 0; i < n; ++i) {
      if (assigned[i] != -1) continue;
      all_assigned = false;
      int ji = 0;
      Rational alpha = c(i, 0) + price[0];
      for (int j = 1; j < n; ++j) {
        const Rational v = c(i, j) + price[j];
        if (v < alpha) {
          alpha = v;
          ji = j;
        }
      }
      Rational beta = alpha;
      bool has_beta = false;
      for (int j = 0; j < n; ++j) {
        if (j == ji) continue;
        const Rational v = c(i, j) + price[j];
        if (!has_beta || v < beta) {
          beta = v;
          has_beta = true;
        }
      }
      const Rational gamma = beta - alpha;
      if (gamma.is_zero()) {
        const auto key = std::make_tuple(ji, price[ji].num(), price[ji].den());
        if (!seen[i].insert(key).second) {
          out.converged = false;
          out.round = round;
          return out;
        }
      }
      const Rational offer = price[ji] + gamma;
      if (best_bidder[ji] == -1 || best_offer[ji] < offer) {
        best_bidder[ji] = i;
        best_offer[ji] = offer;
      }
    }
    if (all_assigned) {
      std::vector<std::pair<int, int>> pairs;
      for (int i = 0; i < n; ++i) pairs.emplace_back(i, assigned[i]);
      out.converged = true;
      out.round = round - 1 > 0 ? round - 1 : 1;
      out.matching = make_matching(inst, std::move(pairs));
      return out;
    }
    for (int j = 0; j < n; ++j) {
      if (best_bidder[j] == -1) continue;
      // a standing owner is displaced only by a strictly greater offer
      if (owner[j] != -1 && !(price[j] < best_offer[j])) continue;
      if (owner[j] != -1) assigned[owner[j]] = -1;
      owner[j] = best_bidder[j];
      assigned[best_bidder[j]] = j;
      price[j] = max(price[j], best_offer[j]);
    }
  }
  out.converged = false;
  out.round = max_rounds;
  return out;
}

}  // namespace assignkit
