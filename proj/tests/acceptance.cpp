// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Everything is exact rational arithmetic; there are no tolerances to
// tune. Returns the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "assignkit/assignkit.hpp"

using namespace assignkit;

namespace {

struct Criterion {
  std::string id;
  std::string summary;
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

AssignmentInstance random_square(std::mt19937_64& eng, int n, std::int64_t lo, std::int64_t hi,
                                 Sense sense = Sense::MinimizeCost) {
  Grid<Rational> w(n, n);
  const std::int64_t span = hi - lo + 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      w(i, j) = Rational(lo + static_cast<std::int64_t>(eng() % span));
  return AssignmentInstance(std::move(w), sense);
}

// ---- C1/C2/C3/C4: static solver family vs oracle, with certificates ----

void run_static_family(Criterion& c1, Criterion& c2, Criterion& c3, Criterion& c4) {
  const int per_size = 200;
  for (int n = 2; n <= 7; ++n) {
    std::mt19937_64 eng(100000ULL + n);
    for (int t = 0; t < per_size; ++t) {
      const auto inst = random_square(eng, n, 0, 20);
      const std::string tag = "n=" + std::to_string(n) + " trial=" + std::to_string(t);

      // hungarian + duality certificate
      const auto hung = solve_hungarian(inst);
      const Rational hung_sum = objective_value(inst, hung.matching, ObjectiveKind::sum());
      const Rational best_sum = *brute_force(inst, ObjectiveKind::sum()).best_value;
      if (hung_sum != best_sum) c1.fail("hungarian != oracle at " + tag);
      if (hung.duals.dual_sum() != hung_sum) c2.fail("dual sum != primal at " + tag);
      if (!hung.duals.feasible_for(inst)) c2.fail("dual infeasible at " + tag);

      // auction with epsilon < 1/n
      const auto auct = solve_auction(inst, Rational(1, n + 1));
      if (objective_value(inst, auct.matching, ObjectiveKind::sum()) != best_sum)
        c1.fail("auction != oracle at " + tag);

      // auction suboptimality bound for loose epsilons
      for (std::int64_t eps : {1, 5, 10}) {
        const auto loose = solve_auction(inst, Rational(eps));
        const Rational got = objective_value(inst, loose.matching, ObjectiveKind::sum());
        if (got < best_sum) c3.fail("auction beat the oracle at " + tag);
        if (Rational(n) * Rational(eps) < got - best_sum)
          c3.fail("n*eps bound violated (eps=" + std::to_string(eps) + ") at " + tag);
      }

      // bottleneck
      const auto thr = solve_bottleneck(inst);
      if (thr.threshold != *brute_force(inst, ObjectiveKind::bottleneck()).best_value)
        c1.fail("bottleneck != oracle at " + tag);

      // fair matching
      const auto fair = solve_fair_matching(inst);
      if (fair.spread != *brute_force(inst, ObjectiveKind::spread()).best_value)
        c1.fail("fair != oracle at " + tag);

      // min deviation
      const auto dev = solve_min_deviation(inst);
      if (dev.deviation != *brute_force(inst, ObjectiveKind::min_deviation()).best_value)
        c1.fail("mindev != oracle at " + tag);

      // k-sum for every k, plus the special cases
      for (int k = 1; k <= n; ++k) {
        const auto ks = solve_k_sum(inst, k);
        if (ks.value != *brute_force(inst, ObjectiveKind::k_sum(k)).best_value)
          c1.fail("ksum(k=" + std::to_string(k) + ") != oracle at " + tag);
        if (k == 1 && ks.value != thr.threshold) c4.fail("ksum(1) != bottleneck at " + tag);
        if (k == n && ks.value != hung_sum) c4.fail("ksum(n) != hungarian at " + tag);
      }

      // semi-assignment on an n x ceil(n/2) shape
      {
        const int m = (n + 1) / 2;
        Grid<Rational> w(n, m);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < m; ++j) w(i, j) = Rational(static_cast<std::int64_t>(eng() % 21));
        AssignmentInstance semi_inst(std::move(w));
        std::vector<int> d(m, 1);
        for (int extra = 0; extra < n - m; ++extra) ++d[eng() % m];
        const auto semi = solve_semi_assignment(semi_inst, {d});
        OracleExtras extras;
        extras.demand = d;
        if (semi.total != *brute_force(semi_inst, ObjectiveKind::sum(), extras).best_value)
          c1.fail("semi != oracle at " + tag);
      }

      // apraq on a masked max-profit copy
      {
        AssignmentInstance masked = inst;
        masked.sense = Sense::MaximizeProfit;
        Grid<std::uint8_t> q(n, n, 0);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) q(i, j) = eng() % 10 < 6 ? 1 : 0;
        masked.qualification = q;
        const auto res = solve_apraq(masked);
        OracleExtras extras;
        extras.qualified_partial = true;
        if (res.utility != *brute_force(masked, ObjectiveKind::sum(), extras).best_value)
          c1.fail("apraq != oracle at " + tag);
      }

      // side constraints with two resources
      {
        SideConstraintSet cons;
        for (int k = 0; k < 2; ++k) {
          Grid<Rational> usage(n, n);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) usage(i, j) = Rational(static_cast<std::int64_t>(eng() % 6));
          cons.resources.push_back(
              {std::move(usage), Rational(n + static_cast<std::int64_t>(eng() % (3 * n)))});
        }
        OracleExtras extras;
        extras.constraints = &cons;
        const auto best = brute_force(inst, ObjectiveKind::sum(), extras);
        if (!best.feasible()) {
          try {
            solve_with_side_constraints(inst, cons);
            c1.fail("apsc found a solution where the oracle sees none at " + tag);
          } catch (const InfeasibleError&) {
          }
        } else {
          const auto res = solve_with_side_constraints(inst, cons);
          if (res.cost != *best.best_value) c1.fail("apsc != oracle at " + tag);
        }
      }
    }
  }
}

// ---- C5: naive auction cycling ----

void run_naive_cycle(Criterion& c) {
  {
    Grid<Rational> w(2, 2, Rational(1));
    AssignmentInstance ties(std::move(w));
    if (detect_naive_auction_cycle(ties, 1000).converged)
      c.fail("naive auction converged on the all-ties 2x2");
    if (!solve_auction(ties, Rational(1, 3)).matching.is_perfect)
      c.fail("corrected auction failed on the all-ties 2x2");
  }
  for (int n : {3, 4, 5}) {
    Grid<Rational> w(n, n, Rational(1));
    AssignmentInstance flat(std::move(w));
    if (detect_naive_auction_cycle(flat, 1000).converged)
      c.fail("naive auction converged on the all-ones " + std::to_string(n) + "x" + std::to_string(n));
    const auto fixed = solve_auction(flat, Rational(1, n + 1));
    if (!fixed.matching.is_perfect ||
        objective_value(flat, fixed.matching, ObjectiveKind::sum()) != Rational(n))
      c.fail("corrected auction suboptimal on the all-ones " + std::to_string(n) + "x" +
             std::to_string(n));
  }
}

// ---- C6: dynamic model validity ----

void run_dynamic_validity(Criterion& c) {
  int single_period_checked = 0;
  for (int t = 0; t < 100; ++t) {
    ScenarioGenSpec spec;
    spec.n_agents = 1 + t % 5;
    spec.n_tasks = 1 + (t / 2) % 5;
    spec.horizon = 1 + (t / 5) % 5;
    spec.lo = 0;
    spec.hi = 12;
    spec.seed = 600000ULL + t;
    const Scenario sc = random_scenario(spec);
    const std::string tag = "scenario " + std::to_string(t);

    const Trajectory tr = run_scenario(sc, myopic_policy());
    const auto report = validate_trajectory(sc, tr);
    for (const auto& f : report.families)
      if (!f.pass) c.fail(f.name + " family failed on " + tag + " at " + f.first_violation);

    const Rational opt = clairvoyant_optimum(sc);
    if (opt < tr.total) c.fail("myopic beat the clairvoyant optimum on " + tag);
    if (sc.horizon == 1) {
      ++single_period_checked;
      if (tr.total != opt) c.fail("single-period myopic != clairvoyant on " + tag);
    }
  }
  if (single_period_checked < 10) c.fail("too few single-period scenarios in the sample");
}

// ---- C7: distributed auction exactness ----

void run_distributed_exactness(Criterion& c) {
  int instances = 0;
  for (int n = 3; n <= 6; ++n) {
    std::mt19937_64 eng(700000ULL + n);
    for (int t = 0; t < 28; ++t) {
      const auto inst = random_square(eng, n, 0, 20);
      ++instances;
      const Rational best = *brute_force(inst, ObjectiveKind::sum()).best_value;
      const Rational eps(1, n + 1);
      int which = 0;
      for (const auto& topo :
           {NetworkTopology::complete(n, Rational(0), t), NetworkTopology::ring(n, Rational(0), t),
            NetworkTopology::line(n, Rational(0), t)}) {
        ++which;
        const std::string tag = "n=" + std::to_string(n) + " trial=" + std::to_string(t) +
                                " topo=" + std::to_string(which);
        try {
          const auto run = run_distributed_auction(inst, topo, eps);
          if (!run.matching.is_perfect) c.fail("imperfect matching at " + tag);
          if (objective_value(inst, run.matching, ObjectiveKind::sum()) != best)
            c.fail("distributed auction != oracle at " + tag);
        } catch (const std::exception& e) {
          c.fail(std::string("exception at ") + tag + ": " + e.what());
        }
      }
    }
  }
  if (instances < 100) c.fail("fewer than 100 instances sampled");
}

// ---- C8: CBAA guarantees ----

void run_cbaa_guarantees(Criterion& c) {
  int instances = 0;
  for (int n = 3; n <= 6; ++n) {
    std::mt19937_64 eng(800000ULL + n);
    for (int t = 0; t < 50; ++t) {
      const auto inst = random_square(eng, n, 1, 30, Sense::MaximizeProfit);
      ++instances;
      const NetworkTopology topo = t % 3 == 0   ? NetworkTopology::complete(n, Rational(0), t)
                                   : t % 3 == 1 ? NetworkTopology::ring(n, Rational(0), t)
                                                : NetworkTopology::line(n, Rational(0), t);
      const std::string tag = "n=" + std::to_string(n) + " trial=" + std::to_string(t);
      try {
        const auto run = run_cbaa(inst, topo);
        if (run.conflicts_open != 0) c.fail("conflicts at " + tag);
        const Rational total = objective_value(inst, run.matching, ObjectiveKind::sum());
        const Rational greedy =
            objective_value(inst, greedy_sequential(inst), ObjectiveKind::sum());
        if (total != greedy) c.fail("cbaa != sequential greedy at " + tag);
        const Rational best = *brute_force(inst, ObjectiveKind::sum()).best_value;
        if (Rational(2) * total < best) c.fail("50% bound violated at " + tag);
      } catch (const std::exception& e) {
        c.fail(std::string("exception at ") + tag + ": " + e.what());
      }
    }
  }
  if (instances < 200) c.fail("fewer than 200 instances sampled");
}

// ---- C9: degradation harness reproducibility ----

std::string degradation_sweep() {
  std::ostringstream csv;
  csv << "protocol,loss,nonconvergence_rate,mean_value_ratio\n";
  for (int proto = 0; proto < 2; ++proto) {
    for (int level = 0; level <= 9; ++level) {
      const Rational loss(level, 10);
      int nonconverged = 0;
      Rational ratio_sum(0);
      int ratio_count = 0;
      for (int t = 0; t < 10; ++t) {
        std::mt19937_64 eng(900000ULL + t);
        const auto inst = proto == 0 ? random_square(eng, 5, 0, 20)
                                     : random_square(eng, 5, 1, 20, Sense::MaximizeProfit);
        const auto topo = NetworkTopology::ring(5, loss, 4242 + t);
        const auto run = run_lossy(proto == 0 ? Protocol::DistributedAuction : Protocol::Cbaa,
                                   inst, topo, Rational(1, 6), 400);
        if (!run.converged) ++nonconverged;
        const auto best = brute_force(inst, ObjectiveKind::sum());
        Rational value(0);
        for (const auto& [i, j] : run.matching.pairs) value += inst.weights(i, j);
        if (best.feasible() && !best.best_value->is_zero()) {
          ratio_sum += value / *best.best_value;
          ++ratio_count;
        }
      }
      const Rational mean_ratio = ratio_count ? ratio_sum / Rational(ratio_count) : Rational(0);
      csv << (proto == 0 ? "dauction" : "cbaa") << ',' << loss << ','
          << Rational(nonconverged, 10) << ',' << mean_ratio << '\n';
    }
  }
  return csv.str();
}

void run_degradation(Criterion& c) {
  const std::string first = degradation_sweep();
  const std::string second = degradation_sweep();
  if (first != second) c.fail("sweep report is not byte-identical across reruns");
  // the report must actually contain every level for both protocols
  if (std::count(first.begin(), first.end(), '\n') != 21)
    c.fail("sweep report is missing rows");
}

// ---- C10: scale smoke test ----

void run_scale(Criterion& c) {
  InstanceGenSpec spec;
  spec.n_agents = 1000;
  spec.n_tasks = 1000;
  spec.lo = 0;
  spec.hi = 1000;
  spec.seed = 31337;
  const auto inst = random_instance(spec);

  const auto t0 = std::chrono::steady_clock::now();
  const auto hung = solve_hungarian(inst);
  const double hung_s = seconds_since(t0);
  const Rational hung_sum = objective_value(inst, hung.matching, ObjectiveKind::sum());
  if (!hung.duals.feasible_for(inst) || hung.duals.dual_sum() != hung_sum)
    c.fail("scale hungarian certificate failed");

  const auto t1 = std::chrono::steady_clock::now();
  const auto auct = solve_auction_scaled(inst);
  const double auct_s = seconds_since(t1);
  if (objective_value(inst, auct.matching, ObjectiveKind::sum()) != hung_sum)
    c.fail("scaled auction disagrees with hungarian at n=1000");

  std::ostringstream times;
  times << "hungarian " << hung_sum << " in " << hung_s << "s, scaled auction in " << auct_s << "s";
  c.summary += " [" + times.str() + "]";
  if (hung_s > 60.0) c.fail("hungarian exceeded the 60s budget");
  if (auct_s > 60.0) c.fail("scaled auction exceeded the 60s budget");
}

}  // namespace

int main() {
  std::vector<Criterion> criteria;
  const auto add = [&](const char* id, const char* summary) {
    Criterion c;
    c.id = id;
    c.summary = summary;
    criteria.push_back(std::move(c));
  };
  add("C1", "oracle equivalence of the static solvers (200 instances per n in 2..7)");
  add("C2", "hungarian duality certificate on every run");
  add("C3", "auction n*eps suboptimality bound for eps in {1,5,10}");
  add("C4", "k-sum special cases k=1 and k=n");
  add("C5", "naive auction cycles, corrected auction converges");
  add("C6", "dynamic trajectories valid; myopic <= clairvoyant, equal on one period");
  add("C7", "distributed auction exact on complete/ring/line");
  add("C8", "cbaa conflict-free, equals sequential greedy, >= 50% of optimum");
  add("C9", "loss sweep reproducible byte-exactly");
  add("C10", "1000x1000 scale run within budget");

  const auto t0 = std::chrono::steady_clock::now();
  run_static_family(criteria[0], criteria[1], criteria[2], criteria[3]);
  run_naive_cycle(criteria[4]);
  run_dynamic_validity(criteria[5]);
  run_distributed_exactness(criteria[6]);
  run_cbaa_guarantees(criteria[7]);
  run_degradation(criteria[8]);
  run_scale(criteria[9]);
  const double total_s = seconds_since(t0);

  int failures = 0;
  for (const auto& c : criteria) {
    if (c.pass) {
      std::printf("%-4s PASS  %s\n", c.id.c_str(), c.summary.c_str());
    } else {
      ++failures;
      std::printf("%-4s FAIL  %s -- %s\n", c.id.c_str(), c.summary.c_str(), c.detail.c_str());
    }
  }
  std::printf("acceptance: %d/%zu criteria passed in %.1fs\n",
              static_cast<int>(criteria.size()) - failures, criteria.size(), total_s);
  return failures;
}
