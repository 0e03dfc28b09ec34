#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "assignkit/errors.hpp"
#include "assignkit/grid.hpp"
#include "assignkit/rational.hpp"

namespace assignkit {

enum class Sense { MinimizeCost, MaximizeProfit };

inline const char* to_string(Sense s) {
  return s == Sense::MinimizeCost ? "min" : "max";
}

/// Which scalar is optimized over the matched weights.
///
///   Sum          - total of matched weights
///   Bottleneck   - largest matched weight
///   Spread       - largest minus smallest matched weight
///   MinDeviation - min(n,m) * largest - total (max-vs-average, scaled)
///   KSum(k)      - total of the k largest matched weights
struct ObjectiveKind {
  enum class Kind { Sum, Bottleneck, Spread, MinDeviation, KSum };

  Kind kind = Kind::Sum;
  int k = 0;  // only meaningful for KSum

  static ObjectiveKind sum() { return {Kind::Sum, 0}; }
  static ObjectiveKind bottleneck() { return {Kind::Bottleneck, 0}; }
  static ObjectiveKind spread() { return {Kind::Spread, 0}; }
  static ObjectiveKind min_deviation() { return {Kind::MinDeviation, 0}; }
  static ObjectiveKind k_sum(int k) { return {Kind::KSum, k}; }

  friend bool operator==(const ObjectiveKind& a, const ObjectiveKind& b) {
    return a.kind == b.kind && (a.kind != Kind::KSum || a.k == b.k);
  }

  [[nodiscard]] std::string name() const {
    switch (kind) {
      case Kind::Sum: return "sum";
      case Kind::Bottleneck: return "bottleneck";
      case Kind::Spread: return "fair";
      case Kind::MinDeviation: return "mindev";
      case Kind::KSum: return "ksum:" + std::to_string(k);
    }
    return "?";
  }
};

/// The static assignment datum: an n_agents x n_tasks weight matrix with a
/// sense, an optional qualification mask and an explicit forbidden-pair
/// mask. Weights on forbidden pairs are ignored; solvers substitute a
/// value strictly larger than any achievable matching total internally.
struct AssignmentInstance {
  int n_agents = 0;
  int n_tasks = 0;
  Grid<Rational> weights;
  Sense sense = Sense::MinimizeCost;
  std::optional<Grid<std::uint8_t>> qualification;  // 1 = agent qualified for task
  Grid<std::uint8_t> forbidden;                     // 1 = pair may not be matched

  AssignmentInstance() = default;
  AssignmentInstance(Grid<Rational> w, Sense s = Sense::MinimizeCost)
      : n_agents(w.rows()), n_tasks(w.cols()), weights(std::move(w)), sense(s),
        forbidden(n_agents, n_tasks, 0) {
    if (n_agents < 1 || n_tasks < 1) throw std::invalid_argument("instance dimensions must be >= 1");
  }

  [[nodiscard]] bool is_square() const { return n_agents == n_tasks; }
  [[nodiscard]] bool allowed(int i, int j) const { return forbidden(i, j) == 0; }
  [[nodiscard]] bool qualified(int i, int j) const {
    return !qualification || (*qualification)(i, j) != 0;
  }

  /// Weight with the qualification rule applied: an unqualified pair has
  /// profit 0 under MaximizeProfit.
  [[nodiscard]] Rational effective_weight(int i, int j) const {
    if (sense == Sense::MaximizeProfit && !qualified(i, j)) return Rational(0);
    return weights(i, j);
  }

  [[nodiscard]] Rational max_abs_weight() const {
    Rational m(0);
    for (int i = 0; i < n_agents; ++i)
      for (int j = 0; j < n_tasks; ++j)
        if (allowed(i, j)) m = max(m, weights(i, j).abs());
    return m;
  }

  /// Substitute for forbidden pairs: large enough that any matching using a
  /// forbidden pair costs more than every all-allowed matching, even with
  /// negative weights present.
  [[nodiscard]] Rational big_m() const {
    const int n = std::max(n_agents, n_tasks);
    return max_abs_weight() * Rational(2 * n + 1) + Rational(1);
  }

  void validate() const {
    if (n_agents < 1 || n_tasks < 1) throw std::invalid_argument("instance dimensions must be >= 1");
    if (weights.rows() != n_agents || weights.cols() != n_tasks)
      throw std::invalid_argument("weight matrix shape mismatch");
    if (forbidden.rows() != n_agents || forbidden.cols() != n_tasks)
      throw std::invalid_argument("forbidden mask shape mismatch");
    if (qualification &&
        (qualification->rows() != n_agents || qualification->cols() != n_tasks))
      throw std::invalid_argument("qualification mask shape mismatch");
  }
};

/// A conflict-free set of (agent, task) pairs.
struct Matching {
  std::vector<std::pair<int, int>> pairs;
  bool is_perfect = false;

  [[nodiscard]] std::size_t size() const { return pairs.size(); }
  [[nodiscard]] bool empty() const { return pairs.empty(); }

  /// Task matched to agent i, or -1.
  [[nodiscard]] int task_of(int agent) const {
    for (const auto& [a, t] : pairs)
      if (a == agent) return t;
    return -1;
  }

  [[nodiscard]] std::vector<Rational> matched_weights(const AssignmentInstance& inst) const {
    std::vector<Rational> w;
    w.reserve(pairs.size());
    for (const auto& [i, j] : pairs) w.push_back(inst.weights.at(i, j));
    return w;
  }
};

/// Builds a Matching, checking conflict-freedom and computing is_perfect
/// for the given instance.
inline Matching make_matching(const AssignmentInstance& inst,
                              std::vector<std::pair<int, int>> pairs) {
  std::set<int> agents, tasks;
  for (const auto& [i, j] : pairs) {
    if (i < 0 || i >= inst.n_agents || j < 0 || j >= inst.n_tasks)
      throw std::invalid_argument("matching pair out of range");
    if (!agents.insert(i).second) throw std::invalid_argument("agent matched twice");
    if (!tasks.insert(j).second) throw std::invalid_argument("task matched twice");
  }
  Matching m;
  m.pairs = std::move(pairs);
  std::sort(m.pairs.begin(), m.pairs.end());
  m.is_perfect = inst.is_square() && static_cast<int>(m.pairs.size()) == inst.n_agents;
  return m;
}

/// Dual vectors (u over agents, v over tasks). Prices are p_j = -v_j.
/// With epsilon == 0 this is an exact LP-dual certificate; with
/// epsilon > 0 matched pairs satisfy epsilon-complementary slackness.
struct DualState {
  std::vector<Rational> u;
  std::vector<Rational> v;
  Rational epsilon = Rational(0);

  [[nodiscard]] Rational dual_sum() const {
    Rational s(0);
    for (const auto& x : u) s += x;
    for (const auto& x : v) s += x;
    return s;
  }

  /// u_i + v_j <= c_ij on every allowed pair.
  [[nodiscard]] bool feasible_for(const AssignmentInstance& inst) const {
    for (int i = 0; i < inst.n_agents; ++i)
      for (int j = 0; j < inst.n_tasks; ++j)
        if (inst.allowed(i, j) && u[i] + v[j] > inst.weights(i, j)) return false;
    return true;
  }

  /// Largest reduced cost c_ij - u_i - v_j over matched pairs; 0 means
  /// exact complementary slackness, <= epsilon means eps-CS.
  [[nodiscard]] Rational max_matched_slack(const AssignmentInstance& inst,
                                           const Matching& m) const {
    Rational worst(0);
    for (const auto& [i, j] : m.pairs) worst = max(worst, inst.weights(i, j) - u[i] - v[j]);
    return worst;
  }
};

/// One knapsack-style resource: usage r_ij per pair and a budget b.
struct SideConstraintSet {
  struct Resource {
    Grid<Rational> usage;
    Rational budget;
  };
  std::vector<Resource> resources;

  void validate_for(const AssignmentInstance& inst) const {
    for (const auto& r : resources) {
      if (r.usage.rows() != inst.n_agents || r.usage.cols() != inst.n_tasks)
        throw std::invalid_argument("resource usage matrix shape mismatch");
      if (r.budget.is_negative()) throw std::invalid_argument("negative resource budget");
    }
  }
};

/// Evaluates the objective over the matched-pair weights of `m`.
/// Only matched entries participate; the pair order never matters.
inline Rational objective_value(const AssignmentInstance& inst, const Matching& m,
                                const ObjectiveKind& objective) {
  std::vector<Rational> w = m.matched_weights(inst);
  using Kind = ObjectiveKind::Kind;
  switch (objective.kind) {
    case Kind::Sum: {
      Rational s(0);
      for (const auto& x : w) s += x;
      return s;
    }
    case Kind::Bottleneck: {
      if (w.empty()) throw std::invalid_argument("undefined objective on empty matching");
      Rational best = w[0];
      for (const auto& x : w) best = max(best, x);
      return best;
    }
    case Kind::Spread: {
      if (w.empty()) throw std::invalid_argument("undefined objective on empty matching");
      Rational lo = w[0], hi = w[0];
      for (const auto& x : w) {
        lo = min(lo, x);
        hi = max(hi, x);
      }
      return hi - lo;
    }
    case Kind::MinDeviation: {
      if (w.empty()) throw std::invalid_argument("undefined objective on empty matching");
      Rational hi = w[0], s(0);
      for (const auto& x : w) {
        hi = max(hi, x);
        s += x;
      }
      return Rational(std::min(inst.n_agents, inst.n_tasks)) * hi - s;
    }
    case Kind::KSum: {
      if (objective.k < 1 || objective.k > static_cast<int>(w.size()))
        throw std::invalid_argument("k out of range for matched pair count");
      std::sort(w.begin(), w.end(), [](const Rational& a, const Rational& b) { return b < a; });
      Rational s(0);
      for (int i = 0; i < objective.k; ++i) s += w[i];
      return s;
    }
  }
  throw std::logic_error("unreachable objective kind");
}

/// A square instance produced by padding, plus the original shape so
/// results can be mapped back. Dummy rows/columns carry weight 0 and are
/// unrestricted.
struct PaddedInstance {
  AssignmentInstance instance;
  int orig_agents = 0;
  int orig_tasks = 0;

  [[nodiscard]] bool is_dummy_pair(int i, int j) const {
    return i >= orig_agents || j >= orig_tasks;
  }

  /// Drops pairs that touch a dummy row or column.
  [[nodiscard]] std::vector<std::pair<int, int>> real_pairs(const Matching& m) const {
    std::vector<std::pair<int, int>> out;
    for (const auto& [i, j] : m.pairs)
      if (!is_dummy_pair(i, j)) out.emplace_back(i, j);
    return out;
  }
};

/// Adds zero-weight dummy rows or columns to the smaller side until the
/// instance is square. The input is left unchanged.
inline PaddedInstance pad_to_square(const AssignmentInstance& inst) {
  const int n = std::max(inst.n_agents, inst.n_tasks);
  Grid<Rational> w(n, n, Rational(0));
  Grid<std::uint8_t> forb(n, n, 0);
  std::optional<Grid<std::uint8_t>> qual;
  if (inst.qualification) qual.emplace(n, n, 1);
  for (int i = 0; i < inst.n_agents; ++i) {
    for (int j = 0; j < inst.n_tasks; ++j) {
      w(i, j) = inst.weights(i, j);
      forb(i, j) = inst.forbidden(i, j);
      if (qual) (*qual)(i, j) = (*inst.qualification)(i, j);
    }
  }
  PaddedInstance out;
  out.instance = AssignmentInstance(std::move(w), inst.sense);
  out.instance.forbidden = std::move(forb);
  out.instance.qualification = std::move(qual);
  out.orig_agents = inst.n_agents;
  out.orig_tasks = inst.n_tasks;
  return out;
}

/// Normalizes a MaximizeProfit instance to MinimizeCost via c = W - p with
/// W the largest effective profit, so profit maximizers can reuse the
/// cost-form solvers. A MinimizeCost input is returned unchanged.
inline AssignmentInstance to_min_cost(const AssignmentInstance& inst) {
  if (inst.sense == Sense::MinimizeCost) return inst;
  Rational w_cap(0);
  for (int i = 0; i < inst.n_agents; ++i)
    for (int j = 0; j < inst.n_tasks; ++j)
      if (inst.allowed(i, j)) w_cap = max(w_cap, inst.effective_weight(i, j));
  Grid<Rational> c(inst.n_agents, inst.n_tasks, Rational(0));
  for (int i = 0; i < inst.n_agents; ++i)
    for (int j = 0; j < inst.n_tasks; ++j) c(i, j) = w_cap - inst.effective_weight(i, j);
  AssignmentInstance out(std::move(c), Sense::MinimizeCost);
  out.forbidden = inst.forbidden;
  return out;
}

}  // namespace assignkit
