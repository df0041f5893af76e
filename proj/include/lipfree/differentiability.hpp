#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lipfree/errors.hpp"
#include "lipfree/metric.hpp"
#include "lipfree/molecules.hpp"
#include "lipfree/norming.hpp"
#include "lipfree/potentials.hpp"
#include "lipfree/rational.hpp"

namespace lipfree {

// Ordered pair (s, t) of points of N with f(t) - f(s) = d(t, s), or its
// ε-relaxed counterpart.
struct CoverWitness {
  std::size_t s;
  std::size_t t;

  friend bool operator==(const CoverWitness&, const CoverWitness&) = default;
};

struct NotAttaining {
  NegativeCycleWitness witness;
};
struct NonUniqueOnN {
  std::size_t j;
  std::size_t k;
};
struct Uncovered {
  std::size_t point;
};

using DiffFailure = std::variant<std::monostate, NotAttaining, NonUniqueOnN, Uncovered>;

enum class DiffKind { Frechet, NotGateaux };

inline const char* to_string(DiffKind k) { return k == DiffKind::Frechet ? "Frechet" : "NotGateaux"; }

struct DiffVerdict {
  DiffKind kind = DiffKind::NotGateaux;
  std::optional<LipschitzFunction> norming;        // Frechet only
  DiffFailure failure;                             // NotGateaux only
  std::map<std::size_t, CoverWitness> coverage;    // Frechet only
  std::optional<LipschitzFunction> upper, lower;   // extensions g1, g2 when f on N exists
  // NonUniqueOnN / Uncovered: two different norming functions vanishing at the base.
  std::optional<std::pair<LipschitzFunction, LipschitzFunction>> alternatives;
};

// Best ε-cover of a point: minimises max(excess of x over [s,t], d(t,s) - (f(t) - f(s)))
// over all s, t in N (s = t allowed). The point lies in [s,t]_ε with
// f(t) - f(s) > d(t,s) - ε exactly when slack < ε.
struct SlackWitness {
  std::size_t s;
  std::size_t t;
  Rational slack;
};

inline SlackWitness min_cover_slack(const FiniteMetricSpace& space, const PartialFunction& f,
                                    std::size_t x) {
  std::optional<SlackWitness> best;
  for (const auto& [s, fs] : f.values) {
    for (const auto& [t, ft] : f.values) {
      const Rational excess = space.d(s, x) + space.d(t, x) - space.d(s, t);
      const Rational gap = space.d(t, s) - (ft - fs);
      const Rational& slack = excess > gap ? excess : gap;
      if (!best || slack < best->slack) best = SlackWitness{s, t, slack};
    }
  }
  if (!best) throw std::invalid_argument("empty partial function");
  return *best;
}

namespace detail {

inline PotentialTable require_table(const FiniteMetricSpace& space, const PairList& pairs) {
  auto result = closure(beta_matrix(space, pairs));
  if (auto* w = std::get_if<NegativeCycleWitness>(&result)) {
    std::string cyc;
    for (std::size_t i : w->cycle) cyc += (cyc.empty() ? "" : ",") + std::to_string(i);
    throw NotAttainingError("pairs are not cyclically monotone (negative cycle " + cyc + ")");
  }
  return std::get<PotentialTable>(std::move(result));
}

inline std::pair<std::size_t, std::size_t> first_non_rigid(const PotentialTable& table) {
  for (std::size_t j = 0; j < table.size(); ++j) {
    for (std::size_t k = j + 1; k < table.size(); ++k) {
      if (!table.rigid(j, k)) return {j, k};
    }
  }
  throw InternalError("no non-rigid pair in a table that is not globally unique");
}

// Shifts f so it vanishes at the base point.
inline LipschitzFunction pinned(const FiniteMetricSpace& space, LipschitzFunction f) {
  const Rational shift = f.values[space.base()];
  for (auto& v : f.values) v -= shift;
  f.base_pinned = true;
  return f;
}

inline void require_eps(const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
}

}  // namespace detail

// Gateaux (equivalently Frechet) differentiability of the norm at the
// normalized convex series Σ λ_i m_{x_i,y_i} over a finite space.
inline DiffVerdict decide(const FiniteMetricSpace& space, const MoleculeSystem& system) {
  if (space.size() < 2) throw std::invalid_argument("decide needs a space with at least 2 points");
  check_pairs(space, system.pairs);
  if (system.size() == 0 || !system.normalized()) {
    throw std::invalid_argument("system is not normalized (weights must sum to 1)");
  }

  DiffVerdict verdict;
  auto result = closure(beta_matrix(space, system.pairs));
  if (auto* w = std::get_if<NegativeCycleWitness>(&result)) {
    verdict.failure = NotAttaining{std::move(*w)};
    return verdict;
  }
  const auto& table = std::get<PotentialTable>(result);

  const PartialFunction on_n = build_on_N(space, system.pairs, table);
  verdict.upper = extend_upper(space, on_n);
  verdict.lower = extend_lower(space, on_n);

  if (!table.globally_unique) {
    const auto [j, k] = detail::first_non_rigid(table);
    verdict.failure = NonUniqueOnN{j, k};
    // α_j - α_k may be anything in [-B[k][j], B[j][k]]; realise both ends.
    PotentialTable high = table, low = table;
    for (std::size_t i = 0; i < table.size(); ++i) {
      high.alphas[i] = table.B[i][k];
      low.alphas[i] = -table.B[k][i];
    }
    verdict.alternatives.emplace(
        detail::pinned(space, extend_upper(space, build_on_N(space, system.pairs, high))),
        detail::pinned(space, extend_upper(space, build_on_N(space, system.pairs, low))));
    return verdict;
  }

  std::vector<Rational> values(space.size());
  for (std::size_t x = 0; x < space.size(); ++x) {
    std::optional<CoverWitness> found;
    for (const auto& [s, fs] : on_n.values) {
      for (const auto& [t, ft] : on_n.values) {
        if (s == t || ft - fs != space.d(t, s)) continue;
        if (segment_excess(space, s, t, x) == 0) {
          found = CoverWitness{s, t};
          values[x] = fs + space.d(s, x);
          break;
        }
      }
      if (found) break;
    }
    if (!found) {
      verdict.failure = Uncovered{x};
      verdict.alternatives.emplace(detail::pinned(space, *verdict.upper),
                                   detail::pinned(space, *verdict.lower));
      return verdict;
    }
    verdict.coverage.emplace(x, *found);
  }

  // Coverage pins every value, the base point included.
  const Rational shift = values[space.base()];
  for (auto& v : values) v -= shift;
  LipschitzFunction f = make_function(space, std::move(values));
  if (f.lip > 1 || !verify_norming(space, system, f)) {
    throw InternalError("covered norming function failed verification");
  }
  verdict.kind = DiffKind::Frechet;
  verdict.norming = std::move(f);
  return verdict;
}

// Failing pairs for condition (i) and uncovered points for condition (ii) of
// the ε-approximate Gateaux criterion.
struct GateauxEpsReport {
  std::vector<std::pair<std::size_t, std::size_t>> cond_i;  // B[j][k] + B[k][j] >= eps
  std::vector<std::pair<std::size_t, SlackWitness>> cond_ii;  // point, best (s, t, slack)

  bool empty() const { return cond_i.empty() && cond_ii.empty(); }
};

inline GateauxEpsReport check_gateaux_eps(const FiniteMetricSpace& space,
                                          const MoleculeSystem& system, const Rational& eps) {
  detail::require_eps(eps);
  const PotentialTable table = detail::require_table(space, system.pairs);
  GateauxEpsReport report;
  for (std::size_t j = 0; j < table.size(); ++j) {
    for (std::size_t k = j + 1; k < table.size(); ++k) {
      if (!eps_rigid(table, j, k, eps)) report.cond_i.emplace_back(j, k);
    }
  }
  const PartialFunction f = build_on_N(space, system.pairs, table);
  for (std::size_t x = 0; x < space.size(); ++x) {
    SlackWitness best = min_cover_slack(space, f, x);
    if (best.slack >= eps) report.cond_ii.emplace_back(x, std::move(best));
  }
  return report;
}

// Smallest n such that the first n pairs already ε-cover every point, using
// the norming function built from the full family. nullopt if none does.
inline std::optional<std::size_t> coverage_eps_prefix(const FiniteMetricSpace& space,
                                                      const MoleculeSystem& system,
                                                      const Rational& eps) {
  detail::require_eps(eps);
  const PotentialTable table = detail::require_table(space, system.pairs);
  const PartialFunction full = build_on_N(space, system.pairs, table);
  PartialFunction prefix;
  for (std::size_t n = 1; n <= system.size(); ++n) {
    for (std::size_t p : {system.pairs[n - 1].x, system.pairs[n - 1].y}) {
      prefix.values.emplace(p, full.values.at(p));
    }
    bool covered = true;
    for (std::size_t x = 0; x < space.size() && covered; ++x) {
      covered = min_cover_slack(space, prefix, x).slack < eps;
    }
    if (covered) return n;
  }
  return std::nullopt;
}

struct L1Verdict {
  bool isometric = true;
  std::vector<bool> pattern;  // pattern[i] = true when pair i is flipped
  std::optional<NegativeCycleWitness> witness;
};

inline constexpr std::size_t kDefaultL1Cap = 20;

// Isometric ℓ1-basis test: every sign pattern of the molecules must be
// simultaneously normable, i.e. every orientation of the pairs is cyclically
// monotone. The first pair is never flipped (flipping all signs maps f to -f).
inline L1Verdict l1_basis_check(const FiniteMetricSpace& space, const PairList& pairs,
                                std::size_t cap = kDefaultL1Cap) {
  check_pairs(space, pairs);
  const std::size_t n = pairs.size();
  if (n > cap) {
    throw ResourceLimitError("l1 check over " + std::to_string(n) + " pairs exceeds the cap of " +
                             std::to_string(cap));
  }
  if (n == 0) return L1Verdict{};
  const std::size_t patterns = std::size_t{1} << (n - 1);
  for (std::size_t code = 0; code < patterns; ++code) {
    // Pair 1 is the most significant free bit, so codes run in lexicographic order.
    std::vector<bool> flip(n, false);
    PairList oriented = pairs;
    for (std::size_t i = 1; i < n; ++i) {
      flip[i] = (code >> (n - 1 - i)) & 1U;
      if (flip[i]) std::swap(oriented[i].x, oriented[i].y);
    }
    auto verdict = check_cyclical_monotonicity(space, oriented);
    if (!verdict.holds) return L1Verdict{false, std::move(flip), std::move(verdict.witness)};
  }
  return L1Verdict{};
}

// Constant K = (4/θ + 1) n² D of the Frechet stability estimate.
struct StabilityBound {
  Rational theta;
  Rational diameter;
  std::size_t n = 0;
  Rational K;
};

inline StabilityBound stability_bound(const FiniteMetricSpace& space,
                                      const MoleculeSystem& system) {
  if (space.size() < 2) throw std::invalid_argument("stability bound needs at least 2 points");
  StabilityBound b;
  b.theta = space.theta();
  b.diameter = space.diameter();
  b.n = system.size();
  b.K = (Rational{4} / b.theta + 1) * Rational{static_cast<long>(b.n * b.n)} * b.diameter;
  return b;
}

struct StabilityCheck {
  bool hypothesis = false;  // g(μ) > 1 - eps / min λ_i
  bool conclusion = false;  // ‖f - g‖_∞ <= K eps
  Rational g_value;
  Rational sup_distance;
  Rational bound;           // K eps

  bool holds() const { return !hypothesis || conclusion; }
};

// Checks the implication g(μ) > 1 - eps/min λ  =>  ‖f - g‖_∞ <= K eps for a
// Frechet verdict with norming f.
inline StabilityCheck verify_stability(const FiniteMetricSpace& space, const MoleculeSystem& system,
                                       const DiffVerdict& verdict, const LipschitzFunction& g,
                                       const Rational& eps) {
  detail::require_eps(eps);
  if (verdict.kind != DiffKind::Frechet || !verdict.norming) {
    throw std::invalid_argument("stability check needs a Frechet verdict");
  }
  if (g.values.size() != space.size()) throw std::invalid_argument("g has the wrong size");
  if (g.values[space.base()] != 0) throw std::invalid_argument("g does not vanish at the base");
  if (lipschitz_constant(space, g.values) > 1) throw std::invalid_argument("g is not 1-Lipschitz");

  Rational min_weight = system.weights.front();
  for (const auto& w : system.weights) min_weight = w < min_weight ? w : min_weight;

  StabilityCheck c;
  c.g_value = evaluate(space, system, g.values);
  c.hypothesis = c.g_value > 1 - eps / min_weight;
  c.sup_distance = 0;
  for (std::size_t x = 0; x < space.size(); ++x) {
    Rational diff = abs(verdict.norming->values[x] - g.values[x]);
    if (diff > c.sup_distance) c.sup_distance = std::move(diff);
  }
  c.bound = stability_bound(space, system).K * eps;
  c.conclusion = c.sup_distance <= c.bound;
  return c;
}

inline StabilityCheck verify_stability(const FiniteMetricSpace& space, const MoleculeSystem& system,
                                       const LipschitzFunction& g, const Rational& eps) {
  return verify_stability(space, system, decide(space, system), g, eps);
}

}  // namespace lipfree
