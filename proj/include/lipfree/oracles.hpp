#pragma once

// Brute-force reference implementations. Exponential by nature and capped;
// they share no code with the solvers they are used to cross-check.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lipfree/errors.hpp"
#include "lipfree/metric.hpp"
#include "lipfree/molecules.hpp"
#include "lipfree/rational.hpp"

namespace lipfree::oracles {

inline constexpr std::size_t kMaxCycleMatrix = 8;
inline constexpr std::size_t kMaxDualPoints = 6;

struct CycleMinimum {
  Rational min_sum;
  std::vector<std::size_t> cycle;  // starts at its smallest index
};

// Minimum β-sum over all simple cycles of length <= max_len (0 = matrix size).
// Length-1 cycles (a single index, sum β[j][j] = 0) are included.
inline CycleMinimum brute_cycles(const BetaMatrix& beta, std::size_t max_len = 0) {
  const std::size_t n = beta.size();
  if (n > kMaxCycleMatrix) {
    throw ResourceLimitError("brute_cycles is capped at " + std::to_string(kMaxCycleMatrix) +
                             " indices");
  }
  if (n == 0) return CycleMinimum{Rational{0}, {}};
  if (max_len == 0 || max_len > n) max_len = n;

  CycleMinimum best{beta(0, 0), {0}};
  std::vector<std::size_t> path;
  std::vector<bool> used(n, false);
  const auto extend = [&](auto&& self, const Rational& partial) -> void {
    const std::size_t last = path.back();
    if (path.size() >= 2) {
      Rational total = partial + beta(last, path.front());
      if (total < best.min_sum) best = CycleMinimum{std::move(total), path};
    }
    if (path.size() == max_len) return;
    for (std::size_t v = path.front() + 1; v < n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      path.push_back(v);
      self(self, partial + beta(last, v));
      path.pop_back();
      used[v] = false;
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    if (beta(s, s) < best.min_sum) best = CycleMinimum{beta(s, s), {s}};
    path = {s};
    used.assign(n, false);
    used[s] = true;
    extend(extend, Rational{0});
  }
  return best;
}

// Minimum β-sum over simple paths j -> k (the empty path when j = k).
inline Rational brute_min_path(const BetaMatrix& beta, std::size_t j, std::size_t k) {
  const std::size_t n = beta.size();
  if (n > kMaxCycleMatrix) throw ResourceLimitError("brute_min_path is capped");
  if (j == k) return Rational{0};
  std::optional<Rational> best;
  std::vector<bool> used(n, false);
  used[j] = true;
  const auto walk = [&](auto&& self, std::size_t at, const Rational& partial) -> void {
    for (std::size_t v = 0; v < n; ++v) {
      if (used[v]) continue;
      Rational next = partial + beta(at, v);
      if (v == k) {
        if (!best || next < *best) best = next;
        continue;
      }
      used[v] = true;
      self(self, v, next);
      used[v] = false;
    }
  };
  walk(walk, j, Rational{0});
  return *best;
}

// All vertices of {f : f(base) = 0, |f(p) - f(q)| <= d(p,q)}: every spanning
// tree of the complete point graph, every sign on its edges, propagated from
// f(base) = 0 and filtered for the Lipschitz condition. Trees are grown one
// edge at a time with infeasible partial assignments pruned and duplicate
// partial states merged.
inline std::vector<std::vector<Rational>> dual_vertices(const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  if (n > kMaxDualPoints) {
    throw ResourceLimitError("dual vertex enumeration is capped at " +
                             std::to_string(kMaxDualPoints) + " points");
  }
  using State = std::pair<unsigned, std::vector<Rational>>;
  std::set<State> seen;
  std::set<std::vector<Rational>> out;
  const unsigned full = (1U << n) - 1U;

  const auto grow = [&](auto&& self, unsigned mask, std::vector<Rational>& f) -> void {
    if (!seen.emplace(mask, f).second) return;
    if (mask == full) {
      out.insert(f);
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (mask & (1U << v)) continue;
      for (std::size_t u = 0; u < n; ++u) {
        if (!(mask & (1U << u))) continue;
        for (int sign : {+1, -1}) {
          const Rational value = sign > 0 ? Rational{f[u] + space.d(u, v)}
                                          : Rational{f[u] - space.d(u, v)};
          bool feasible = true;
          for (std::size_t w = 0; w < n && feasible; ++w) {
            if (mask & (1U << w)) feasible = abs(value - f[w]) <= space.d(v, w);
          }
          if (!feasible) continue;
          f[v] = value;
          self(self, mask | (1U << v), f);
          f[v] = 0;
        }
      }
    }
  };
  std::vector<Rational> f(n, Rational{0});
  grow(grow, 1U << space.base(), f);
  return {out.begin(), out.end()};
}

// max Σ c_p f(p) over the dual vertices.
inline Rational brute_dual_norm(const FiniteMetricSpace& space, const PointMassElement& element) {
  std::optional<Rational> best;
  for (const auto& f : dual_vertices(space)) {
    Rational value = evaluate(space, element, f);
    if (!best || value > *best) best = std::move(value);
  }
  return best.value_or(Rational{0});
}

// Smulyan check by enumeration: the optimal face {f : f(μ) = Σλ} of the dual
// polytope is a single point iff all optimal vertices coincide. False when no
// vertex reaches Σλ (the family does not attain its norm).
inline bool brute_norming_uniqueness(const FiniteMetricSpace& space, const MoleculeSystem& system) {
  const PointMassElement element = to_point_masses(space, system);
  const Rational target = system.total_weight();
  std::optional<std::vector<Rational>> first;
  for (const auto& f : dual_vertices(space)) {
    if (evaluate(space, element, f) != target) continue;
    if (!first) {
      first = f;
    } else if (*first != f) {
      return false;
    }
  }
  return first.has_value();
}

}  // namespace lipfree::oracles
