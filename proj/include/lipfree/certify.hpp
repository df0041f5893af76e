#pragma once

// Re-verification of emitted certificates from raw space data. Each checker
// returns a description of the first problem, or nullopt when the certificate
// holds. None of them reuse the solver paths that produced the certificate.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lipfree/differentiability.hpp"
#include "lipfree/metric.hpp"
#include "lipfree/molecules.hpp"
#include "lipfree/norming.hpp"
#include "lipfree/potentials.hpp"
#include "lipfree/rational.hpp"
#include "lipfree/transport.hpp"

namespace lipfree {

using CertError = std::optional<std::string>;

// The cycle must use distinct pair indices and satisfy
// Σ d(x_i, y_i) > Σ d(x_i, y_next) with the stored β-sum.
inline CertError witness_error(const FiniteMetricSpace& space, const PairList& pairs,
                               const NegativeCycleWitness& w) {
  if (w.cycle.empty()) return "empty cycle";
  auto sorted = w.cycle;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    return "cycle repeats a pair index";
  }
  if (sorted.back() >= pairs.size()) return "cycle index out of range";
  Rational aligned{0}, cross{0};
  for (std::size_t r = 0; r < w.cycle.size(); ++r) {
    const Pair& cur = pairs[w.cycle[r]];
    const Pair& nxt = pairs[w.cycle[(r + 1) % w.cycle.size()]];
    aligned += space.d(cur.x, cur.y);
    cross += space.d(cur.x, nxt.y);
  }
  if (cross - aligned != w.sum) return "stored sum does not match the cycle";
  if (w.sum >= 0) return "cycle sum is not negative";
  return std::nullopt;
}

// α_k <= α_j + β[k][j] for all j, k, anchored at zero, and B consistent with β.
inline CertError table_error(const PotentialTable& t) {
  const std::size_t n = t.size();
  if (t.alphas.size() != n) return "alpha vector has the wrong size";
  if (n > 0 && t.alphas[t.anchor] != 0) return "anchor potential is not zero";
  for (std::size_t j = 0; j < n; ++j) {
    if (t.B[j][j] != 0) return "closure diagonal is not zero";
    for (std::size_t k = 0; k < n; ++k) {
      if (t.alphas[k] > t.alphas[j] + t.beta(k, j)) return "potentials violate a constraint";
      if (t.B[j][k] > t.beta(j, k)) return "closure exceeds a direct arc";
      if (t.B[j][k] + t.B[k][j] < 0) return "closure has a negative 2-cycle";
      if (t.alphas[j] - t.alphas[k] > t.B[j][k]) return "potential difference exceeds closure";
    }
  }
  return std::nullopt;
}

// f is a norming function for the pairs: vanishes at the base, Lip(f) <= 1 and
// f(x_i) - f(y_i) = d(x_i, y_i).
inline CertError norming_error(const FiniteMetricSpace& space, const PairList& pairs,
                               const LipschitzFunction& f) {
  if (f.values.size() != space.size()) return "function has the wrong size";
  if (f.values[space.base()] != 0) return "function does not vanish at the base";
  if (!verify_norming(space, pairs, f)) return "function does not norm every pair";
  if (f.lip != lipschitz_constant(space, f.values)) return "reported Lipschitz constant is wrong";
  return std::nullopt;
}

inline CertError verdict_error(const FiniteMetricSpace& space, const MoleculeSystem& system,
                               const DiffVerdict& v) {
  if (v.kind == DiffKind::Frechet) {
    if (!v.norming) return "Frechet verdict without norming function";
    if (auto e = norming_error(space, system.pairs, *v.norming)) return e;
    const PointSet n_points = support_points(system.pairs);
    const auto in_n = [&](std::size_t p) {
      return std::binary_search(n_points.begin(), n_points.end(), p);
    };
    const auto& f = v.norming->values;
    for (std::size_t x = 0; x < space.size(); ++x) {
      const auto it = v.coverage.find(x);
      if (it == v.coverage.end()) return "point '" + space.label(x) + "' has no coverage entry";
      const auto [s, t] = it->second;
      if (s == t || !in_n(s) || !in_n(t)) return "coverage endpoints are not distinct points of N";
      if (f[t] - f[s] != space.d(t, s)) return "coverage pair is not normed";
      if (space.d(s, x) + space.d(x, t) != space.d(s, t)) return "point is not on its segment";
    }
    return std::nullopt;
  }

  if (const auto* na = std::get_if<NotAttaining>(&v.failure)) {
    return witness_error(space, system.pairs, na->witness);
  }
  if (!v.alternatives) return "non-differentiability verdict without two norming functions";
  const auto& [f1, f2] = *v.alternatives;
  if (auto e = norming_error(space, system.pairs, f1)) return "first alternative: " + *e;
  if (auto e = norming_error(space, system.pairs, f2)) return "second alternative: " + *e;
  if (f1.values == f2.values) return "alternative norming functions coincide";
  if (const auto* nu = std::get_if<NonUniqueOnN>(&v.failure)) {
    if (nu->j >= system.size() || nu->k >= system.size() || nu->j == nu->k) {
      return "non-unique pair indices out of range";
    }
    const auto [xj, yj] = system.pairs[nu->j];
    const auto [xk, yk] = system.pairs[nu->k];
    if (f1.values[yj] - f1.values[yk] == f2.values[yj] - f2.values[yk]) {
      return "alternatives agree on α_j - α_k";
    }
    return std::nullopt;
  }
  if (const auto* un = std::get_if<Uncovered>(&v.failure)) {
    const std::size_t x = un->point;
    if (x >= space.size()) return "uncovered point out of range";
    const PointSet n_points = support_points(system.pairs);
    const auto& f = f1.values;
    for (std::size_t s : n_points) {
      for (std::size_t t : n_points) {
        if (s != t && f[t] - f[s] == space.d(t, s) &&
            space.d(s, x) + space.d(x, t) == space.d(s, t)) {
          return "point reported uncovered lies on a normed segment";
        }
      }
    }
    return std::nullopt;
  }
  return "NotGateaux verdict without a failure";
}

inline CertError l1_verdict_error(const FiniteMetricSpace& space, const PairList& pairs,
                                  const L1Verdict& v) {
  if (v.isometric) return std::nullopt;
  if (!v.witness || v.pattern.size() != pairs.size()) return "failing l1 verdict without witness";
  PairList oriented = pairs;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (v.pattern[i]) std::swap(oriented[i].x, oriented[i].y);
  }
  return witness_error(space, oriented, *v.witness);
}

}  // namespace lipfree
