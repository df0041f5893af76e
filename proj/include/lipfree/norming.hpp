#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lipfree/errors.hpp"
#include "lipfree/metric.hpp"
#include "lipfree/molecules.hpp"
#include "lipfree/potentials.hpp"
#include "lipfree/rational.hpp"

namespace lipfree {

// A function on every point of the space with a certified Lipschitz constant.
// `base_pinned` is false when nothing forced values[base] = 0 and the values
// are only meaningful up to an additive constant.
struct LipschitzFunction {
  std::vector<Rational> values;
  Rational lip;
  bool base_pinned = true;

  friend bool operator==(const LipschitzFunction&, const LipschitzFunction&) = default;
};

// Values on a subset N of points.
struct PartialFunction {
  std::map<std::size_t, Rational> values;
  bool base_pinned = false;
};

// max |f(p) - f(q)| / d(p,q) over distinct points of the space.
inline Rational lipschitz_constant(const FiniteMetricSpace& space,
                                   const std::vector<Rational>& values) {
  Rational best{0};
  for (std::size_t p = 0; p < space.size(); ++p) {
    for (std::size_t q = p + 1; q < space.size(); ++q) {
      Rational ratio = abs(values[p] - values[q]) / space.d(p, q);
      if (ratio > best) best = std::move(ratio);
    }
  }
  return best;
}

inline LipschitzFunction make_function(const FiniteMetricSpace& space, std::vector<Rational> values,
                                       bool base_pinned = true) {
  if (values.size() != space.size()) {
    throw std::invalid_argument("function has " + std::to_string(values.size()) +
                                " values for " + std::to_string(space.size()) + " points");
  }
  Rational lip = lipschitz_constant(space, values);
  return LipschitzFunction{std::move(values), std::move(lip), base_pinned};
}

// The points {x_i, y_i}, sorted.
inline PointSet support_points(const PairList& pairs) {
  std::vector<bool> in;
  PointSet out;
  for (const auto& [x, y] : pairs) {
    for (std::size_t p : {x, y}) {
      if (p >= in.size()) in.resize(p + 1, false);
      if (!in[p]) {
        in[p] = true;
        out.push_back(p);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// f(y_i) = α_i, f(x_i) = α_i + d(x_i, y_i). Coincident points must receive the
// same value (y_j = y_k, x_j = x_k, y_j = x_k); a mismatch means the table does
// not belong to these pairs and is reported as an internal error.
inline PartialFunction build_on_N(const FiniteMetricSpace& space, const PairList& pairs,
                                  const PotentialTable& table) {
  check_pairs(space, pairs);
  if (table.size() != pairs.size()) {
    throw std::invalid_argument("potential table size does not match the pair count");
  }
  PartialFunction f;
  const auto assign = [&](std::size_t point, Rational value, std::size_t pair_index) {
    auto [it, inserted] = f.values.emplace(point, value);
    if (!inserted && it->second != value) {
      throw InternalError("conflicting norming values at point '" + space.label(point) +
                          "' from pair " + std::to_string(pair_index) + ": " +
                          to_string(it->second) + " vs " + to_string(value));
    }
  };
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [x, y] = pairs[i];
    assign(y, table.alphas[i], i);
    assign(x, table.alphas[i] + space.d(x, y), i);
  }
  if (auto it = f.values.find(space.base()); it != f.values.end()) {
    const Rational shift = it->second;
    for (auto& [p, v] : f.values) v -= shift;
    f.base_pinned = true;
  }
  return f;
}

namespace detail {

inline void check_partial(const FiniteMetricSpace& space, const PartialFunction& partial) {
  if (partial.values.empty()) throw std::invalid_argument("partial function has empty domain");
  for (const auto& [p, v] : partial.values) {
    check_index(space, p);
    for (const auto& [q, w] : partial.values) {
      if (q <= p) continue;
      if (abs(v - w) > space.d(p, q)) {
        throw std::invalid_argument("partial function is not 1-Lipschitz on ('" +
                                    space.label(p) + "','" + space.label(q) + "')");
      }
    }
  }
}

}  // namespace detail

// Largest 1-Lipschitz extension g1(x) = min_{p in N} f(p) + d(p,x).
inline LipschitzFunction extend_upper(const FiniteMetricSpace& space,
                                      const PartialFunction& partial) {
  detail::check_partial(space, partial);
  std::vector<Rational> g(space.size());
  for (std::size_t x = 0; x < space.size(); ++x) {
    bool first = true;
    for (const auto& [p, v] : partial.values) {
      Rational cand = v + space.d(p, x);
      if (first || cand < g[x]) g[x] = std::move(cand);
      first = false;
    }
  }
  return make_function(space, std::move(g), partial.base_pinned);
}

// Smallest 1-Lipschitz extension g2(x) = max_{p in N} f(p) - d(p,x).
inline LipschitzFunction extend_lower(const FiniteMetricSpace& space,
                                      const PartialFunction& partial) {
  detail::check_partial(space, partial);
  std::vector<Rational> g(space.size());
  for (std::size_t x = 0; x < space.size(); ++x) {
    bool first = true;
    for (const auto& [p, v] : partial.values) {
      Rational cand = v - space.d(p, x);
      if (first || cand > g[x]) g[x] = std::move(cand);
      first = false;
    }
  }
  return make_function(space, std::move(g), partial.base_pinned);
}

// f(x_i) - f(y_i) = d(x_i, y_i) exactly for every pair, with Lip(f) <= 1.
inline bool verify_norming(const FiniteMetricSpace& space, const PairList& pairs,
                           const LipschitzFunction& f) {
  if (f.values.size() != space.size()) return false;
  if (lipschitz_constant(space, f.values) > 1) return false;
  for (const auto& [x, y] : pairs) {
    if (f.values[x] - f.values[y] != space.d(x, y)) return false;
  }
  return true;
}

inline bool verify_norming(const FiniteMetricSpace& space, const MoleculeSystem& system,
                           const LipschitzFunction& f) {
  return verify_norming(space, system.pairs, f);
}

}  // namespace lipfree
