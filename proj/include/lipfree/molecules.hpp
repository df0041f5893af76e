#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lipfree/metric.hpp"
#include "lipfree/rational.hpp"

namespace lipfree {

// Ordered point pair (x, y) of a molecule m_{x,y} = (δ_x - δ_y) / d(x,y).
struct Pair {
  std::size_t x;
  std::size_t y;

  friend bool operator==(const Pair&, const Pair&) = default;
  friend auto operator<=>(const Pair&, const Pair&) = default;
};

using PairList = std::vector<Pair>;

// Σ λ_i m_{x_i,y_i} with strictly positive weights. Pair order is kept; it is
// the truncation order for prefix checks.
struct MoleculeSystem {
  PairList pairs;
  std::vector<Rational> weights;

  Rational total_weight() const {
    Rational sum{0};
    for (const auto& w : weights) sum += w;
    return sum;
  }
  bool normalized() const { return total_weight() == 1; }
  std::size_t size() const { return pairs.size(); }
};

// Finitely supported element Σ c_p δ_p of the free space. The base point is
// never stored (δ_base = 0) and neither are zero coefficients.
struct PointMassElement {
  std::map<std::size_t, Rational> coeffs;

  friend bool operator==(const PointMassElement&, const PointMassElement&) = default;
};

struct BetaMatrix {
  // beta[j][k] = d(x_j, y_k) - d(x_j, y_j)
  RationalMatrix beta;

  std::size_t size() const { return beta.size(); }
  const Rational& operator()(std::size_t j, std::size_t k) const { return beta[j][k]; }
};

inline void check_pairs(const FiniteMetricSpace& space, const PairList& pairs) {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [x, y] = pairs[i];
    if (x >= space.size() || y >= space.size()) {
      throw std::invalid_argument("pair " + std::to_string(i) + " references a point out of range");
    }
    if (x == y) {
      throw std::invalid_argument("pair " + std::to_string(i) + " has equal endpoints '" +
                                  space.label(x) + "'");
    }
  }
}

inline MoleculeSystem make_system(const FiniteMetricSpace& space, PairList pairs,
                                  std::vector<Rational> weights) {
  check_pairs(space, pairs);
  if (weights.size() != pairs.size()) {
    throw std::invalid_argument("got " + std::to_string(weights.size()) + " weights for " +
                                std::to_string(pairs.size()) + " pairs");
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0) {
      throw std::invalid_argument("weight " + std::to_string(i) + " is not strictly positive");
    }
  }
  return MoleculeSystem{std::move(pairs), std::move(weights)};
}

inline PointMassElement make_element(const FiniteMetricSpace& space,
                                     const std::map<std::size_t, Rational>& coeffs) {
  PointMassElement e;
  for (const auto& [p, c] : coeffs) {
    if (p >= space.size()) throw std::invalid_argument("element references a point out of range");
    if (p == space.base() || c == 0) continue;
    e.coeffs.emplace(p, c);
  }
  return e;
}

inline BetaMatrix beta_matrix(const FiniteMetricSpace& space, const PairList& pairs) {
  check_pairs(space, pairs);
  const std::size_t n = pairs.size();
  BetaMatrix out{RationalMatrix(n, std::vector<Rational>(n))};
  for (std::size_t j = 0; j < n; ++j) {
    const Rational& own = space.d(pairs[j].x, pairs[j].y);
    for (std::size_t k = 0; k < n; ++k) {
      out.beta[j][k] = j == k ? Rational{0} : Rational{space.d(pairs[j].x, pairs[k].y) - own};
    }
  }
  return out;
}

inline PointMassElement to_point_masses(const FiniteMetricSpace& space,
                                        const MoleculeSystem& system) {
  check_pairs(space, system.pairs);
  std::map<std::size_t, Rational> acc;
  for (std::size_t i = 0; i < system.size(); ++i) {
    const auto [x, y] = system.pairs[i];
    const Rational mass = system.weights[i] / space.d(x, y);
    acc[x] += mass;
    acc[y] -= mass;
  }
  return make_element(space, acc);
}

// Value of a function (given on every point) on a molecule combination:
// Σ λ_i (f(x_i) - f(y_i)) / d(x_i, y_i).
inline Rational evaluate(const FiniteMetricSpace& space, const MoleculeSystem& system,
                         const std::vector<Rational>& values) {
  Rational sum{0};
  for (std::size_t i = 0; i < system.size(); ++i) {
    const auto [x, y] = system.pairs[i];
    sum += system.weights[i] * (values[x] - values[y]) / space.d(x, y);
  }
  return sum;
}

// Σ c_p (f(p) - f(base)); the pairing ignores the additive constant of f.
inline Rational evaluate(const FiniteMetricSpace& space, const PointMassElement& element,
                         const std::vector<Rational>& values) {
  Rational sum{0};
  for (const auto& [p, c] : element.coeffs) sum += c * (values[p] - values[space.base()]);
  return sum;
}

}  // namespace lipfree
