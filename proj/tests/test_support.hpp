#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "lipfree/lipfree.hpp"

namespace lipfree::testing {

// {0, a, b} with d(a,0) = 2, d(b,0) = 1, d(a,b) = 2.
inline FiniteMetricSpace tri_space() {
  return FiniteMetricSpace::from_raw(
      RawSpace{{"0", "a", "b"}, "0", {{0, 2, 1}, {2, 0, 2}, {1, 2, 0}}});
}
inline constexpr std::size_t O = 0, A = 1, B = 2;

inline Rational q(long p, long d = 1) { return Rational{p, d}; }

inline MoleculeSystem normalized_system(const FiniteMetricSpace& space, PairList pairs,
                                        std::mt19937_64& rng) {
  auto w = random_weights(pairs.size(), rng);
  return make_system(space, std::move(pairs), std::move(w));
}

inline std::vector<Rational> to_vec(std::initializer_list<Rational> v) { return v; }

// Random instance sweep: ≤ 6 points, both random profiles, 1..5 pairs.
struct Instance {
  FiniteMetricSpace space;
  MoleculeSystem system;
};

inline Instance random_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 7919 + 17);
  const std::size_t points = std::uniform_int_distribution<std::size_t>(2, 6)(rng);
  const auto profile = seed % 2 == 0 ? RandomProfile::generic : RandomProfile::near_degenerate;
  auto space = gen_random(points, seed, profile);
  const std::size_t npairs = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
  auto system = normalized_system(space, random_pairs(space, npairs, rng), rng);
  return Instance{std::move(space), std::move(system)};
}

// β with no negative cycles: β[j][k] = r[j][k] + a_j - a_k with r >= 0 and
// plenty of zeros, so rigid pairs are common.
inline BetaMatrix random_feasible_beta(std::size_t n, std::mt19937_64& rng) {
  std::vector<Rational> a(n);
  for (auto& x : a) x = random_rational(rng, -3, 3, 4);
  BetaMatrix beta{RationalMatrix(n, std::vector<Rational>(n))};
  std::bernoulli_distribution zero(0.4);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (j == k) continue;
      const Rational r = zero(rng) ? Rational{0} : random_rational(rng, 0, 2, 4);
      beta.beta[j][k] = r + a[j] - a[k];
    }
  }
  return beta;
}

inline BetaMatrix random_beta(std::size_t n, std::mt19937_64& rng) {
  BetaMatrix beta{RationalMatrix(n, std::vector<Rational>(n))};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (j != k) beta.beta[j][k] = random_rational(rng, -1, 3, 4);
    }
  }
  return beta;
}

}  // namespace lipfree::testing
