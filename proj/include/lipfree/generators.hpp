#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lipfree/metric.hpp"
#include "lipfree/molecules.hpp"
#include "lipfree/rational.hpp"

namespace lipfree {

enum class RandomProfile { generic, near_degenerate };

inline constexpr long kDefaultMaxDenominator = 64;

// Shortest-path closure d(i,k) <- min_j d(i,j) + d(j,k). Leaves a metric
// unchanged; turns any symmetric positive matrix into a metric.
inline RationalMatrix metric_closure(RationalMatrix d) {
  const std::size_t n = d.size();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        Rational via = d[i][j] + d[j][k];
        if (via < d[i][k]) d[i][k] = std::move(via);
      }
    }
  }
  return d;
}

// Points 0, 1, ..., k with d(n, 0) = 1 and d(m, n) = 2 for m != n.
inline FiniteMetricSpace gen_star(std::size_t k) {
  if (k < 1) throw std::invalid_argument("star needs k >= 1");
  RawSpace raw;
  for (std::size_t i = 0; i <= k; ++i) raw.labels.push_back(std::to_string(i));
  raw.base_label = "0";
  raw.dist.assign(k + 1, std::vector<Rational>(k + 1, Rational{2}));
  for (std::size_t i = 0; i <= k; ++i) {
    raw.dist[i][i] = 0;
    if (i > 0) raw.dist[i][0] = raw.dist[0][i] = 1;
  }
  return FiniteMetricSpace::from_raw(std::move(raw));
}

// Truncation {0, x_1, ..., x_k} of the c0 subset with x_1 = 2e_1 and
// x_n = e_1 + (1 + 2^-n) e_n, under the sup norm.
inline FiniteMetricSpace gen_c0_truncation(std::size_t k) {
  if (k < 2) throw std::invalid_argument("c0 truncation needs k >= 2");
  const auto coords = [k](std::size_t n) {
    std::vector<Rational> c(k + 1, Rational{0});  // coordinate 0 unused
    if (n == 1) {
      c[1] = 2;
    } else if (n > 1) {
      c[1] = 1;
      c[n] = 1 + pow2_neg(static_cast<unsigned>(n));
    }
    return c;
  };
  RawSpace raw;
  raw.labels.push_back("0");
  for (std::size_t n = 1; n <= k; ++n) raw.labels.push_back("x" + std::to_string(n));
  raw.base_label = "0";
  raw.dist.assign(k + 1, std::vector<Rational>(k + 1, Rational{0}));
  for (std::size_t a = 0; a <= k; ++a) {
    const auto ca = coords(a);
    for (std::size_t b = 0; b <= k; ++b) {
      const auto cb = coords(b);
      Rational sup{0};
      for (std::size_t i = 1; i <= k; ++i) {
        const Rational diff = abs(ca[i] - cb[i]);
        if (diff > sup) sup = diff;
      }
      raw.dist[a][b] = sup;
    }
  }
  return FiniteMetricSpace::from_raw(std::move(raw));
}

// Integer points 0, 1, ..., size-1 of the real line.
inline FiniteMetricSpace gen_line(std::size_t size) {
  if (size < 2) throw std::invalid_argument("line needs at least 2 points");
  RawSpace raw;
  for (std::size_t i = 0; i < size; ++i) raw.labels.push_back(std::to_string(i));
  raw.base_label = "0";
  raw.dist.assign(size, std::vector<Rational>(size));
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      raw.dist[i][j] = i > j ? static_cast<long>(i - j) : static_cast<long>(j - i);
    }
  }
  return FiniteMetricSpace::from_raw(std::move(raw));
}

// Uniform rational in [lo, hi] with denominator drawn from 1..max_den.
inline Rational random_rational(std::mt19937_64& rng, long lo, long hi,
                                long max_den = kDefaultMaxDenominator) {
  const long den = std::uniform_int_distribution<long>(1, max_den)(rng);
  const long num = std::uniform_int_distribution<long>(lo * den, hi * den)(rng);
  return Rational{num, den};
}

namespace detail {

inline bool has_collinear_triple(const RationalMatrix& d) {
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = i + 1; k < n; ++k) {
        if (j != i && j != k && d[i][j] + d[j][k] == d[i][k]) return true;
      }
    }
  }
  return false;
}

}  // namespace detail

// Seeded random metric on `points` points labelled p0, p1, ...; p0 is the base.
// generic: edge lengths in [1, 4] repaired by shortest-path closure.
// near_degenerate: shortest-path metric of a random tree plus a few chords with
// small half-integer lengths, so exact segment alignments are common; falls
// back to the bare tree metric when the chords erase every alignment.
inline FiniteMetricSpace gen_random(std::size_t points, std::uint64_t seed,
                                    RandomProfile profile = RandomProfile::generic) {
  if (points < 2) throw std::invalid_argument("random space needs at least 2 points");
  std::mt19937_64 rng(seed);
  RawSpace raw;
  for (std::size_t i = 0; i < points; ++i) raw.labels.push_back("p" + std::to_string(i));
  raw.base_label = "p0";

  if (profile == RandomProfile::generic) {
    RationalMatrix d(points, std::vector<Rational>(points, Rational{0}));
    for (std::size_t i = 0; i < points; ++i) {
      for (std::size_t j = i + 1; j < points; ++j) d[i][j] = d[j][i] = random_rational(rng, 1, 4);
    }
    raw.dist = metric_closure(std::move(d));
    return FiniteMetricSpace::from_raw(std::move(raw));
  }

  // Large finite stand-in for "no edge"; every path in the tree is shorter.
  const Rational absent{static_cast<long>(4 * points)};
  RationalMatrix tree(points, std::vector<Rational>(points, absent));
  for (std::size_t i = 0; i < points; ++i) tree[i][i] = 0;
  for (std::size_t v = 1; v < points; ++v) {
    const std::size_t u = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
    tree[u][v] = tree[v][u] = random_rational(rng, 1, 3, 2);
  }
  RationalMatrix chorded = tree;
  const std::size_t chords = std::uniform_int_distribution<std::size_t>(0, points / 2)(rng);
  for (std::size_t c = 0; c < chords; ++c) {
    const std::size_t a = std::uniform_int_distribution<std::size_t>(0, points - 1)(rng);
    const std::size_t b = std::uniform_int_distribution<std::size_t>(0, points - 1)(rng);
    if (a == b) continue;
    chorded[a][b] = chorded[b][a] = random_rational(rng, 1, 3, 2);
  }
  raw.dist = metric_closure(std::move(chorded));
  if (points >= 3 && !detail::has_collinear_triple(raw.dist)) raw.dist = metric_closure(std::move(tree));
  return FiniteMetricSpace::from_raw(std::move(raw));
}

enum class GeneratorKind { star, c0_truncation, line, random };

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::star;
  std::size_t size = 0;  // k for star and c0_truncation, the point count otherwise
  std::uint64_t seed = 0;
  RandomProfile profile = RandomProfile::generic;
};

inline FiniteMetricSpace generate(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorKind::star: return gen_star(spec.size);
    case GeneratorKind::c0_truncation: return gen_c0_truncation(spec.size);
    case GeneratorKind::line: return gen_line(spec.size);
    case GeneratorKind::random: return gen_random(spec.size, spec.seed, spec.profile);
  }
  throw std::invalid_argument("unknown generator kind");
}

// Number of points generate(spec) returns, without building the space.
inline std::size_t generated_points(const GeneratorSpec& spec) {
  const bool pointed = spec.kind == GeneratorKind::star || spec.kind == GeneratorKind::c0_truncation;
  return pointed ? spec.size + 1 : spec.size;
}

// `count` random ordered pairs of distinct points (repetition allowed).
inline PairList random_pairs(const FiniteMetricSpace& space, std::size_t count,
                             std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, space.size() - 1);
  PairList out;
  while (out.size() < count) {
    const std::size_t x = pick(rng), y = pick(rng);
    if (x != y) out.push_back(Pair{x, y});
  }
  return out;
}

// Positive weights with small denominators, rescaled to sum to 1.
inline std::vector<Rational> random_weights(std::size_t count, std::mt19937_64& rng) {
  std::vector<Rational> w;
  Rational total{0};
  for (std::size_t i = 0; i < count; ++i) {
    w.push_back(Rational{std::uniform_int_distribution<long>(1, 16)(rng)});
    total += w.back();
  }
  for (auto& x : w) x /= total;
  return w;
}

// λ_n proportional to 2^-n, n = 1..count, normalized.
inline std::vector<Rational> geometric_weights(std::size_t count) {
  std::vector<Rational> w;
  Rational total{0};
  for (std::size_t n = 1; n <= count; ++n) {
    w.push_back(pow2_neg(static_cast<unsigned>(n)));
    total += w.back();
  }
  for (auto& x : w) x /= total;
  return w;
}

}  // namespace lipfree
