#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lipfree/errors.hpp"
#include "lipfree/metric.hpp"
#include "lipfree/molecules.hpp"
#include "lipfree/rational.hpp"

namespace lipfree {

// Shortest β-path closure of a cycle-free-of-negatives β matrix, together with
// one solution of the difference constraints α_k <= α_j + β[k][j].
struct PotentialTable {
  BetaMatrix beta;
  RationalMatrix B;
  std::vector<Rational> alphas;  // alphas[j] = B[j][anchor]
  std::size_t anchor = 0;
  bool globally_unique = false;
  std::vector<std::pair<std::size_t, std::size_t>> rigid_pairs;  // j < k, B[j][k] + B[k][j] = 0
  std::vector<std::vector<std::size_t>> next;                    // successor on a minimizing path

  std::size_t size() const { return B.size(); }
  bool rigid(std::size_t j, std::size_t k) const { return B[j][k] + B[k][j] == 0; }
};

// Simple cycle i_1 -> ... -> i_m -> i_1 of pair indices with negative β-sum.
struct NegativeCycleWitness {
  std::vector<std::size_t> cycle;
  Rational sum;

  friend bool operator==(const NegativeCycleWitness&, const NegativeCycleWitness&) = default;
};

using ClosureResult = std::variant<PotentialTable, NegativeCycleWitness>;

// β_{i_1 i_2} + ... + β_{i_m i_1}.
inline Rational cycle_sum(const BetaMatrix& beta, const std::vector<std::size_t>& cycle) {
  Rational sum{0};
  for (std::size_t r = 0; r < cycle.size(); ++r) {
    sum += beta(cycle[r], cycle[(r + 1) % cycle.size()]);
  }
  return sum;
}

// Rotates a cycle so its smallest index comes first.
inline std::vector<std::size_t> canonical_rotation(std::vector<std::size_t> cycle) {
  if (cycle.empty()) return cycle;
  std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
  return cycle;
}

namespace detail {

inline void check_beta(const BetaMatrix& beta) {
  const std::size_t n = beta.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (beta.beta[j].size() != n) throw std::invalid_argument("beta matrix is not square");
    if (beta(j, j) != 0) {
      throw std::invalid_argument("beta matrix has nonzero diagonal entry at " + std::to_string(j));
    }
  }
}

// Bellman-Ford from a virtual source joined to every vertex with weight 0. Any
// cycle of the final predecessor graph is negative; we return the one reached
// from the last relaxed vertex.
inline std::optional<NegativeCycleWitness> find_negative_cycle(const BetaMatrix& beta) {
  const std::size_t n = beta.size();
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<Rational> dist(n, Rational{0});
  std::vector<std::size_t> pred(n, none);
  std::size_t last = none;
  for (std::size_t round = 0; round <= n; ++round) {
    last = none;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        if (u == v) continue;
        const Rational cand = dist[u] + beta(u, v);
        if (cand < dist[v]) {
          dist[v] = cand;
          pred[v] = u;
          last = v;
        }
      }
    }
    if (last == none) return std::nullopt;
  }
  std::size_t v = last;
  for (std::size_t i = 0; i < n; ++i) v = pred[v];
  std::vector<std::size_t> cycle;
  std::size_t u = v;
  do {
    cycle.push_back(u);
    u = pred[u];
  } while (u != v && cycle.size() <= n);
  if (u != v) throw InternalError("predecessor walk did not close a cycle");
  std::reverse(cycle.begin(), cycle.end());
  cycle = canonical_rotation(std::move(cycle));
  Rational sum = cycle_sum(beta, cycle);
  if (sum >= 0) throw InternalError("extracted predecessor cycle is not negative");
  return NegativeCycleWitness{std::move(cycle), std::move(sum)};
}

inline std::vector<std::size_t> path(const PotentialTable& table, std::size_t from,
                                     std::size_t to) {
  std::vector<std::size_t> out{from};
  std::size_t cur = from;
  while (cur != to) {
    cur = table.next[cur][to];
    out.push_back(cur);
    if (out.size() > table.size()) throw InternalError("path reconstruction did not terminate");
  }
  return out;
}

}  // namespace detail

// All-pairs closure B[j][k] = min β-sum over index sequences j -> k, or a
// negative cycle witness when no potentials exist.
inline ClosureResult closure(const BetaMatrix& beta) {
  detail::check_beta(beta);
  const std::size_t n = beta.size();
  RationalMatrix B = beta.beta;
  std::vector<std::vector<std::size_t>> next(n, std::vector<std::size_t>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) next[j][k] = k;
  }
  bool negative = false;
  for (std::size_t m = 0; m < n && !negative; ++m) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == m) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == m) continue;
        Rational via = B[j][m] + B[m][k];
        if (via < B[j][k]) {
          B[j][k] = std::move(via);
          next[j][k] = next[j][m];
        }
      }
    }
    for (std::size_t j = 0; j < n; ++j) negative = negative || B[j][j] < 0;
  }
  if (negative) {
    auto witness = detail::find_negative_cycle(beta);
    if (!witness) throw InternalError("closure found a negative diagonal but no cycle");
    return *std::move(witness);
  }

  PotentialTable table;
  table.beta = beta;
  table.B = std::move(B);
  table.next = std::move(next);
  table.anchor = 0;
  table.alphas.resize(n);
  for (std::size_t j = 0; j < n; ++j) table.alphas[j] = table.B[j][table.anchor];
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      if (table.rigid(j, k)) table.rigid_pairs.emplace_back(j, k);
    }
  }
  table.globally_unique = table.rigid_pairs.size() == n * (n - 1) / 2 || n <= 1;
  return table;
}

// ε-relaxed rigidity: B[j][k] + B[k][j] < eps.
inline bool eps_rigid(const PotentialTable& table, std::size_t j, std::size_t k,
                      const Rational& eps) {
  return table.B[j][k] + table.B[k][j] < eps;
}

// Zero-sum cycle through j and k, when {j,k} is rigid. The concatenation of
// the two minimizing paths is returned when it is simple; otherwise a simple
// zero cycle is searched for among tight arcs. Some rigid pairs admit no
// simple zero cycle at all, and then the zero-sum closed walk is returned.
inline std::optional<std::vector<std::size_t>> rigid_chain(const PotentialTable& table,
                                                           std::size_t j, std::size_t k) {
  const std::size_t n = table.size();
  if (j >= n || k >= n) throw std::invalid_argument("pair index out of range");
  if (j == k) throw std::invalid_argument("rigid_chain needs two different pair indices");
  if (!table.rigid(j, k)) return std::nullopt;

  std::vector<std::size_t> walk = detail::path(table, j, k);
  const std::vector<std::size_t> back = detail::path(table, k, j);
  walk.insert(walk.end(), back.begin() + 1, back.end() - 1);
  auto sorted = walk;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) return walk;

  // Arc a -> b is tight when β[a][b] = α_a - α_b; zero cycles use only these.
  const auto tight = [&](std::size_t a, std::size_t b) {
    return a != b && table.beta(a, b) == table.alphas[a] - table.alphas[b];
  };
  std::vector<std::size_t> stack{j};
  std::vector<bool> used(n, false);
  used[j] = true;
  std::size_t budget = 1'000'000;
  std::optional<std::vector<std::size_t>> found;

  // Second leg: simple tight path from `from` back to j avoiding used vertices.
  const auto close_back = [&](std::size_t from) -> std::optional<std::vector<std::size_t>> {
    std::vector<std::size_t> parent(n, n);
    std::vector<std::size_t> queue{from};
    std::vector<bool> seen = used;
    seen[j] = false;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const std::size_t a = queue[qi];
      for (std::size_t b = 0; b < n; ++b) {
        if (seen[b] || !tight(a, b)) continue;
        seen[b] = true;
        parent[b] = a;
        if (b == j) {
          std::vector<std::size_t> leg;
          for (std::size_t c = parent[j]; c != from; c = parent[c]) leg.push_back(c);
          std::reverse(leg.begin(), leg.end());
          return leg;
        }
        queue.push_back(b);
      }
    }
    return std::nullopt;
  };

  const auto dfs = [&](auto&& self, std::size_t a) -> void {
    if (found || budget == 0) return;
    --budget;
    if (a == k) {
      if (auto leg = close_back(k)) {
        std::vector<std::size_t> cycle = stack;
        cycle.insert(cycle.end(), leg->begin(), leg->end());
        found = std::move(cycle);
      }
      return;
    }
    for (std::size_t b = 0; b < n && !found; ++b) {
      if (used[b] || !tight(a, b)) continue;
      used[b] = true;
      stack.push_back(b);
      self(self, b);
      stack.pop_back();
      used[b] = false;
    }
  };
  dfs(dfs, j);
  if (found) return found;
  return walk;
}

struct MonotonicityVerdict {
  bool holds = true;
  std::optional<NegativeCycleWitness> witness;
};

// Cyclical monotonicity of the pair family, i.e. absence of a negative β-cycle.
inline MonotonicityVerdict check_cyclical_monotonicity(const FiniteMetricSpace& space,
                                                       const PairList& pairs) {
  auto result = closure(beta_matrix(space, pairs));
  if (auto* w = std::get_if<NegativeCycleWitness>(&result)) {
    return MonotonicityVerdict{false, std::move(*w)};
  }
  return MonotonicityVerdict{};
}

}  // namespace lipfree
