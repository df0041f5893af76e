#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "lipfree/errors.hpp"
#include "lipfree/metric.hpp"
#include "lipfree/molecules.hpp"
#include "lipfree/norming.hpp"
#include "lipfree/rational.hpp"

namespace lipfree {

struct PlanLeg {
  std::size_t source;
  std::size_t sink;
  Rational mass;

  friend bool operator==(const PlanLeg&, const PlanLeg&) = default;
};

// Primal transport plan and dual 1-Lipschitz function with equal objective.
struct TransportCertificate {
  Rational value;
  std::vector<PlanLeg> plan;  // sorted by (source, sink)
  LipschitzFunction dual;     // dual.values[base] = 0
};

namespace detail {

// Node supplies: c_p off the base, and the base absorbs -Σ c.
inline std::vector<Rational> supplies(const FiniteMetricSpace& space,
                                      const PointMassElement& element) {
  std::vector<Rational> s(space.size(), Rational{0});
  Rational total{0};
  for (const auto& [p, c] : element.coeffs) {
    s[p] = c;
    total += c;
  }
  s[space.base()] -= total;
  return s;
}

}  // namespace detail

// Successive shortest paths on the complete residual graph with Dijkstra over
// reduced costs. Sources are the positive supplies, sinks the negative ones.
// Ties go to the smallest index, so the plan is deterministic.
inline TransportCertificate free_norm(const FiniteMetricSpace& space,
                                      const PointMassElement& element) {
  const std::size_t n = space.size();
  std::vector<Rational> excess = detail::supplies(space, element);
  std::vector<Rational> potential(n, Rational{0});
  RationalMatrix flow(n, std::vector<Rational>(n, Rational{0}));

  const auto residual_cost = [&](std::size_t u, std::size_t v) {
    // Cancelling flow on v -> u is cheaper than pushing new flow on u -> v.
    return flow[v][u] > 0 ? Rational{-space.d(u, v)} : space.d(u, v);
  };

  while (std::any_of(excess.begin(), excess.end(), [](const Rational& e) { return e > 0; })) {
    std::vector<Rational> dist(n);
    std::vector<bool> reached(n, false);
    std::vector<bool> done(n, false);
    std::vector<std::size_t> parent(n, n);
    for (std::size_t v = 0; v < n; ++v) {
      if (excess[v] > 0) {
        dist[v] = 0;
        reached[v] = true;
      }
    }
    for (std::size_t round = 0; round < n; ++round) {
      std::size_t u = n;
      for (std::size_t v = 0; v < n; ++v) {
        if (reached[v] && !done[v] && (u == n || dist[v] < dist[u])) u = v;
      }
      if (u == n) break;
      done[u] = true;
      for (std::size_t v = 0; v < n; ++v) {
        if (v == u || done[v]) continue;
        Rational cand = dist[u] + residual_cost(u, v) + potential[u] - potential[v];
        if (!reached[v] || cand < dist[v]) {
          dist[v] = std::move(cand);
          parent[v] = u;
          reached[v] = true;
        }
      }
    }

    std::size_t sink = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (excess[v] < 0 && (sink == n || dist[v] < dist[sink])) sink = v;
    }
    if (sink == n) throw InternalError("transport: positive excess with no sink left");

    std::vector<std::size_t> path{sink};
    while (parent[path.back()] != n) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    const std::size_t source = path.front();

    Rational amount = std::min(excess[source], Rational{-excess[sink]});
    for (std::size_t r = 0; r + 1 < path.size(); ++r) {
      const std::size_t u = path[r], v = path[r + 1];
      if (flow[v][u] > 0) amount = std::min(amount, flow[v][u]);
    }
    for (std::size_t r = 0; r + 1 < path.size(); ++r) {
      const std::size_t u = path[r], v = path[r + 1];
      if (flow[v][u] > 0) {
        flow[v][u] -= amount;
      } else {
        flow[u][v] += amount;
      }
    }
    excess[source] -= amount;
    excess[sink] += amount;
    for (std::size_t v = 0; v < n; ++v) potential[v] += dist[v];
  }

  TransportCertificate cert;
  cert.value = 0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (flow[u][v] > 0) {
        cert.value += flow[u][v] * space.d(u, v);
        cert.plan.push_back(PlanLeg{u, v, flow[u][v]});
      }
    }
  }
  // Reduced costs are nonnegative on every residual arc, so -potential is
  // 1-Lipschitz and tight along every leg of the plan.
  std::vector<Rational> dual(n);
  for (std::size_t v = 0; v < n; ++v) dual[v] = potential[space.base()] - potential[v];
  cert.dual = make_function(space, std::move(dual));
  return cert;
}

// Independent re-check of a certificate against the raw element. Returns a
// description of the first failure, or nullopt when it verifies.
inline std::optional<std::string> certificate_error(const FiniteMetricSpace& space,
                                                    const PointMassElement& element,
                                                    const TransportCertificate& cert) {
  const std::size_t n = space.size();
  std::vector<Rational> balance(n, Rational{0});
  Rational cost{0};
  for (const auto& leg : cert.plan) {
    if (leg.source >= n || leg.sink >= n || leg.source == leg.sink) return "plan leg out of range";
    if (leg.mass <= 0) return "plan leg with nonpositive mass";
    balance[leg.source] += leg.mass;
    balance[leg.sink] -= leg.mass;
    cost += leg.mass * space.d(leg.source, leg.sink);
  }
  if (balance != detail::supplies(space, element)) return "plan does not balance the element";
  if (cost != cert.value) return "plan cost differs from the reported value";
  if (cert.dual.values.size() != n) return "dual has the wrong number of values";
  if (cert.dual.values[space.base()] != 0) return "dual does not vanish at the base point";
  if (lipschitz_constant(space, cert.dual.values) > 1) return "dual is not 1-Lipschitz";
  if (evaluate(space, element, cert.dual.values) != cert.value) return "duality gap is nonzero";
  return std::nullopt;
}

// ‖Σ λ_i m_{x_i,y_i}‖ = Σ λ_i.
inline bool attains(const FiniteMetricSpace& space, const MoleculeSystem& system) {
  return free_norm(space, to_point_masses(space, system)).value == system.total_weight();
}

// Reads an optimal plan as a molecule system: leg (s, t, m) becomes the pair
// (s, t) with weight m * d(s, t). The result attains its norm.
inline MoleculeSystem decompose_to_molecules(const FiniteMetricSpace& space,
                                             const PointMassElement& element) {
  const TransportCertificate cert = free_norm(space, element);
  MoleculeSystem out;
  for (const auto& leg : cert.plan) {
    out.pairs.push_back(Pair{leg.source, leg.sink});
    out.weights.push_back(leg.mass * space.d(leg.source, leg.sink));
  }
  return out;
}

}  // namespace lipfree
