#pragma once

// JSON documents for spaces, systems, elements and functions, and the
// canonical rendering of every report. Rationals travel as integers or "p/q"
// strings on input and always as canonical strings on output.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "lipfree/certify.hpp"
#include "lipfree/differentiability.hpp"
#include "lipfree/errors.hpp"
#include "lipfree/metric.hpp"
#include "lipfree/molecules.hpp"
#include "lipfree/norming.hpp"
#include "lipfree/potentials.hpp"
#include "lipfree/rational.hpp"
#include "lipfree/transport.hpp"

namespace lipfree::io {

using json = nlohmann::json;

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational{j.get<long long>()};
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InputError("expected an integer or a \"p/q\" string, got " + j.dump());
}

inline json to_json(const Rational& r) { return to_string(r); }

namespace detail {

inline const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw InputError(std::string("document is missing \"") + key + "\"");
  }
  return doc.at(key);
}

inline std::size_t resolve(const FiniteMetricSpace& space, const json& label) {
  if (!label.is_string()) throw InputError("point labels must be strings, got " + label.dump());
  const auto idx = space.index_of(label.get<std::string>());
  if (!idx) throw InputError("unknown point label '" + label.get<std::string>() + "'");
  return *idx;
}

}  // namespace detail

inline RawSpace raw_space_from_json(const json& doc) {
  RawSpace raw;
  const json& labels = detail::field(doc, "labels");
  if (!labels.is_array()) throw InputError("\"labels\" must be an array");
  for (const auto& l : labels) {
    if (!l.is_string()) throw InputError("point labels must be strings, got " + l.dump());
    raw.labels.push_back(l.get<std::string>());
  }
  const json& base = detail::field(doc, "base");
  if (!base.is_string()) throw InputError("\"base\" must be a label string");
  raw.base_label = base.get<std::string>();
  const json& dist = detail::field(doc, "dist");
  if (!dist.is_array()) throw InputError("\"dist\" must be an array of rows");
  for (const auto& row : dist) {
    if (!row.is_array()) throw InputError("\"dist\" rows must be arrays");
    std::vector<Rational> r;
    for (const auto& e : row) r.push_back(rational_from_json(e));
    raw.dist.push_back(std::move(r));
  }
  return raw;
}

inline FiniteMetricSpace space_from_json(const json& doc) {
  return FiniteMetricSpace::from_raw(raw_space_from_json(doc));
}

// Weights may be omitted for commands that only look at the pairs; every pair
// then gets weight 1.
inline MoleculeSystem system_from_json(const json& doc, const FiniteMetricSpace& space,
                                       bool weights_required = true) {
  const json& pairs = detail::field(doc, "pairs");
  if (!pairs.is_array()) throw InputError("\"pairs\" must be an array");
  PairList list;
  for (const auto& p : pairs) {
    if (!p.is_array() || p.size() != 2) throw InputError("each pair must be [label, label]");
    list.push_back(Pair{detail::resolve(space, p[0]), detail::resolve(space, p[1])});
  }
  std::vector<Rational> weights;
  if (doc.contains("weights")) {
    const json& w = doc.at("weights");
    if (!w.is_array()) throw InputError("\"weights\" must be an array");
    for (const auto& e : w) weights.push_back(rational_from_json(e));
  } else if (weights_required) {
    throw InputError("document is missing \"weights\"");
  } else {
    weights.assign(list.size(), Rational{1});
  }
  if (weights.size() != list.size()) {
    throw InputError("got " + std::to_string(weights.size()) + " weights for " +
                     std::to_string(list.size()) + " pairs");
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0) throw InputError("weight " + std::to_string(i) + " must be positive");
    if (list[i].x == list[i].y) {
      throw InputError("pair " + std::to_string(i) + " repeats the point '" +
                       space.label(list[i].x) + "'");
    }
  }
  return make_system(space, std::move(list), std::move(weights));
}

inline PointMassElement element_from_json(const json& doc, const FiniteMetricSpace& space) {
  const json& coeffs = detail::field(doc, "coeffs");
  if (!coeffs.is_object()) throw InputError("\"coeffs\" must be an object keyed by label");
  std::map<std::size_t, Rational> c;
  for (const auto& [label, value] : coeffs.items()) {
    c[detail::resolve(space, json(label))] += rational_from_json(value);
  }
  return make_element(space, c);
}

// {"values": {"label": "p/q", ...}, "lip": ...}; the Lipschitz constant is
// recomputed, and a stated "lip" must match it.
inline LipschitzFunction function_from_json(const json& doc, const FiniteMetricSpace& space) {
  const json& values = detail::field(doc, "values");
  if (!values.is_object()) throw InputError("\"values\" must be an object keyed by label");
  std::vector<std::optional<Rational>> v(space.size());
  for (const auto& [label, value] : values.items()) {
    v[detail::resolve(space, json(label))] = rational_from_json(value);
  }
  std::vector<Rational> out;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (!v[i]) throw InputError("function has no value at '" + space.label(i) + "'");
    out.push_back(*v[i]);
  }
  LipschitzFunction f = make_function(space, std::move(out));
  if (doc.contains("lip") && rational_from_json(doc.at("lip")) != f.lip) {
    throw InputError("stated \"lip\" " + doc.at("lip").dump() + " differs from the computed " +
                     to_string(f.lip));
  }
  return f;
}

// ---------------------------------------------------------------- rendering

inline json to_json(const FiniteMetricSpace& space) {
  json dist = json::array();
  for (const auto& row : space.matrix()) {
    json r = json::array();
    for (const auto& e : row) r.push_back(to_json(e));
    dist.push_back(std::move(r));
  }
  return json{{"labels", space.labels()}, {"base", space.label(space.base())}, {"dist", dist}};
}

inline json to_json(const ValidationReport& report, const std::vector<std::string>& labels) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    json at = json::array();
    for (std::size_t i : v.indices) at.push_back(labels[i]);
    violations.push_back(json{{"kind", to_string(v.kind)}, {"at", at}});
  }
  return json{{"ok", report.ok},
              {"violations", violations},
              {"truncated", report.truncated},
              {"theta", to_json(report.theta)},
              {"diameter", to_json(report.diameter)}};
}

inline json pair_json(const FiniteMetricSpace& space, const Pair& p) {
  return json::array({space.label(p.x), space.label(p.y)});
}

inline json to_json(const FiniteMetricSpace& space, const MoleculeSystem& system) {
  json pairs = json::array(), weights = json::array();
  for (std::size_t i = 0; i < system.size(); ++i) {
    pairs.push_back(pair_json(space, system.pairs[i]));
    weights.push_back(to_json(system.weights[i]));
  }
  return json{{"pairs", pairs}, {"weights", weights}};
}

inline json to_json(const FiniteMetricSpace& space, const LipschitzFunction& f) {
  json values = json::object();
  for (std::size_t i = 0; i < space.size(); ++i) values[space.label(i)] = to_json(f.values[i]);
  return json{{"values", values}, {"lip", to_json(f.lip)}};
}

inline json to_json(const FiniteMetricSpace& space, const PartialFunction& f) {
  json values = json::object();
  for (const auto& [p, v] : f.values) values[space.label(p)] = to_json(v);
  return json{{"values", values}, {"base_pinned", f.base_pinned}};
}

// "d(a,0) + d(0,b) = 3 > 2 = d(a,b) + d(0,0)": the aligned distances of the
// cycle exceed the shifted ones.
inline std::string render_violated_inequality(const FiniteMetricSpace& space, const PairList& pairs,
                                              const NegativeCycleWitness& w) {
  std::string lhs, rhs;
  Rational aligned{0}, cross{0};
  for (std::size_t r = 0; r < w.cycle.size(); ++r) {
    const Pair& cur = pairs[w.cycle[r]];
    const Pair& nxt = pairs[w.cycle[(r + 1) % w.cycle.size()]];
    const std::string sep = r == 0 ? "" : " + ";
    lhs += sep + "d(" + space.label(cur.x) + "," + space.label(cur.y) + ")";
    rhs += sep + "d(" + space.label(cur.x) + "," + space.label(nxt.y) + ")";
    aligned += space.d(cur.x, cur.y);
    cross += space.d(cur.x, nxt.y);
  }
  return lhs + " = " + to_string(aligned) + " > " + to_string(cross) + " = " + rhs;
}

inline json to_json(const FiniteMetricSpace& space, const PairList& pairs,
                    const NegativeCycleWitness& w) {
  json cycle = json::array(), cycle_pairs = json::array();
  for (std::size_t i : w.cycle) {
    cycle.push_back(i);
    cycle_pairs.push_back(pair_json(space, pairs[i]));
  }
  return json{{"cycle", cycle},
              {"pairs", cycle_pairs},
              {"sum", to_json(w.sum)},
              {"inequality", render_violated_inequality(space, pairs, w)}};
}

inline json to_json(const PotentialTable& t) {
  json B = json::array();
  for (const auto& row : t.B) {
    json r = json::array();
    for (const auto& e : row) r.push_back(to_json(e));
    B.push_back(std::move(r));
  }
  json alphas = json::array();
  for (const auto& a : t.alphas) alphas.push_back(to_json(a));
  json rigid = json::array();
  for (const auto& [j, k] : t.rigid_pairs) rigid.push_back(json::array({j, k}));
  return json{{"B", B},
              {"alphas", alphas},
              {"anchor", t.anchor},
              {"globally_unique", t.globally_unique},
              {"rigid_pairs", rigid}};
}

inline json to_json(const FiniteMetricSpace& space, const TransportCertificate& c) {
  json plan = json::array();
  for (const auto& leg : c.plan) {
    plan.push_back(json::array({space.label(leg.source), space.label(leg.sink), to_json(leg.mass)}));
  }
  return json{{"value", to_json(c.value)}, {"plan", plan}, {"dual", to_json(space, c.dual)}};
}

inline json to_json(const FiniteMetricSpace& space, const MoleculeSystem& system,
                    const DiffVerdict& v) {
  json out{{"kind", to_string(v.kind)}};
  if (v.norming) out["norming"] = to_json(space, *v.norming);
  if (v.kind == DiffKind::Frechet) {
    json cov = json::object();
    for (const auto& [x, w] : v.coverage) {
      cov[space.label(x)] = json::array({space.label(w.s), space.label(w.t)});
    }
    out["coverage"] = cov;
  }
  if (const auto* na = std::get_if<NotAttaining>(&v.failure)) {
    out["failure"] = json{{"type", "NotAttaining"},
                          {"witness", to_json(space, system.pairs, na->witness)}};
  } else if (const auto* nu = std::get_if<NonUniqueOnN>(&v.failure)) {
    out["failure"] = json{{"type", "NonUniqueOnN"}, {"pairs", json::array({nu->j, nu->k})}};
  } else if (const auto* un = std::get_if<Uncovered>(&v.failure)) {
    out["failure"] = json{{"type", "Uncovered"}, {"point", space.label(un->point)}};
  }
  if (v.upper) out["extension_upper"] = to_json(space, *v.upper);
  if (v.lower) out["extension_lower"] = to_json(space, *v.lower);
  if (v.alternatives) {
    out["alternatives"] = json::array({to_json(space, v.alternatives->first),
                                       to_json(space, v.alternatives->second)});
  }
  return out;
}

inline json to_json(const FiniteMetricSpace& space, const GateauxEpsReport& r) {
  json cond_i = json::array(), cond_ii = json::array();
  for (const auto& [j, k] : r.cond_i) cond_i.push_back(json::array({j, k}));
  for (const auto& [x, w] : r.cond_ii) {
    cond_ii.push_back(json{{"point", space.label(x)},
                           {"s", space.label(w.s)},
                           {"t", space.label(w.t)},
                           {"slack", to_json(w.slack)}});
  }
  return json{{"cond_i", cond_i}, {"cond_ii", cond_ii}};
}

inline json to_json(const StabilityBound& b) {
  return json{{"theta", to_json(b.theta)},
              {"D", to_json(b.diameter)},
              {"n", b.n},
              {"K", to_json(b.K)}};
}

}  // namespace lipfree::io
