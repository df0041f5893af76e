// lipfree: command-line front end. Reads JSON documents, prints a canonical
// JSON report, and exits with
//   0  positive verdict / success
//   1  negative verdict
//   2  input error (bad flags, unreadable or invalid documents, size limits)
//   3  a certificate failed self-verification or an oracle disagreed

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "lipfree/certify.hpp"
#include "lipfree/json_io.hpp"
#include "lipfree/lipfree.hpp"

namespace {

using lipfree::io::json;
using namespace lipfree;

constexpr int kOk = 0, kNegative = 1, kInputError = 2, kMismatch = 3;

// A certificate failed its own re-check; never printed as a result.
struct MismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string space_path, system_path, element_path, function_path;
  std::string eps_text;
  bool oracle = false;
  std::string format = "json";
  std::string kind, profile = "generic";
  std::size_t size = 0;
  std::uint64_t seed = 0;
};

std::size_t max_points() {
  const char* env = std::getenv("LIPFREE_MAX_POINTS");
  if (!env || !*env) return 512;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw InputError(std::string("LIPFREE_MAX_POINTS is not a number: '") + env + "'");
  }
}

void check_size(std::size_t points) {
  const std::size_t cap = max_points();
  if (points > cap) {
    throw ResourceLimitError("instance has " + std::to_string(points) +
                             " points, above LIPFREE_MAX_POINTS = " + std::to_string(cap));
  }
}

json read_json(const std::string& path, const char* what) {
  if (path.empty()) throw InputError(std::string("missing --") + what);
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + std::string(what) + " file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

FiniteMetricSpace load_space(const RunConfig& o) {
  RawSpace raw = io::raw_space_from_json(read_json(o.space_path, "space"));
  check_size(raw.labels.size());
  return FiniteMetricSpace::from_raw(std::move(raw));
}

MoleculeSystem load_system(const RunConfig& o, const FiniteMetricSpace& space,
                           bool weights_required = true) {
  return io::system_from_json(read_json(o.system_path, "system"), space, weights_required);
}

Rational load_eps(const RunConfig& o) {
  if (o.eps_text.empty()) throw InputError("missing --eps");
  const Rational eps = parse_rational(o.eps_text);
  if (eps <= 0) throw InputError("--eps must be positive");
  return eps;
}

void require(const CertError& e, const char* what) {
  if (e) throw MismatchError(std::string(what) + ": " + *e);
}

void oracle_check(bool agree, const std::string& what) {
  if (!agree) throw MismatchError("oracle disagreement: " + what);
}

// Element from --element, or the point-mass form of --system.
PointMassElement load_element(const RunConfig& o, const FiniteMetricSpace& space) {
  if (!o.element_path.empty()) {
    return io::element_from_json(read_json(o.element_path, "element"), space);
  }
  if (!o.system_path.empty()) return to_point_masses(space, load_system(o, space));
  throw InputError("missing --element (or --system)");
}

TransportCertificate verified_norm(const FiniteMetricSpace& space, const PointMassElement& e) {
  TransportCertificate c = free_norm(space, e);
  require(certificate_error(space, e, c), "transport certificate");
  return c;
}

// ---------------------------------------------------------------- commands

int cmd_validate(const RunConfig& o, json& out) {
  const RawSpace raw = io::raw_space_from_json(read_json(o.space_path, "space"));
  check_size(raw.labels.size());
  const ValidationReport report = validate_space(raw);
  out = io::to_json(report, raw.labels);
  return report.ok ? kOk : kNegative;
}

int cmd_norm(const RunConfig& o, json& out) {
  const auto space = load_space(o);
  const auto element = load_element(o, space);
  const auto cert = verified_norm(space, element);
  out = io::to_json(space, cert);
  if (o.oracle) {
    const Rational brute = oracles::brute_dual_norm(space, element);
    oracle_check(brute == cert.value,
                 "dual enumeration gives " + to_string(brute) + ", flow gives " + to_string(cert.value));
    out["oracle"] = "agree";
  }
  return kOk;
}

json witness_json(const FiniteMetricSpace& space, const PairList& pairs,
                  const NegativeCycleWitness& w) {
  require(witness_error(space, pairs, w), "negative cycle witness");
  return io::to_json(space, pairs, w);
}

int cmd_attains(const RunConfig& o, json& out) {
  const auto space = load_space(o);
  const auto system = load_system(o, space);
  const auto element = to_point_masses(space, system);
  const auto cert = verified_norm(space, element);
  const auto mono = check_cyclical_monotonicity(space, system.pairs);
  const bool attained = cert.value == system.total_weight();
  if (attained != mono.holds) {
    throw MismatchError("norm comparison and cyclical monotonicity disagree");
  }
  out = json{{"attains", attained},
             {"norm", io::to_json(cert.value)},
             {"total_weight", io::to_json(system.total_weight())}};
  if (mono.witness) out["witness"] = witness_json(space, system.pairs, *mono.witness);
  if (o.oracle) {
    const bool brute = oracles::brute_cycles(beta_matrix(space, system.pairs)).min_sum >= 0;
    oracle_check(brute == attained, "cycle enumeration verdict differs");
    oracle_check(oracles::brute_dual_norm(space, element) == cert.value, "norm differs");
    out["oracle"] = "agree";
  }
  return attained ? kOk : kNegative;
}

int cmd_decompose(const RunConfig& o, json& out) {
  const auto space = load_space(o);
  const auto element = load_element(o, space);
  const auto cert = verified_norm(space, element);
  const auto system = decompose_to_molecules(space, element);
  if (to_point_masses(space, system) != element || system.total_weight() != cert.value ||
      !check_cyclical_monotonicity(space, system.pairs).holds) {
    throw MismatchError("decomposition does not reproduce the element at its norm");
  }
  out = io::to_json(space, system);
  out["total_weight"] = io::to_json(system.total_weight());
  if (o.oracle) {
    oracle_check(oracles::brute_dual_norm(space, element) == cert.value, "norm differs");
    out["oracle"] = "agree";
  }
  return kOk;
}

int cmd_potentials(const RunConfig& o, json& out) {
  const auto space = load_space(o);
  const auto system = load_system(o, space, false);
  const auto beta = beta_matrix(space, system.pairs);
  const auto result = closure(beta);
  if (o.oracle && beta.size() > oracles::kMaxCycleMatrix) {
    throw ResourceLimitError("--oracle supports at most " +
                             std::to_string(oracles::kMaxCycleMatrix) + " pairs");
  }
  if (const auto* w = std::get_if<NegativeCycleWitness>(&result)) {
    out = json{{"witness", witness_json(space, system.pairs, *w)}};
    if (o.oracle) {
      oracle_check(oracles::brute_cycles(beta).min_sum < 0, "cycle enumeration finds no negative cycle");
      out["oracle"] = "agree";
    }
    return kNegative;
  }
  const auto& table = std::get<PotentialTable>(result);
  require(table_error(table), "potential table");
  out = io::to_json(table);
  if (o.oracle) {
    oracle_check(oracles::brute_cycles(beta).min_sum >= 0, "cycle enumeration finds a negative cycle");
    for (std::size_t j = 0; j < table.size(); ++j) {
      for (std::size_t k = 0; k < table.size(); ++k) {
        oracle_check(oracles::brute_min_path(beta, j, k) == table.B[j][k],
                     "closure entry (" + std::to_string(j) + "," + std::to_string(k) + ")");
      }
    }
    out["oracle"] = "agree";
  }
  return kOk;
}

int cmd_norming(const RunConfig& o, json& out) {
  const auto space = load_space(o);
  const auto system = load_system(o, space, false);
  if (!o.function_path.empty()) {
    const auto f = io::function_from_json(read_json(o.function_path, "function"), space);
    const bool ok = verify_norming(space, system, f);
    out = json{{"norming", ok}, {"lip", io::to_json(f.lip)}};
    return ok ? kOk : kNegative;
  }
  const auto result = closure(beta_matrix(space, system.pairs));
  if (const auto* w = std::get_if<NegativeCycleWitness>(&result)) {
    out = json{{"witness", witness_json(space, system.pairs, *w)}};
    return kNegative;
  }
  const auto& table = std::get<PotentialTable>(result);
  require(table_error(table), "potential table");
  const auto on_n = build_on_N(space, system.pairs, table);
  const auto upper = extend_upper(space, on_n);
  const auto lower = extend_lower(space, on_n);
  require(norming_error(space, system.pairs, upper.base_pinned ? upper : detail::pinned(space, upper)),
          "upper extension");
  require(norming_error(space, system.pairs, lower.base_pinned ? lower : detail::pinned(space, lower)),
          "lower extension");
  out = json{{"on_N", io::to_json(space, on_n)},
             {"extension_upper", io::to_json(space, upper)},
             {"extension_lower", io::to_json(space, lower)}};
  return kOk;
}

int cmd_gateaux_eps(const RunConfig& o, json& out) {
  const auto space = load_space(o);
  const auto system = load_system(o, space);
  const auto eps = load_eps(o);
  const auto report = check_gateaux_eps(space, system, eps);
  out = io::to_json(space, report);
  out["eps"] = io::to_json(eps);
  return report.empty() ? kOk : kNegative;
}

int cmd_decide(const RunConfig& o, json& out) {
  const auto space = load_space(o);
  const auto system = load_system(o, space);
  const auto verdict = decide(space, system);
  require(verdict_error(space, system, verdict), "differentiability verdict");
  out = io::to_json(space, system, verdict);
  if (o.oracle) {
    const bool unique = oracles::brute_norming_uniqueness(space, system);
    oracle_check(unique == (verdict.kind == DiffKind::Frechet),
                 std::string("dual enumeration says the norming function is ") +
                     (unique ? "unique" : "not unique"));
    out["oracle"] = "agree";
  }
  return verdict.kind == DiffKind::Frechet ? kOk : kNegative;
}

int cmd_coverage_prefix(const RunConfig& o, json& out) {
  const auto space = load_space(o);
  const auto system = load_system(o, space);
  const auto eps = load_eps(o);
  const auto n = coverage_eps_prefix(space, system, eps);
  out = json{{"eps", io::to_json(eps)}, {"prefix", n ? json(*n) : json(nullptr)}};
  return n ? kOk : kNegative;
}

int cmd_l1_check(const RunConfig& o, json& out) {
  const auto space = load_space(o);
  const auto system = load_system(o, space, false);
  const auto v = l1_basis_check(space, system.pairs);
  require(l1_verdict_error(space, system.pairs, v), "l1 verdict");
  out = json{{"isometric_l1", v.isometric}};
  if (!v.isometric) {
    PairList oriented = system.pairs;
    json orientation = json::array();
    for (std::size_t i = 0; i < oriented.size(); ++i) {
      if (v.pattern[i]) std::swap(oriented[i].x, oriented[i].y);
      orientation.push_back(io::pair_json(space, oriented[i]));
    }
    out["orientation"] = orientation;
    out["witness"] = witness_json(space, oriented, *v.witness);
  }
  if (o.oracle) {
    const std::size_t n = system.size();
    if (n > oracles::kMaxCycleMatrix) {
      throw ResourceLimitError("--oracle supports at most " +
                               std::to_string(oracles::kMaxCycleMatrix) + " pairs");
    }
    bool all = true;
    for (std::size_t code = 0; n > 0 && code < (std::size_t{1} << (n - 1)) && all; ++code) {
      PairList oriented = system.pairs;
      for (std::size_t i = 1; i < n; ++i) {
        if ((code >> (i - 1)) & 1U) std::swap(oriented[i].x, oriented[i].y);
      }
      all = oracles::brute_cycles(beta_matrix(space, oriented)).min_sum >= 0;
    }
    oracle_check(all == v.isometric, "orientation enumeration differs");
    out["oracle"] = "agree";
  }
  return v.isometric ? kOk : kNegative;
}

int cmd_gen(const RunConfig& o, json& out) {
  GeneratorSpec spec;
  spec.kind = o.kind == "star"            ? GeneratorKind::star
              : o.kind == "c0_truncation" ? GeneratorKind::c0_truncation
              : o.kind == "line"          ? GeneratorKind::line
                                          : GeneratorKind::random;
  spec.size = o.size;
  spec.seed = o.seed;
  spec.profile = o.profile == "generic" ? RandomProfile::generic : RandomProfile::near_degenerate;
  check_size(generated_points(spec));
  const FiniteMetricSpace space = generate(spec);
  if (!validate_space(space.to_raw()).ok) throw MismatchError("generated space is not a metric");
  out = io::to_json(space);
  return kOk;
}

int cmd_stability(const RunConfig& o, json& out) {
  const auto space = load_space(o);
  const auto system = load_system(o, space);
  const auto bound = stability_bound(space, system);
  out = io::to_json(bound);
  if (o.function_path.empty()) return kOk;

  const auto eps = load_eps(o);
  const auto g = io::function_from_json(read_json(o.function_path, "function"), space);
  const auto verdict = decide(space, system);
  require(verdict_error(space, system, verdict), "differentiability verdict");
  if (verdict.kind != DiffKind::Frechet) {
    throw InputError("the stability estimate needs a Frechet verdict, got NotGateaux");
  }
  const auto c = verify_stability(space, system, verdict, g, eps);
  out["eps"] = io::to_json(eps);
  out["hypothesis"] = c.hypothesis;
  out["conclusion"] = c.conclusion;
  out["g_value"] = io::to_json(c.g_value);
  out["sup_distance"] = io::to_json(c.sup_distance);
  out["bound"] = io::to_json(c.bound);
  out["holds"] = c.holds();
  return c.holds() ? kOk : kNegative;
}

// "key: value" lines; nested values stay compact JSON.
std::string render_text(const json& out) {
  std::ostringstream s;
  for (const auto& [key, value] : out.items()) {
    s << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Lipschitz-free space computations on finite metric spaces", "lipfree"};
  app.require_subcommand(1);
  RunConfig o;

  const auto add = [&](const char* name, const char* help, bool system, bool element, bool eps,
                       bool function) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--space", o.space_path, "space document")->required();
    if (system) sub->add_option("--system", o.system_path, "molecule system document");
    if (element) sub->add_option("--element", o.element_path, "point-mass element document");
    if (eps) sub->add_option("--eps", o.eps_text, "positive rational, e.g. 1/8");
    if (function) sub->add_option("--function", o.function_path, "Lipschitz function document");
    sub->add_flag("--oracle", o.oracle, "cross-check against brute-force enumeration");
    sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    return sub;
  };
  add("validate", "check the metric axioms", false, false, false, false);
  add("norm", "free-space norm with transport certificate", true, true, false, false);
  add("attains", "does the molecule system attain its norm", true, false, false, false);
  add("decompose", "optimal molecule decomposition of an element", true, true, false, false);
  add("potentials", "closure and potentials of the pair family", true, false, false, false);
  add("norming", "norming function and its extreme extensions", true, false, false, true);
  add("gateaux-eps", "approximate differentiability conditions", true, false, true, false);
  add("decide", "differentiability of the norm at the system", true, false, false, false);
  add("coverage-prefix", "shortest prefix that eps-covers the space", true, false, true, false);
  add("l1-check", "isometric l1-basis test of the molecules", true, false, false, false);
  add("stability", "stability constant and optional check of g", true, false, true, true);

  CLI::App* gen = app.add_subcommand("gen", "generate a space document");
  gen->add_option("--kind", o.kind, "star, c0_truncation, line or random")
      ->required()
      ->check(CLI::IsMember({"star", "c0_truncation", "line", "random"}));
  gen->add_option("--size", o.size, "k for star/c0_truncation, point count otherwise")->required();
  gen->add_option("--seed", o.seed, "random seed");
  gen->add_option("--profile", o.profile, "generic or near_degenerate")
      ->check(CLI::IsMember({"generic", "near_degenerate"}));
  gen->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "lipfree: " << e.what() << "\n\n" << app.help();
    return kInputError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  json out;
  int code = kOk;
  try {
    if (command == "validate") code = cmd_validate(o, out);
    else if (command == "norm") code = cmd_norm(o, out);
    else if (command == "attains") code = cmd_attains(o, out);
    else if (command == "decompose") code = cmd_decompose(o, out);
    else if (command == "potentials") code = cmd_potentials(o, out);
    else if (command == "norming") code = cmd_norming(o, out);
    else if (command == "gateaux-eps") code = cmd_gateaux_eps(o, out);
    else if (command == "decide") code = cmd_decide(o, out);
    else if (command == "coverage-prefix") code = cmd_coverage_prefix(o, out);
    else if (command == "l1-check") code = cmd_l1_check(o, out);
    else if (command == "gen") code = cmd_gen(o, out);
    else if (command == "stability") code = cmd_stability(o, out);
  } catch (const MismatchError& e) {
    std::cerr << "lipfree: " << e.what() << '\n';
    return kMismatch;
  } catch (const InternalError& e) {
    std::cerr << "lipfree: internal error: " << e.what() << '\n';
    return kMismatch;
  } catch (const std::exception& e) {
    // InputError, ResourceLimitError, NotAttainingError and invalid arguments
    std::cerr << "lipfree: " << e.what() << '\n';
    return kInputError;
  }

  if (o.format == "text") {
    std::cout << render_text(out);
  } else {
    std::cout << out.dump(2) << '\n';
  }
  return code;
}
