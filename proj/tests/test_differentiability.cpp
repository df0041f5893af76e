#include <gtest/gtest.h>

#include <random>

#include "lipfree/certify.hpp"
#include "lipfree/lipfree.hpp"
#include "test_support.hpp"

using namespace lipfree;
using namespace lipfree::testing;

namespace {

MoleculeSystem to_base(const FiniteMetricSpace& space, std::size_t k) {
  PairList pairs;
  for (std::size_t n = 1; n <= k; ++n) pairs.push_back(Pair{n, space.base()});
  return make_system(space, std::move(pairs), geometric_weights(k));
}

}  // namespace

TEST(Decide, StarIsFrechet) {
  const auto star = gen_star(5);
  const auto sys = to_base(star, 5);
  const auto v = decide(star, sys);
  ASSERT_EQ(v.kind, DiffKind::Frechet);
  EXPECT_EQ(v.norming->values, to_vec({q(0), q(1), q(1), q(1), q(1), q(1)}));
  EXPECT_EQ(v.coverage.size(), 6u);
  EXPECT_EQ(v.coverage.at(3), (CoverWitness{0, 3}));
  EXPECT_FALSE(verdict_error(star, sys, v));
}

TEST(Decide, ThreePointUncovered) {
  const auto tri = tri_space();
  const auto sys = make_system(tri, {{A, O}}, {q(1)});
  const auto v = decide(tri, sys);
  EXPECT_EQ(v.kind, DiffKind::NotGateaux);
  ASSERT_TRUE(std::holds_alternative<Uncovered>(v.failure));
  EXPECT_EQ(std::get<Uncovered>(v.failure).point, B);
  EXPECT_EQ(v.upper->values[B], 1);
  EXPECT_EQ(v.lower->values[B], 0);
  EXPECT_FALSE(verdict_error(tri, sys, v));
  EXPECT_FALSE(oracles::brute_norming_uniqueness(tri, sys));
}

TEST(Decide, C0TruncationNormedByDistanceToBase) {
  const auto c0 = gen_c0_truncation(4);
  const auto sys = to_base(c0, 4);
  const auto v = decide(c0, sys);
  ASSERT_EQ(v.kind, DiffKind::Frechet);
  for (std::size_t p = 0; p < c0.size(); ++p) EXPECT_EQ(v.norming->values[p], c0.d(p, 0));
  EXPECT_FALSE(verdict_error(c0, sys, v));
}

TEST(Decide, NegativeCycleIsNotAttaining) {
  const auto tri = tri_space();
  const auto sys = make_system(tri, {{A, O}, {O, B}}, {q(1, 2), q(1, 2)});
  const auto v = decide(tri, sys);
  ASSERT_TRUE(std::holds_alternative<NotAttaining>(v.failure));
  EXPECT_EQ(std::get<NotAttaining>(v.failure).witness.sum, -1);
  EXPECT_FALSE(verdict_error(tri, sys, v));
}

TEST(Decide, NonRigidPairsAreNonUnique) {
  const auto line = gen_line(4);
  const auto sys = make_system(line, {{1, 0}, {3, 2}}, {q(1, 2), q(1, 2)});
  const auto v = decide(line, sys);
  ASSERT_TRUE(std::holds_alternative<NonUniqueOnN>(v.failure));
  EXPECT_EQ(std::get<NonUniqueOnN>(v.failure).j, 0u);
  EXPECT_EQ(std::get<NonUniqueOnN>(v.failure).k, 1u);
  ASSERT_TRUE(v.alternatives);
  EXPECT_NE(v.alternatives->first.values, v.alternatives->second.values);
  EXPECT_FALSE(verdict_error(line, sys, v));
  EXPECT_FALSE(oracles::brute_norming_uniqueness(line, sys));
}

TEST(Decide, RejectsUnnormalizedSystems) {
  const auto tri = tri_space();
  EXPECT_THROW(decide(tri, make_system(tri, {{A, O}}, {q(1, 2)})), std::invalid_argument);
  EXPECT_THROW(decide(tri, MoleculeSystem{}), std::invalid_argument);
}

TEST(GateauxEps, Examples) {
  const auto star = gen_star(5);
  for (const Rational& eps : {q(1), q(1, 2), q(1, 64)}) {
    EXPECT_TRUE(check_gateaux_eps(star, to_base(star, 5), eps).empty());
  }
  const auto tri = tri_space();
  const auto sys = make_system(tri, {{A, O}}, {q(1)});
  const auto half = check_gateaux_eps(tri, sys, q(1, 2));
  EXPECT_TRUE(half.cond_i.empty());
  ASSERT_EQ(half.cond_ii.size(), 1u);
  EXPECT_EQ(half.cond_ii[0].first, B);
  EXPECT_EQ(half.cond_ii[0].second.slack, 1);
  EXPECT_TRUE(check_gateaux_eps(tri, sys, q(2)).empty());
  EXPECT_THROW(check_gateaux_eps(tri, sys, q(0)), std::invalid_argument);
  EXPECT_THROW(check_gateaux_eps(tri, make_system(tri, {{A, O}, {O, B}}, {q(1, 2), q(1, 2)}), q(1)),
               NotAttainingError);
}

TEST(GateauxEps, NonRigidPairFailsConditionOne) {
  const auto line = gen_line(4);
  const auto sys = make_system(line, {{1, 0}, {3, 2}}, {q(1, 2), q(1, 2)});
  // B[0][1] + B[1][0] = 0 + 2
  EXPECT_EQ(check_gateaux_eps(line, sys, q(2)).cond_i.size(), 1u);
  EXPECT_TRUE(check_gateaux_eps(line, sys, q(5, 2)).cond_i.empty());
}

TEST(CoveragePrefix, Examples) {
  const auto star = gen_star(5);
  EXPECT_EQ(coverage_eps_prefix(star, to_base(star, 5), q(1, 2)), 5u);
  EXPECT_EQ(coverage_eps_prefix(star, to_base(star, 5), q(5)), 1u);
  const auto c0 = gen_c0_truncation(6);
  EXPECT_EQ(coverage_eps_prefix(c0, to_base(c0, 6), q(1)), 1u);
  // excess of x_n over [x_1, 0] is 2^(1-n), so x_2 forces n >= 2 below 1/2
  EXPECT_EQ(coverage_eps_prefix(c0, to_base(c0, 6), q(1, 2)), 2u);
  const auto tri = tri_space();
  EXPECT_EQ(coverage_eps_prefix(tri, make_system(tri, {{A, O}}, {q(1)}), q(1, 2)), std::nullopt);
  EXPECT_THROW(coverage_eps_prefix(tri, make_system(tri, {{A, O}}, {q(1)}), q(-1)),
               std::invalid_argument);
}

TEST(L1Check, Examples) {
  const auto star = gen_star(8);
  EXPECT_TRUE(l1_basis_check(star, to_base(star, 8).pairs).isometric);
  const auto line = gen_line(3);
  const auto v = l1_basis_check(line, {{1, 0}, {2, 0}});
  ASSERT_FALSE(v.isometric);
  EXPECT_EQ(v.pattern, (std::vector<bool>{false, true}));
  EXPECT_FALSE(l1_verdict_error(line, {{1, 0}, {2, 0}}, v));
  EXPECT_TRUE(l1_basis_check(line, {{2, 1}}).isometric);
  const auto big = gen_star(21);
  EXPECT_THROW(l1_basis_check(big, to_base(big, 21).pairs), ResourceLimitError);
  const auto small = gen_star(6);
  EXPECT_THROW(l1_basis_check(small, to_base(small, 6).pairs, 5), ResourceLimitError);
}

TEST(Stability, Bound) {
  const auto star = gen_star(3);
  const auto b = stability_bound(star, to_base(star, 3));
  EXPECT_EQ(b.theta, 1);
  EXPECT_EQ(b.diameter, 2);
  EXPECT_EQ(b.n, 3u);
  EXPECT_EQ(b.K, 90);
}

TEST(Stability, NormingFunctionItself) {
  const auto star = gen_star(3);
  const auto sys = to_base(star, 3);
  const auto v = decide(star, sys);
  const auto c = verify_stability(star, sys, v, *v.norming, q(1, 16));
  EXPECT_TRUE(c.hypothesis);
  EXPECT_TRUE(c.conclusion);
  EXPECT_EQ(c.sup_distance, 0);
  const auto tri = tri_space();
  EXPECT_THROW(verify_stability(tri, make_system(tri, {{A, O}}, {q(1)}),
                                make_function(tri, {q(0), q(2), q(1)}), q(1)),
               std::invalid_argument);
}

// Property sweeps over random normalized systems.
TEST(DecideProperty, AgreesWithEnumerationAndExtensions) {
  int frechet = 0, uncovered = 0, nonunique = 0, notattaining = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const auto inst = random_instance(seed);
    const auto v = decide(inst.space, inst.system);
    EXPECT_FALSE(verdict_error(inst.space, inst.system, v)) << seed;
    EXPECT_EQ(v.kind == DiffKind::Frechet,
              oracles::brute_norming_uniqueness(inst.space, inst.system))
        << seed;
    const auto r = closure(beta_matrix(inst.space, inst.system.pairs));
    if (const auto* t = std::get_if<PotentialTable>(&r)) {
      // second route: unique potentials and coinciding extreme extensions
      const bool same = v.upper->values == v.lower->values;
      EXPECT_EQ(v.kind == DiffKind::Frechet, t->globally_unique && same) << seed;
    }
    switch (v.failure.index()) {
      case 0: ++frechet; break;
      case 1: ++notattaining; break;
      case 2: ++nonunique; break;
      case 3: ++uncovered; break;
    }
  }
  // the sweep exercises every branch
  EXPECT_GT(frechet, 0);
  EXPECT_GT(uncovered, 0);
  EXPECT_GT(nonunique, 0);
  EXPECT_GT(notattaining, 0);
}

TEST(DecideProperty, EpsConditionsAreConsistentWithTheExactVerdict) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto inst = random_instance(seed);
    const auto v = decide(inst.space, inst.system);
    if (std::holds_alternative<NotAttaining>(v.failure)) {
      EXPECT_THROW(check_gateaux_eps(inst.space, inst.system, q(1)), NotAttainingError);
      continue;
    }
    if (v.kind == DiffKind::Frechet) {
      for (unsigned k = 0; k <= 8; ++k) {
        EXPECT_TRUE(check_gateaux_eps(inst.space, inst.system, pow2_neg(k)).empty());
      }
      EXPECT_TRUE(coverage_eps_prefix(inst.space, inst.system, q(1, 1024)).has_value());
      continue;
    }
    // some small eps exposes the failure
    const auto t = std::get<PotentialTable>(closure(beta_matrix(inst.space, inst.system.pairs)));
    if (const auto* u = std::get_if<Uncovered>(&v.failure)) {
      const auto slack = min_cover_slack(inst.space, build_on_N(inst.space, inst.system.pairs, t),
                                         u->point).slack;
      ASSERT_GT(slack, 0);
      const auto rep = check_gateaux_eps(inst.space, inst.system, slack / 2);
      EXPECT_TRUE(std::any_of(rep.cond_ii.begin(), rep.cond_ii.end(),
                              [&](const auto& e) { return e.first == u->point; }));
    } else {
      const auto [j, k] = std::get<NonUniqueOnN>(v.failure);
      const Rational gap = t.B[j][k] + t.B[k][j];
      const auto rep = check_gateaux_eps(inst.space, inst.system, gap / 2);
      EXPECT_NE(std::find(rep.cond_i.begin(), rep.cond_i.end(), std::make_pair(j, k)),
                rep.cond_i.end());
    }
  }
}

TEST(L1Property, OrientationOfAllPairsDoesNotMatter) {
  std::mt19937_64 rng(8);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = random_instance(seed);
    PairList flipped = inst.system.pairs;
    for (auto& p : flipped) std::swap(p.x, p.y);
    const auto a = l1_basis_check(inst.space, inst.system.pairs);
    const auto b = l1_basis_check(inst.space, flipped);
    EXPECT_EQ(a.isometric, b.isometric);
    EXPECT_FALSE(l1_verdict_error(inst.space, inst.system.pairs, a));
    PairList shuffled = inst.system.pairs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_EQ(l1_basis_check(inst.space, shuffled).isometric, a.isometric);
    // an isometric family is in particular cyclically monotone
    if (a.isometric) {
      EXPECT_TRUE(check_cyclical_monotonicity(inst.space, inst.system.pairs).holds);
    }
  }
}

TEST(StabilityProperty, RandomPerturbations) {
  std::mt19937_64 rng(99);
  const auto star = gen_star(3);
  const auto sys = to_base(star, 3);
  const auto v = decide(star, sys);
  for (int i = 0; i < 200; ++i) {
    std::vector<Rational> h(star.size());
    for (std::size_t p = 1; p < star.size(); ++p) h[p] = random_rational(rng, -1, 1, 16);
    const Rational t = random_rational(rng, 0, 1, 64) / 8;
    std::vector<Rational> g(star.size());
    for (std::size_t p = 0; p < star.size(); ++p) g[p] = (1 - t) * v.norming->values[p] + t * h[p];
    const auto gf = make_function(star, g);
    if (gf.lip > 1) continue;
    EXPECT_TRUE(verify_stability(star, sys, v, gf, pow2_neg(4)).holds());
  }
}
