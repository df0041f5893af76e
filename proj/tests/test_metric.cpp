#include <gtest/gtest.h>

#include <random>

#include "lipfree/lipfree.hpp"
#include "test_support.hpp"

using namespace lipfree;
using lipfree::testing::q;

namespace {

RawSpace raw3(RationalMatrix d) { return RawSpace{{"0", "a", "b"}, "0", std::move(d)}; }

}  // namespace

TEST(Rational, ParsesCanonicalForms) {
  EXPECT_EQ(parse_rational("3/4"), q(3, 4));
  EXPECT_EQ(parse_rational("-6/8"), q(-3, 4));
  EXPECT_EQ(parse_rational("+5"), q(5));
  EXPECT_EQ(parse_rational("0/7"), q(0));
  EXPECT_EQ(to_string(q(6, 8)), "3/4");
  EXPECT_EQ(to_string(q(-4, 2)), "-2");
  EXPECT_EQ(to_string(q(0)), "0");
  EXPECT_EQ(pow2_neg(3), q(1, 8));
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "1.5", "1/0", "a", "1/", "/2", "1/-2", "--1", "1e3", " 1"}) {
    EXPECT_THROW(parse_rational(bad), InputError) << bad;
  }
}

TEST(Validate, LineIsAMetric) {
  const auto r = validate_space(gen_line(3).to_raw());
  EXPECT_TRUE(r.ok);
  EXPECT_TRUE(r.violations.empty());
  EXPECT_EQ(r.theta, 1);
  EXPECT_EQ(r.diameter, 2);
}

TEST(Validate, TriangleViolationIsReportedAsTriple) {
  const auto r = validate_space(raw3({{0, 1, 4}, {1, 0, 1}, {4, 1, 0}}));
  EXPECT_FALSE(r.ok);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].kind, ViolationKind::triangle);
  EXPECT_EQ(r.violations[0].indices, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Validate, StarHasUnitThetaAndDiameterTwo) {
  for (std::size_t k : {1u, 2u, 5u, 9u}) {
    const auto s = gen_star(k);
    EXPECT_EQ(s.theta(), 1);
    EXPECT_EQ(s.diameter(), k == 1 ? q(1) : q(2));
  }
}

TEST(Validate, EachAxiomHasItsOwnKind) {
  EXPECT_EQ(validate_space(raw3({{0, 2, 1}, {3, 0, 2}, {1, 2, 0}})).violations.front().kind,
            ViolationKind::asymmetry);
  EXPECT_EQ(validate_space(raw3({{0, 0, 1}, {0, 0, 1}, {1, 1, 0}})).violations.front().kind,
            ViolationKind::zero_offdiag);
  EXPECT_EQ(validate_space(raw3({{0, -1, 1}, {-1, 0, 1}, {1, 1, 0}})).violations.front().kind,
            ViolationKind::negative);
  EXPECT_EQ(validate_space(raw3({{1, 1, 1}, {1, 0, 1}, {1, 1, 0}})).violations.front().kind,
            ViolationKind::nonzero_diag);
  RawSpace dup{{"0", "a", "a"}, "0", {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}};
  EXPECT_EQ(validate_space(dup).violations.front().kind, ViolationKind::dup_label);
}

TEST(Validate, StructuralProblemsThrow) {
  EXPECT_THROW(validate_space(RawSpace{{"0", "a"}, "0", {{0, 1}}}), InputError);
  EXPECT_THROW(validate_space(RawSpace{{"0", "a"}, "0", {{0, 1}, {1}}}), InputError);
  EXPECT_THROW(validate_space(RawSpace{{"0", "a"}, "z", {{0, 1}, {1, 0}}}), InputError);
  EXPECT_THROW(FiniteMetricSpace::from_raw(raw3({{0, 1, 4}, {1, 0, 1}, {4, 1, 0}})), InputError);
}

TEST(Validate, ViolationListIsCapped) {
  const std::size_t n = 20;
  RawSpace raw;
  for (std::size_t i = 0; i < n; ++i) raw.labels.push_back("p" + std::to_string(i));
  raw.base_label = "p0";
  raw.dist.assign(n, std::vector<Rational>(n, Rational{0}));  // every off-diagonal entry is zero
  const auto r = validate_space(raw);
  EXPECT_FALSE(r.ok);
  EXPECT_TRUE(r.truncated);
  EXPECT_EQ(r.violations.size(), kDefaultViolationCap);
  EXPECT_TRUE(validate_space(raw, 1000).violations.size() == n * (n - 1) / 2);
}

TEST(Validate, IsPureAndSorted) {
  RawSpace raw = raw3({{0, 5, 1}, {5, 0, 1}, {1, 1, 0}});
  const auto a = validate_space(raw), b = validate_space(raw);
  EXPECT_EQ(a, b);
  for (std::size_t i = 1; i < a.violations.size(); ++i) {
    EXPECT_LE(a.violations[i - 1].indices, a.violations[i].indices);
  }
}

TEST(Segment, Examples) {
  const auto line = gen_line(3);
  EXPECT_EQ(segment(line, 0, 2), (PointSet{0, 1, 2}));
  EXPECT_EQ(segment(line, 0, 1), (PointSet{0, 1}));
  const auto star = gen_star(5);
  EXPECT_EQ(segment(star, 1, 2), (PointSet{0, 1, 2}));
  EXPECT_EQ(segment(star, 1, 0), (PointSet{0, 1}));
  EXPECT_THROW(segment(star, 1, 1), std::invalid_argument);
  EXPECT_THROW(segment(star, 1, 99), std::invalid_argument);
}

TEST(Segment, EpsVariantIsStrict) {
  const auto line = gen_line(3);
  // excess of 2 over [0,1] is 2
  EXPECT_EQ(segment_eps(line, 0, 1, q(2)), (PointSet{0, 1}));
  EXPECT_EQ(segment_eps(line, 0, 1, q(2) + q(1, 64)), (PointSet{0, 1, 2}));
  EXPECT_THROW(segment_eps(line, 0, 1, q(0)), std::invalid_argument);
  EXPECT_THROW(segment_eps(line, 0, 1, q(-1)), std::invalid_argument);
}

TEST(Segment, EpsIsMonotoneAndContainsTheSegment) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto space = gen_random(2 + seed % 5, seed,
                                  seed % 2 ? RandomProfile::near_degenerate : RandomProfile::generic);
    const std::size_t n = space.size();
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t t = 0; t < n; ++t) {
        if (s == t) continue;
        const PointSet exact = segment(space, s, t);
        EXPECT_TRUE(std::binary_search(exact.begin(), exact.end(), s));
        EXPECT_TRUE(std::binary_search(exact.begin(), exact.end(), t));
        EXPECT_EQ(exact, segment(space, t, s));
        // smallest positive excess: below it the relaxed segment is the exact one
        std::optional<Rational> min_pos;
        for (std::size_t z = 0; z < n; ++z) {
          const Rational e = segment_excess(space, s, t, z);
          EXPECT_GE(e, 0);
          if (e > 0 && (!min_pos || e < *min_pos)) min_pos = e;
        }
        if (min_pos) {
          EXPECT_EQ(segment_eps(space, s, t, *min_pos), exact);
        }
        PointSet prev = exact;
        for (const Rational& eps : {q(1, 8), q(1, 2), q(1), q(3), q(100)}) {
          const PointSet cur = segment_eps(space, s, t, eps);
          EXPECT_TRUE(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
          prev = cur;
        }
        EXPECT_EQ(prev.size(), n);
      }
    }
  }
}
