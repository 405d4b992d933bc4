#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "obk/error.hpp"
#include "obk/legendrian.hpp"
#include "support/builders.hpp"
#include "support/oracle.hpp"

namespace {

using namespace obk;

bool has_rule(const std::vector<Violation>& vs, std::string_view rule) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.rule == rule; });
}

LinkPlacement two_parallel() { return build::placement(1, 2, {{Sign::positive, Sign::positive}}); }

TEST(Legendrian, StabilizationArithmetic) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    LinkPlacement p = build::placement(0, 1, {{Sign::positive}});
    oracle::Classical k{static_cast<int>(rng() % 21) - 10, static_cast<int>(rng() % 21) - 10};
    p.components[0].tb = k.tb;
    p.components[0].rot = k.rot;
    const int sign = rng() % 2 ? 1 : -1;
    const auto out = stabilize_legendrian(p, "K1", sign > 0 ? Sign::positive : Sign::negative);
    const auto expected = oracle::stabilized(k, sign);
    EXPECT_EQ(out.components[0].tb, expected.tb);
    EXPECT_EQ(out.components[0].rot, expected.rot);
    EXPECT_EQ(out.components[0].framing_offset, -1);
  }
}

TEST(Legendrian, PushoffSelfLinking) {
  LinkPlacement p = build::placement(0, 1, {{Sign::positive}});
  p.components[0].tb = -3;
  p.components[0].rot = 2;
  EXPECT_EQ(pushoff_invariants(p, "K1"), -5);
  EXPECT_EQ(pushoff_invariants(p, "K1", Sign::negative), -1);
  const auto neg = stabilize_legendrian(p, "K1", Sign::negative);
  EXPECT_EQ(pushoff_invariants(neg, "K1"), -5);
  const auto pos = stabilize_legendrian(p, "K1", Sign::positive);
  EXPECT_EQ(pushoff_invariants(pos, "K1"), -7);
}

TEST(Legendrian, MissingInvariantsAreAnError) {
  LinkPlacement p = build::placement(0, 1, {{Sign::positive}});
  p.components[0].null_homologous = false;
  p.components[0].tb.reset();
  p.components[0].rot.reset();
  EXPECT_THROW(pushoff_invariants(p, "K1"), DomainError);
  EXPECT_THROW(stabilize_legendrian(p, "K9", Sign::positive), DomainError);
}

TEST(Legendrian, ValidPlacementsHaveNoViolations) {
  EXPECT_TRUE(validate_placement(two_parallel()).empty());
  EXPECT_TRUE(validate_placement(build::placement(2, 3, {{Sign::positive, Sign::negative}, {Sign::negative}})).empty());
}

TEST(Legendrian, RuleUniqueId) {
  auto p = two_parallel();
  p.components[1].id = p.components[0].id;
  EXPECT_TRUE(has_rule(validate_placement(p), "unique-id"));
}

TEST(Legendrian, RuleBindingResolves) {
  auto p = two_parallel();
  p.components[0].nearest_binding = "nowhere";
  EXPECT_TRUE(has_rule(validate_placement(p), "binding-resolves"));
}

TEST(Legendrian, RuleInvariantsIffNullHomologous) {
  auto p = two_parallel();
  p.components[0].rot.reset();
  EXPECT_TRUE(has_rule(validate_placement(p), "invariants-iff-null-homologous"));
  auto q = two_parallel();
  q.components[0].null_homologous = false;
  EXPECT_TRUE(has_rule(validate_placement(q), "invariants-iff-null-homologous"));
}

TEST(Legendrian, RuleHomologyDimension) {
  auto p = two_parallel();
  p.components[0].curve.homology.push_back(0);
  EXPECT_TRUE(has_rule(validate_placement(p), "homology-dimension"));
}

TEST(Legendrian, RuleBoundaryParallelSupport) {
  auto p = two_parallel();
  p.components[0].curve.kind = CurveKind::boundary_parallel;
  EXPECT_TRUE(has_rule(validate_placement(p), "boundary-parallel-support"));
}

TEST(Legendrian, RuleCurveKind) {
  auto p = two_parallel();
  p.components[0].curve.kind = CurveKind::stabilization_curve;
  EXPECT_TRUE(has_rule(validate_placement(p), "curve-kind"));
}

TEST(Legendrian, RuleOrientation) {
  auto p = two_parallel();
  p.components[0].orientation = Sign::negative;
  EXPECT_TRUE(has_rule(validate_placement(p), "orientation"));
}

TEST(Legendrian, RuleClassIndexContiguous) {
  auto p = two_parallel();
  p.components[1].class_index = 1;
  EXPECT_TRUE(has_rule(validate_placement(p), "class-index-contiguous"));
  auto q = two_parallel();
  q.components[1].class_index = 3;
  EXPECT_TRUE(has_rule(validate_placement(q), "class-index-contiguous"));
}

TEST(Legendrian, RuleParallelHomology) {
  auto p = two_parallel();
  p.components[1].curve.homology = {0, 0, 1};
  EXPECT_TRUE(has_rule(validate_placement(p), "parallel-homology"));
}

TEST(Legendrian, RuleDisjointComponents) {
  auto p = build::placement(1, 1, {{Sign::positive}, {Sign::positive}});
  p.components[1].curve.homology = {0, 1};
  EXPECT_TRUE(has_rule(validate_placement(p), "disjoint-components"));
}

TEST(Legendrian, EmbedComponentsFollowsThePage) {
  const auto p = two_parallel();
  const auto att = attach_handle(p.open_book.page(), HandleFeet::same_boundary(0));
  const auto out = embed_components(p, att.embedding);
  for (std::size_t i = 0; i < p.components.size(); ++i) {
    EXPECT_EQ(out.components[i].curve.homology, att.embed(p.components[i].curve.homology));
  }
}

}  // namespace
