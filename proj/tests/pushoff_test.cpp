#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "obk/error.hpp"
#include "obk/interchange.hpp"
#include "obk/pushoff.hpp"
#include "support/builders.hpp"

namespace {

using namespace obk;
constexpr Sign P = Sign::positive;
constexpr Sign N = Sign::negative;

std::vector<StepKind> kinds(const Certificate& c) {
  std::vector<StepKind> out;
  for (const auto& s : c.steps) out.push_back(s.kind);
  return out;
}

TEST(Classify, AllSixCases) {
  EXPECT_EQ(classify(build::placement(0, 2, {{P}, {N}})), Case::c1a);
  EXPECT_EQ(classify(build::placement(0, 2, {{P, P}})), Case::c1bi);
  EXPECT_EQ(classify(build::placement(0, 2, {{N, N}})), Case::c1bi);
  EXPECT_EQ(classify(build::placement(0, 2, {{P, N}})), Case::c1bii);
  EXPECT_EQ(classify(build::placement(1, 1, {{P}, {P}})), Case::c2a);
  EXPECT_EQ(classify(build::placement(1, 1, {{P, P, P}})), Case::c2bi);
  EXPECT_EQ(classify(build::placement(2, 1, {{P}, {N, P}})), Case::c2bii);
}

TEST(Classify, RejectsInvalidPlacement) {
  auto p = build::placement(0, 1, {{P}});
  p.components[0].nearest_binding = "B7";
  try {
    classify(p);
    FAIL() << "expected InvalidPlacement";
  } catch (const InvalidPlacement& e) {
    ASSERT_FALSE(e.violations().empty());
    EXPECT_EQ(e.violations().front().rule, "binding-resolves");
  }
}

TEST(Schedule, PlanarThreeComponentsWithoutParallels) {
  const auto p = build::placement(0, 2, {{P}, {P}, {P}});
  const Certificate cert = build_schedule(p);
  EXPECT_EQ(cert.case_tag, Case::c1a);
  EXPECT_EQ(cert.steps.size(), 3U);
  EXPECT_TRUE(cert.order_free);
  EXPECT_TRUE(cert.ledger.empty());
  const auto applied = apply_schedule(p, cert);
  EXPECT_EQ(applied.open_book.page().genus(), 0);
  EXPECT_EQ(applied.open_book.page().boundary_count(), 5);
  ASSERT_EQ(applied.certificate.ledger.size(), 3U);
  EXPECT_EQ(applied.certificate.ledger.back().euler_char, -3);
}

TEST(Schedule, GenusOneTwoComponents) {
  const auto p = build::placement(1, 1, {{P}, {P}});
  const auto applied = apply_schedule(p, build_schedule(p));
  EXPECT_EQ(applied.certificate.case_tag, Case::c2a);
  EXPECT_EQ(applied.open_book.page().genus(), 1);
  EXPECT_EQ(applied.open_book.page().boundary_count(), 3);
}

TEST(Schedule, MixedOrientationSpendsOneAuxStep) {
  const auto p = build::placement(0, 2, {{P, P, N}});
  const Certificate cert = build_schedule(p);
  EXPECT_EQ(cert.case_tag, Case::c1bii);
  EXPECT_EQ(kinds(cert),
            (std::vector<StepKind>{StepKind::pushoff, StepKind::pushoff, StepKind::aux_boundary_parallel,
                                   StepKind::pushoff}));
  EXPECT_EQ(cert.aux_count(), 1U);
  EXPECT_EQ(cert.pushoff_count(), 3U);
  EXPECT_FALSE(cert.order_free);
  EXPECT_EQ(cert.steps[2].pushed, "K3");
  EXPECT_EQ(cert.steps[3].feet_step, 2U);

  const auto applied = apply_schedule(p, cert);
  const auto& k3 = *std::find_if(applied.components.begin(), applied.components.end(),
                                 [](const LinkComponent& c) { return c.id == "K3"; });
  EXPECT_EQ(k3.tb, -2);
  EXPECT_EQ(k3.rot, -1);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(applied.components[i].tb, -1);
  EXPECT_EQ(applied.open_book.page().boundary_count(), 6);
}

TEST(Schedule, NegativelyOrientedInnermostStartsFromOutside) {
  const auto p = build::placement(0, 2, {{N, P, P}});
  const Certificate cert = build_schedule(p);
  ASSERT_EQ(cert.steps.size(), 4U);
  EXPECT_EQ(cert.steps[0].target, "K3");
  EXPECT_EQ(cert.steps[2].kind, StepKind::aux_boundary_parallel);
  EXPECT_EQ(cert.steps[2].pushed, "K1");
}

TEST(Schedule, DependenciesFollowParallelClasses) {
  const auto p = build::placement(1, 1, {{P, P}, {P}});
  const Certificate cert = build_schedule(p);
  ASSERT_EQ(cert.steps.size(), 3U);
  EXPECT_TRUE(cert.steps[0].depends_on.empty());
  EXPECT_EQ(cert.steps[1].depends_on, (std::vector<std::size_t>{0}));
  EXPECT_EQ(cert.steps[2].disjoint_from, (std::vector<std::size_t>{0, 1}));
  EXPECT_FALSE(cert.order_free);
}

TEST(Schedule, TwistCurvesCrossTheirHandleOnce) {
  const auto p = build::placement(2, 2, {{P, N}, {P}});
  const auto applied = apply_schedule(p, build_schedule(p));
  const auto& word = applied.open_book.monodromy().twists;
  EXPECT_EQ(word.size(), applied.certificate.steps.size());
  for (const auto& t : word) EXPECT_EQ(t.sign, Sign::positive);
}

TEST(Schedule, FramingOffsetMustBeZero) {
  auto p = build::placement(0, 2, {{P}, {P}});
  p.components[1].framing_offset = -1;
  try {
    build_schedule(p);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("framing offset must be zero"), std::string::npos);
  }
}

TEST(Schedule, BoundsOwnBindingShortcut) {
  LinkPlacement p{OpenBook::trivial(0, 2), {}};
  auto c = build::component("K", p.open_book.binding_class("B1"), P, "P", 1, "B1");
  c.curve.kind = CurveKind::boundary_parallel;
  p.components.push_back(c);
  const Certificate cert = build_schedule(p);
  EXPECT_TRUE(cert.steps.empty());
  EXPECT_TRUE(cert.has_tag(kTagBoundsOwnBinding));
  const auto applied = apply_schedule(p, cert);
  EXPECT_EQ(applied.certificate.sub_binding_map.front().second, "B1");
  EXPECT_TRUE(applied.open_book.is_marked("B1"));
}

TEST(Schedule, ExtensionTagOnNonMeridionalParallels) {
  LinkPlacement p{OpenBook::trivial(1, 2), {}};
  HomologyVector d1 = p.open_book.page().unit(2);
  p.components.push_back(build::component("K1", d1, P, "P", 1, "B1"));
  p.components.push_back(build::component("K2", d1, P, "P", 2, "B1"));
  EXPECT_TRUE(build_schedule(p).has_tag(kTagRemarkExtension));
  EXPECT_FALSE(build_schedule(build::placement(1, 2, {{P, P}})).has_tag(kTagRemarkExtension));
}

TEST(Schedule, CrucialStepProducesPushoffBinding) {
  const auto p = build::placement(1, 1, {{P}});
  const auto step = lemma_crucial_step(p.open_book, p.components[0], "B1");
  EXPECT_EQ(step.open_book.page().boundary_count(), 2);
  EXPECT_EQ(step.new_binding, "B2");
  EXPECT_EQ(step.sl, -1);
  EXPECT_EQ(step.open_book.monodromy().twists.back().sign, Sign::positive);
  EXPECT_THROW(lemma_crucial_step(p.open_book, p.components[0], "B5"), DomainError);
}

TEST(Replay, TamperedLedgerIsRejected) {
  const auto p = build::placement(0, 2, {{P}, {P}});
  Certificate cert = apply_schedule(p, build_schedule(p)).certificate;
  cert.ledger[1].boundary_count += 1;
  try {
    apply_schedule(p, cert);
    FAIL() << "expected a replay failure";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("ledger replay mismatch"), std::string::npos);
  }
}

TEST(Replay, TamperedStepsAreRejected) {
  const auto p = build::placement(0, 2, {{P}, {P}});
  Certificate cert = build_schedule(p);
  cert.steps[0].twist_curve.homology.back() = 2;
  EXPECT_THROW(apply_schedule(p, cert), DomainError);
  Certificate swapped = build_schedule(p);
  std::swap(swapped.steps[0].target, swapped.steps[1].target);
  EXPECT_THROW(apply_schedule(p, swapped), DomainError);
}

TEST(Replay, DigestBindsCertificateToInput) {
  const auto p = build::placement(0, 2, {{P}, {P}});
  const Certificate cert = build_schedule(p);
  auto q = p;
  q.components[0].tb = -5;
  EXPECT_THROW(apply_schedule(q, cert), DomainError);
  EXPECT_EQ(cert.input_digest, placement_digest(p));
}

TEST(Permutations, OrderFreeCertificatesCommute) {
  const auto p = build::placement(0, 3, {{P}, {N}, {P}});
  const Certificate cert = build_schedule(p);
  ASSERT_TRUE(cert.order_free);
  std::vector<std::size_t> perm(cert.steps.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    EXPECT_TRUE(permute_and_check(p, cert, perm).ok());
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST(Permutations, DependencyViolationsAreRejected) {
  const auto p = build::placement(1, 1, {{P, P}});
  const Certificate cert = build_schedule(p);
  const std::vector<std::size_t> swapped{1, 0};
  const auto report = permute_and_check(p, cert, swapped);
  EXPECT_FALSE(report.applied);
  EXPECT_FALSE(report.violations.empty());
  const std::vector<std::size_t> identity{0, 1};
  EXPECT_TRUE(permute_and_check(p, cert, identity).ok());
  const std::vector<std::size_t> bad{0, 0};
  EXPECT_THROW(permute_and_check(p, cert, bad), DomainError);
}

}  // namespace
