#include <gtest/gtest.h>

#include <random>

#include "obk/error.hpp"
#include "obk/interchange.hpp"
#include "support/builders.hpp"

namespace {

using namespace obk;

TEST(Framing, DecreaseTwiceOnAPlanarPage) {
  auto p = build::placement(0, 2, {{Sign::positive}});
  p.components[0].tb = 0;
  p.components[0].rot = 1;
  const auto out = decrease_contact_framing(p, "K1", 2);
  const auto& k = out.components[0];
  EXPECT_EQ(k.tb, -2);
  EXPECT_EQ(k.rot, -1);
  EXPECT_EQ(k.framing_offset, -2);
  EXPECT_EQ(out.open_book.page().genus(), 0);
  EXPECT_EQ(out.open_book.page().boundary_count(), 4);
  EXPECT_EQ(pushoff_invariants(out, "K1"), pushoff_invariants(p, "K1"));
}

TEST(Framing, ZeroRoundsIsIdentityAndNegativeIsAnError) {
  const auto p = build::placement(1, 1, {{Sign::positive}});
  EXPECT_EQ(decrease_contact_framing(p, "K1", 0), p);
  EXPECT_THROW(decrease_contact_framing(p, "K1", -1), DomainError);
}

TEST(Approximation, KeepsGenusAndUsesBindingClass) {
  TransverseWitness w{OpenBook::trivial(2, 3).with_marks({"B2"}), {}};
  w.link.components.push_back({"T", "B2", -3, Looseness::unknown});
  const auto p = approximate_subbinding(w);
  EXPECT_EQ(p.open_book.page().genus(), 2);
  ASSERT_EQ(p.components.size(), 1U);
  EXPECT_EQ(p.components[0].curve.homology, p.open_book.binding_class("B2"));
  EXPECT_EQ(pushoff_invariants(p, "T"), -3);
  EXPECT_TRUE(validate_placement(p).empty());
}

TEST(Approximation, SingleBindingIsStabilizedFirst) {
  TransverseWitness w{OpenBook::trivial(1, 1).with_marks({"B1"}), {}};
  w.link.components.push_back({"T", "B1", -1, Looseness::unknown});
  const auto p = approximate_subbinding(w);
  EXPECT_EQ(p.open_book.page().genus(), 1);
  EXPECT_EQ(p.open_book.page().boundary_count(), 2);
}

TEST(Approximation, RequiresMarkedBindings) {
  TransverseWitness w{OpenBook::trivial(0, 2), {}};
  w.link.components.push_back({"T", "B1", -1, Looseness::unknown});
  EXPECT_THROW(approximate_subbinding(w), DomainError);
  EXPECT_THROW(approximate_subbinding(TransverseWitness{OpenBook::trivial(0, 2), {}}), DomainError);
}

TEST(RoundTrip, BoundsAgreeAndProvenanceReplays) {
  std::mt19937_64 rng(5);
  for (int genus = 0; genus <= 2; ++genus) {
    const auto t = transverse_certificate(build::witness(rng, genus));
    const auto rt = roundtrip_sg(t);
    EXPECT_EQ(rt.legendrian.genus_upper_bound, genus);
    EXPECT_EQ(rt.transverse.genus_upper_bound, genus);
    EXPECT_EQ(rt.legendrian.kind, ObjectKind::legendrian);
    EXPECT_TRUE(check_sg_certificate(rt.legendrian).empty());
    EXPECT_TRUE(check_sg_certificate(rt.transverse).empty());
    EXPECT_EQ(rt.transverse.link_digest, t.link_digest);
  }
}

TEST(RoundTrip, TamperedProvenanceIsReported) {
  std::mt19937_64 rng(9);
  auto rt = roundtrip_sg(transverse_certificate(build::witness(rng, 1)));
  std::get<ApproximationLink>(rt.transverse.provenance.front()).result_digest = "0000000000000000";
  EXPECT_FALSE(check_sg_certificate(rt.transverse).empty());
}

TEST(RoundTrip, NeedsATransverseStart) {
  const auto p = build::placement(0, 1, {{Sign::positive}});
  SgCertificate c;
  c.kind = ObjectKind::legendrian;
  c.witness = p;
  EXPECT_THROW(roundtrip_sg(c), DomainError);
}

LinkPlacement loose_planar() {
  auto p = build::placement(0, 2, {{Sign::positive}, {Sign::negative, Sign::negative}});
  for (auto& c : p.components) c.loose = Looseness::loose;
  return p;
}

TEST(LoosePipeline, BoundZeroAndSelfLinkingKept) {
  const auto p = loose_planar();
  for (int m = 0; m <= 5; ++m) {
    const auto cert = loose_planar_pipeline(p, m);
    EXPECT_EQ(cert.genus_upper_bound, 0);
    EXPECT_TRUE(check_sg_certificate(cert).empty());
    const auto& link = std::get<TransverseWitness>(cert.witness).link;
    for (std::size_t i = 0; i < p.components.size(); ++i) {
      EXPECT_EQ(link.components[i].sl, pushoff_invariants(p.components[i]));
    }
    EXPECT_EQ(cert.provenance.size(), m > 0 ? p.components.size() + 1 : 1U);
  }
}

TEST(LoosePipeline, Preconditions) {
  auto p = loose_planar();
  EXPECT_THROW(loose_planar_pipeline(p, -1), DomainError);
  p.components[0].loose = Looseness::non_loose;
  EXPECT_THROW(loose_planar_pipeline(p, 1), DomainError);
  auto q = build::placement(1, 1, {{Sign::positive}});
  q.components[0].loose = Looseness::loose;
  try {
    loose_planar_pipeline(q, 0);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_STREQ(e.what(), "planar witness required");
  }
}

}  // namespace
