#include <gtest/gtest.h>

#include "obk/error.hpp"
#include "obk/render.hpp"
#include "support/builders.hpp"

namespace {

using namespace obk;

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

TEST(Render, DiskIsOneCircleWithoutHandles) {
  const std::string svg = render_svg(Document{kFormatVersion, OpenBook::trivial(0, 1)});
  EXPECT_EQ(svg.rfind("<?xml", 0), 0U);
  EXPECT_EQ(count(svg, "class=\"boundary\""), 1U);
  EXPECT_EQ(count(svg, "class=\"handle\""), 0U);
  EXPECT_EQ(count(svg, "class=\"link\""), 0U);
}

TEST(Render, GenusOnePlacementWithOneCurve) {
  const auto p = build::placement(1, 2, {{Sign::positive}});
  const std::string svg = render_svg(Document{kFormatVersion, p});
  EXPECT_EQ(count(svg, "class=\"boundary\""), 2U);
  EXPECT_EQ(count(svg, "class=\"handle\""), 1U);
  EXPECT_EQ(count(svg, "class=\"link\""), 1U);
  EXPECT_EQ(count(svg, "class=\"arrow\""), 1U);
}

TEST(Render, CertificateLabelsEveryStep) {
  const auto p = build::placement(0, 2, {{Sign::positive, Sign::negative}, {Sign::positive}});
  const Certificate cert = build_schedule(p);
  const std::string svg = render_svg(Document{kFormatVersion, CertificateDocument{p, cert}});
  EXPECT_EQ(count(svg, "class=\"twist-label\""), cert.steps.size());
  for (std::size_t i = 1; i <= cert.steps.size(); ++i) {
    EXPECT_NE(svg.find(">c" + std::to_string(i) + "</text>"), std::string::npos);
  }
  EXPECT_EQ(count(svg, "class=\"link\""), p.components.size());
}

TEST(Render, IsDeterministic) {
  const auto p = build::placement(2, 3, {{Sign::positive, Sign::positive}});
  EXPECT_EQ(render_svg(p), render_svg(p));
}

TEST(Render, EscapesLabels) {
  const OpenBook ob(Surface::make(0, 1), {}, {}, {"K'"});
  EXPECT_NE(render_svg(ob).find("K&apos;"), std::string::npos);
}

TEST(Render, SupportGenusCertificatesAreUnsupported) {
  SgCertificate c;
  c.witness = build::placement(0, 1, {{Sign::positive}});
  EXPECT_THROW(render_svg(Document{kFormatVersion, c}), DomainError);
}

}  // namespace
