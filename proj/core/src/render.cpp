#include "obk/render.hpp"

#include <algorithm>
#include <cstdio>

#include "obk/error.hpp"

namespace obk {
namespace {

constexpr double kSlot = 140.0;
constexpr double kMargin = 70.0;
constexpr double kMidY = 170.0;
constexpr double kBoundaryRadius = 34.0;
constexpr double kFootRadius = 11.0;
constexpr double kLoopBase = 52.0;
constexpr double kLoopStep = 11.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (const char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

/// Handles occupy the first `genus` slots, binding components the rest.
class Canvas {
 public:
  Canvas(const OpenBook& ob, std::size_t loops) : ob_(ob) {
    const auto slots = static_cast<double>(ob.page().genus() + ob.page().boundary_count());
    width_ = 2 * kMargin + slots * kSlot;
    height_ = 2 * kMidY + static_cast<double>(loops) * 2 * kLoopStep;
    mid_ = height_ / 2;
  }

  double slot_x(std::size_t slot) const { return kMargin + kSlot * (static_cast<double>(slot) + 0.5); }
  std::size_t handle_slot(std::size_t i) const { return i; }
  std::size_t boundary_slot(std::size_t k) const { return static_cast<std::size_t>(ob_.page().genus()) + k; }

  void page() {
    const Surface& s = ob_.page();
    out_ += "<g class=\"page\">\n";
    out_ += "<rect class=\"page-outline\" x=\"" + num(kMargin / 2) + "\" y=\"" + num(kMargin / 2) + "\" width=\"" +
            num(width_ - kMargin) + "\" height=\"" + num(height_ - kMargin) +
            "\" rx=\"40.00\" fill=\"#f7f7f2\" stroke=\"#888888\"/>\n";
    for (int i = 0; i < s.genus(); ++i) {
      const double x = slot_x(handle_slot(static_cast<std::size_t>(i)));
      const std::string n = std::to_string(i + 1);
      out_ += "<g class=\"handle\" data-index=\"" + n + "\">\n";
      out_ += "<path class=\"band\" d=\"M " + num(x - 24) + " " + num(mid_) + " C " + num(x - 24) + " " +
              num(mid_ - 46) + " " + num(x + 24) + " " + num(mid_ - 46) + " " + num(x + 24) + " " + num(mid_) +
              "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"9.00\"/>\n";
      for (const double dx : {-24.0, 24.0}) {
        out_ += "<circle class=\"foot\" cx=\"" + num(x + dx) + "\" cy=\"" + num(mid_) + "\" r=\"" +
                num(kFootRadius) + "\" fill=\"#ffffff\" stroke=\"#555555\"/>\n";
      }
      out_ += "<text x=\"" + num(x) + "\" y=\"" + num(mid_ + 30) + "\" text-anchor=\"middle\" font-size=\"11\">a" +
              n + ", b" + n + "</text>\n";
      out_ += "</g>\n";
    }
    for (std::size_t k = 0; k < ob_.bindings().size(); ++k) {
      const double x = slot_x(boundary_slot(k));
      const auto& label = ob_.bindings()[k];
      const bool marked = ob_.is_marked(label);
      out_ += "<circle class=\"boundary\" data-binding=\"" + escape(label) + "\" cx=\"" + num(x) + "\" cy=\"" +
              num(mid_) + "\" r=\"" + num(kBoundaryRadius) + "\" fill=\"#ffffff\" stroke=\"#222222\" stroke-width=\"" +
              (marked ? "3.00" : "1.50") + "\"/>\n";
      out_ += "<text class=\"binding-label\" x=\"" + num(x) + "\" y=\"" + num(mid_ + 4) +
              "\" text-anchor=\"middle\" font-size=\"12\">" + escape(label) + "</text>\n";
    }
    out_ += "</g>\n";
  }

  /// Slots a curve visits: handles where it has a-/b-coefficients, plus the
  /// anchor binding.
  std::pair<std::size_t, std::size_t> span(const HomologyVector& h, std::size_t anchor) const {
    std::size_t lo = anchor;
    std::size_t hi = anchor;
    for (int i = 0; i < ob_.page().genus(); ++i) {
      const auto ii = static_cast<std::size_t>(i);
      if (ii * 2 + 1 < h.size() && (h[2 * ii] != 0 || h[2 * ii + 1] != 0)) {
        lo = std::min(lo, handle_slot(ii));
        hi = std::max(hi, handle_slot(ii));
      }
    }
    return {lo, hi};
  }

  /// Stadium loop around slots [lo, hi] at nesting depth `level`.
  std::string loop_path(std::pair<std::size_t, std::size_t> slots, std::size_t level) const {
    const double r = kLoopBase + kLoopStep * static_cast<double>(level);
    const double x0 = slot_x(slots.first);
    const double x1 = slot_x(slots.second) + 0.01;
    return "M " + num(x0) + " " + num(mid_ - r) + " L " + num(x1) + " " + num(mid_ - r) + " A " + num(r) + " " +
           num(r) + " 0 0 1 " + num(x1) + " " + num(mid_ + r) + " L " + num(x0) + " " + num(mid_ + r) + " A " +
           num(r) + " " + num(r) + " 0 0 1 " + num(x0) + " " + num(mid_ - r) + " Z";
  }

  void link(const LinkComponent& c, std::size_t level) {
    const auto anchor = ob_.binding_index(c.nearest_binding).value_or(0);
    const auto slots = span(c.curve.homology, boundary_slot(anchor));
    const double r = kLoopBase + kLoopStep * static_cast<double>(level);
    const double cx = (slot_x(slots.first) + slot_x(slots.second)) / 2;
    const double y = mid_ - r;
    const double dir = c.orientation == Sign::positive ? 1.0 : -1.0;
    out_ += "<g class=\"component\" data-id=\"" + escape(c.id) + "\">\n";
    out_ += "<path class=\"link\" d=\"" + loop_path(slots, level) +
            "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2.00\"/>\n";
    out_ += "<path class=\"arrow\" d=\"M " + num(cx + 6 * dir) + " " + num(y) + " L " + num(cx - 5 * dir) + " " +
            num(y - 5) + " L " + num(cx - 5 * dir) + " " + num(y + 5) + " Z\" fill=\"#c0392b\"/>\n";
    out_ += "<text class=\"link-label\" x=\"" + num(cx) + "\" y=\"" + num(y - 8) +
            "\" text-anchor=\"middle\" font-size=\"10\">" + escape(c.id) + "</text>\n";
    out_ += "</g>\n";
  }

  void step(const ScheduleStep& s, std::size_t number, std::size_t level, const LinkPlacement& p) {
    std::size_t anchor = 0;
    if (auto k = ob_.binding_index(s.feet)) {
      anchor = *k;
    } else {
      // feet on a binding created by an earlier step: fall back to the
      // binding of the component involved
      const auto& who = s.target ? *s.target : s.pushed.value_or("");
      if (const auto* c = p.find(who)) anchor = ob_.binding_index(c->nearest_binding).value_or(0);
    }
    HomologyVector support = s.twist_curve.homology;
    support.resize(static_cast<std::size_t>(ob_.page().rank()), 0);
    const auto slots = span(support, boundary_slot(anchor));
    const double r = kLoopBase + kLoopStep * static_cast<double>(level);
    const double x = slot_x(slots.second) + r;
    out_ += "<g class=\"stabilization\" data-step=\"" + std::to_string(number) + "\">\n";
    out_ += "<path class=\"twist\" d=\"" + loop_path(slots, level) +
            "\" fill=\"none\" stroke=\"#2471a3\" stroke-width=\"1.50\" stroke-dasharray=\"5,3\"/>\n";
    out_ += "<text class=\"twist-label\" x=\"" + num(x + 4) + "\" y=\"" + num(mid_) + "\" font-size=\"11\">c" +
            std::to_string(number) + "</text>\n";
    out_ += "</g>\n";
  }

  std::string finish(const std::string& title) const {
    std::string head = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    head += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width_) + "\" height=\"" + num(height_) +
            "\" viewBox=\"0 0 " + num(width_) + " " + num(height_) + "\">\n";
    head += "<title>" + escape(title) + "</title>\n";
    return head + out_ + "</svg>\n";
  }

 private:
  const OpenBook& ob_;
  std::string out_;
  double width_ = 0;
  double height_ = 0;
  double mid_ = 0;
};

std::string title_of(const OpenBook& ob, std::string_view what) {
  return std::string(what) + " genus=" + std::to_string(ob.page().genus()) +
         " boundary=" + std::to_string(ob.page().boundary_count()) +
         " twists=" + std::to_string(ob.monodromy().size());
}

}  // namespace

std::string render_svg(const OpenBook& ob) {
  Canvas canvas(ob, 0);
  canvas.page();
  return canvas.finish(title_of(ob, "open book"));
}

std::string render_svg(const LinkPlacement& p) {
  Canvas canvas(p.open_book, p.components.size());
  canvas.page();
  for (std::size_t i = 0; i < p.components.size(); ++i) canvas.link(p.components[i], i);
  return canvas.finish(title_of(p.open_book, "placement"));
}

std::string render_svg(const CertificateDocument& c) {
  const auto& p = c.input;
  const auto& steps = c.certificate.steps;
  Canvas canvas(p.open_book, p.components.size() + steps.size());
  canvas.page();
  for (std::size_t i = 0; i < p.components.size(); ++i) canvas.link(p.components[i], i);
  for (std::size_t i = 0; i < steps.size(); ++i) canvas.step(steps[i], i + 1, p.components.size() + i, p);
  return canvas.finish(title_of(p.open_book, "certificate case=" + std::string(to_string(c.certificate.case_tag))));
}

std::string render_svg(const Document& doc) {
  switch (doc.kind()) {
    case DocumentKind::open_book: return render_svg(std::get<OpenBook>(doc.payload));
    case DocumentKind::placement: return render_svg(std::get<LinkPlacement>(doc.payload));
    case DocumentKind::certificate: return render_svg(std::get<CertificateDocument>(doc.payload));
    case DocumentKind::sg_certificate: break;
  }
  throw DomainError("cannot render a document of kind " + std::string(to_string(doc.kind())));
}

}  // namespace obk
