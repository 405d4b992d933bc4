#include "obk/generate.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <string>

#include "obk/error.hpp"

namespace obk {
namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng& rng) { return uniform(rng, 0, 1) == 1; }

Looseness random_looseness(Rng& rng) {
  switch (uniform(rng, 0, 2)) {
    case 0: return Looseness::unknown;
    case 1: return Looseness::loose;
    default: return Looseness::non_loose;
  }
}

/// tb + rot is odd for null-homologous Legendrian knots.
void random_invariants(Rng& rng, LinkComponent& c) {
  const int tb = uniform(rng, -6, 3);
  int rot = uniform(rng, -4, 4);
  if ((tb + rot) % 2 == 0) rot += 1;
  c.tb = tb;
  c.rot = rot;
}

}  // namespace

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* raw = std::getenv("OPENBOOK_KIT_SEED");
  if (raw == nullptr || *raw == '\0') return fallback;
  std::uint64_t value = 0;
  const std::string_view text(raw);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw DomainError("OPENBOOK_KIT_SEED must be an unsigned integer, got '" + std::string(text) + "'");
  }
  return value;
}

LinkPlacement make_placement(const PlacementShape& shape, Rng& rng) {
  LinkPlacement p{OpenBook::trivial(shape.genus, shape.boundary_count), {}};
  const Surface& page = p.open_book.page();
  int counter = 0;
  for (std::size_t k = 0; k < shape.classes.size(); ++k) {
    HomologyVector h = page.zero();
    if (coin(rng)) {
      for (int i = 0; i < shape.genus; ++i) h[2 * static_cast<std::size_t>(i)] = uniform(rng, -1, 1);
      for (std::size_t i = 2 * static_cast<std::size_t>(shape.genus); i < h.size(); ++i) h[i] = uniform(rng, -1, 1);
    }
    bool handle_free = true;
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (h[i] != 0 && !page.is_boundary_coordinate(i)) handle_free = false;
    }
    const bool as_boundary_parallel = handle_free && coin(rng);
    const std::string cls = "P" + std::to_string(k + 1);
    for (std::size_t m = 0; m < shape.classes[k].size(); ++m) {
      const Sign o = shape.classes[k][m];
      LinkComponent c;
      c.id = "K" + std::to_string(++counter);
      c.curve.id = "L" + std::to_string(counter);
      c.curve.kind = as_boundary_parallel ? CurveKind::boundary_parallel : CurveKind::link_component;
      c.curve.orientation = o;
      c.curve.homology = h;
      if (o == Sign::negative) {
        for (auto& x : c.curve.homology) x = -x;
      }
      c.orientation = o;
      c.parallel_class = cls;
      c.class_index = static_cast<int>(m) + 1;
      c.nearest_binding = p.open_book.bindings()[static_cast<std::size_t>(uniform(rng, 0, shape.boundary_count - 1))];
      c.null_homologous = uniform(rng, 0, 3) != 0;
      if (c.null_homologous) random_invariants(rng, c);
      c.loose = random_looseness(rng);
      p.components.push_back(std::move(c));
    }
  }
  return p;
}

OpenBook random_open_book(Rng& rng, int genus, int boundary_count, int twists) {
  OpenBook ob = OpenBook::trivial(genus, boundary_count);
  const std::size_t rank = ob.page().rank();
  for (int t = 0; t < twists; ++t) {
    const Sign sign = coin(rng) ? Sign::positive : Sign::negative;
    if (!ob.curves().empty() && uniform(rng, 0, 3) == 0) {
      const auto& existing = ob.curves()[static_cast<std::size_t>(uniform(rng, 0, int(ob.curves().size()) - 1))];
      ob = ob.with_twist(existing, sign);
      continue;
    }
    if (rank == 0) break;
    CurveRef c;
    c.id = ob.fresh_curve_id("w" + std::to_string(t + 1));
    c.homology = ob.page().zero();
    while (std::all_of(c.homology.begin(), c.homology.end(), [](Coeff x) { return x == 0; })) {
      for (auto& x : c.homology) x = uniform(rng, -2, 2);
    }
    bool handle_free = true;
    for (std::size_t i = 0; i < rank; ++i) {
      if (c.homology[i] != 0 && !ob.page().is_boundary_coordinate(i)) handle_free = false;
    }
    c.kind = handle_free ? CurveKind::boundary_parallel : CurveKind::page_curve;
    c.orientation = coin(rng) ? Sign::positive : Sign::negative;
    ob = ob.with_twist(c, sign);
  }
  return ob;
}

LinkPlacement random_placement(Rng& rng, int max_genus) {
  PlacementShape shape;
  shape.genus = uniform(rng, 0, max_genus);
  shape.boundary_count = uniform(rng, 1, 4);
  const int classes = uniform(rng, 1, 3);
  for (int k = 0; k < classes; ++k) {
    std::vector<Sign> members(static_cast<std::size_t>(uniform(rng, 1, 3)));
    for (auto& s : members) s = uniform(rng, 0, 3) == 0 ? Sign::negative : Sign::positive;
    shape.classes.push_back(std::move(members));
  }
  LinkPlacement p = make_placement(shape, rng);
  // the monodromy does not affect the schedule; vary it to exercise the ledger
  p.open_book = random_open_book(rng, shape.genus, shape.boundary_count, uniform(rng, 0, 3));
  return p;
}

TransverseWitness random_witness(Rng& rng, int max_genus) {
  const int genus = uniform(rng, 0, max_genus);
  const int boundary = uniform(rng, 1, 4);
  OpenBook ob = random_open_book(rng, genus, boundary, uniform(rng, 0, 3));
  std::vector<std::string> marks;
  for (const auto& label : ob.bindings()) {
    if (coin(rng)) marks.push_back(label);
  }
  if (marks.empty()) marks.push_back(ob.bindings()[static_cast<std::size_t>(uniform(rng, 0, boundary - 1))]);
  TransverseWitness w{ob.with_marks(marks), {}};
  for (const auto& label : w.open_book.marks()) {
    std::optional<int> sl;
    if (uniform(rng, 0, 4) != 0) sl = 2 * uniform(rng, -4, 2) + 1;
    w.link.components.push_back({"T" + label, label, sl, random_looseness(rng)});
  }
  return w;
}

LinkPlacement random_loose_planar(Rng& rng) {
  PlacementShape shape;
  shape.genus = 0;
  shape.boundary_count = uniform(rng, 1, 3);
  const int classes = uniform(rng, 1, 3);
  for (int k = 0; k < classes; ++k) {
    std::vector<Sign> members(static_cast<std::size_t>(uniform(rng, 1, 2)));
    for (auto& s : members) s = coin(rng) ? Sign::positive : Sign::negative;
    shape.classes.push_back(std::move(members));
  }
  LinkPlacement p = make_placement(shape, rng);
  for (auto& c : p.components) {
    c.loose = Looseness::loose;
    if (!c.null_homologous) {
      c.null_homologous = true;
      random_invariants(rng, c);
    }
  }
  return p;
}

Document random_document(Rng& rng) {
  Document doc;
  switch (uniform(rng, 0, 4)) {
    case 0:
      doc.payload = random_open_book(rng, uniform(rng, 0, 3), uniform(rng, 1, 4), uniform(rng, 0, 6));
      break;
    case 1:
      doc.payload = random_placement(rng);
      break;
    case 2: {
      LinkPlacement p = random_placement(rng);
      Certificate cert = build_schedule(p);
      if (coin(rng)) cert = apply_schedule(p, cert).certificate;
      doc.payload = CertificateDocument{std::move(p), std::move(cert)};
      break;
    }
    case 3: {
      const auto rt = roundtrip_sg(transverse_certificate(random_witness(rng)));
      doc.payload = coin(rng) ? rt.legendrian : rt.transverse;
      break;
    }
    default:
      doc.payload = loose_planar_pipeline(random_loose_planar(rng), uniform(rng, 0, 3));
      break;
  }
  return doc;
}

}  // namespace obk
