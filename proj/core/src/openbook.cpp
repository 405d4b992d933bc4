#include "obk/openbook.hpp"

#include <algorithm>
#include <set>

#include "obk/error.hpp"

namespace obk {

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char ch) {
    return (ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9') || ch == '_' ||
           ch == '.' || ch == '\'' || ch == '^' || ch == '-';
  });
}

std::string lowest_free_label(const std::vector<std::string>& used) {
  for (std::size_t n = 1;; ++n) {
    std::string candidate = "B" + std::to_string(n);
    if (std::find(used.begin(), used.end(), candidate) == used.end()) return candidate;
  }
}

}  // namespace

OpenBook::OpenBook(Surface page, std::vector<CurveRef> curves, MonodromyWord monodromy,
                   std::vector<std::string> bindings, std::vector<std::string> marks)
    : page_(std::move(page)),
      curves_(std::move(curves)),
      monodromy_(std::move(monodromy)),
      bindings_(std::move(bindings)),
      marks_(std::move(marks)) {
  if (bindings_.size() != static_cast<std::size_t>(page_.boundary_count())) {
    throw DomainError("open book needs one binding label per boundary component (" +
                      std::to_string(page_.boundary_count()) + "), got " + std::to_string(bindings_.size()));
  }
  std::set<std::string> seen;
  for (const auto& label : bindings_) {
    if (!is_identifier(label)) throw DomainError("invalid binding label '" + label + "'");
    if (!seen.insert(label).second) throw DomainError("duplicate binding label " + label);
  }
  std::set<std::string> curve_ids;
  for (const auto& c : curves_) {
    if (!is_identifier(c.id)) throw DomainError("invalid curve id '" + c.id + "'");
    if (!curve_ids.insert(c.id).second) throw DomainError("duplicate curve id " + c.id);
    check_dimension(page_, c.homology, "curve " + c.id);
    if (c.kind == CurveKind::boundary_parallel) {
      for (std::size_t i = 0; i < c.homology.size(); ++i) {
        if (c.homology[i] != 0 && !page_.is_boundary_coordinate(i)) {
          throw DomainError("boundary-parallel curve " + c.id + " has a handle coefficient");
        }
      }
    }
  }
  for (const auto& t : monodromy_.twists) {
    if (!curve_ids.contains(t.curve_id)) throw DomainError("twist references unknown curve " + t.curve_id);
  }
  std::vector<std::string> ordered;
  for (const auto& label : bindings_) {
    const auto n = std::count(marks_.begin(), marks_.end(), label);
    if (n > 1) throw DomainError("binding " + label + " marked twice");
    if (n == 1) ordered.push_back(label);
  }
  if (ordered.size() != marks_.size()) throw DomainError("sub-binding marks must name existing bindings");
  marks_ = std::move(ordered);
}

OpenBook::OpenBook() : OpenBook(trivial(0, 1)) {}

OpenBook OpenBook::trivial(int genus, int boundary_count) {
  Surface page = Surface::make(genus, boundary_count);
  std::vector<std::string> bindings;
  for (int k = 1; k <= boundary_count; ++k) bindings.push_back("B" + std::to_string(k));
  return OpenBook(std::move(page), {}, {}, std::move(bindings));
}

const CurveRef* OpenBook::find_curve(std::string_view id) const {
  for (const auto& c : curves_) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

const CurveRef& OpenBook::curve(std::string_view id) const {
  if (const auto* c = find_curve(id)) return *c;
  throw DomainError("unknown curve " + std::string(id));
}

std::optional<std::size_t> OpenBook::binding_index(std::string_view label) const {
  for (std::size_t i = 0; i < bindings_.size(); ++i) {
    if (bindings_[i] == label) return i;
  }
  return std::nullopt;
}

std::size_t OpenBook::require_binding(std::string_view label) const {
  if (auto i = binding_index(label)) return *i;
  throw DomainError("unknown binding " + std::string(label));
}

const HomologyVector& OpenBook::binding_class(std::string_view label) const {
  return page_.boundary_classes()[require_binding(label)];
}

bool OpenBook::is_marked(std::string_view label) const {
  return std::find(marks_.begin(), marks_.end(), label) != marks_.end();
}

std::string OpenBook::fresh_binding_label() const { return lowest_free_label(bindings_); }

std::string OpenBook::fresh_curve_id(std::string_view stem) const {
  std::string candidate(stem);
  for (int n = 2; find_curve(candidate) != nullptr; ++n) candidate = std::string(stem) + "_" + std::to_string(n);
  return candidate;
}

OpenBook OpenBook::with_marks(std::vector<std::string> marks) const {
  return OpenBook(page_, curves_, monodromy_, bindings_, std::move(marks));
}

OpenBook OpenBook::with_twist(const CurveRef& curve, Sign sign) const {
  std::vector<CurveRef> curves = curves_;
  if (const auto* existing = find_curve(curve.id)) {
    if (!(*existing == curve)) throw DomainError("curve id " + curve.id + " already names a different curve");
  } else {
    curves.push_back(curve);
  }
  MonodromyWord word = monodromy_;
  word.twists.push_back({curve.id, sign});
  return OpenBook(page_, std::move(curves), std::move(word), bindings_, marks_);
}

HandleAttachment preview_attachment(const OpenBook& ob, const StabilizationFeet& feet) {
  const std::size_t j = ob.require_binding(feet.binding);
  if (feet.is_same_boundary()) return attach_handle(ob.page(), HandleFeet::same_boundary(j));
  const std::size_t k = ob.require_binding(*feet.other);
  return attach_handle(ob.page(), HandleFeet::different_boundaries(j, k));
}

StabilizationResult stabilize(const OpenBook& ob, const StabilizationFeet& feet, const CurveRef& c, Sign sign) {
  HandleAttachment att = preview_attachment(ob, feet);
  check_dimension(att.surface, c.homology, "stabilization curve " + c.id);
  const Coeff over = c.homology[att.core_coordinate];
  if (over != 1 && over != -1) {
    throw DomainError("stabilization curve " + c.id + " must cross the co-core of the new handle exactly once");
  }
  if (ob.find_curve(c.id) != nullptr) throw DomainError("curve id " + c.id + " already in use");

  std::vector<CurveRef> curves;
  curves.reserve(ob.curves().size() + 1);
  for (const auto& old : ob.curves()) {
    CurveRef moved = old;
    moved.homology = att.embed(old.homology);
    curves.push_back(std::move(moved));
  }
  curves.push_back(c);

  StabilizationRecord record;
  record.feet = feet;
  record.twist_curve = c;
  record.sign = sign;
  record.contact_preserving = sign == Sign::positive;
  record.core_coordinate = att.core_coordinate;

  const auto& old_bindings = ob.bindings();
  std::vector<std::string> bindings(static_cast<std::size_t>(att.surface.boundary_count()));
  for (std::size_t i = 0; i < old_bindings.size(); ++i) {
    const std::size_t target = att.component_map[i];
    // merged component keeps the label of the lower old index
    if (bindings[target].empty()) bindings[target] = old_bindings[i];
    record.relabeling[old_bindings[i]] = bindings[target];
  }
  if (att.new_component) {
    std::string fresh = ob.fresh_binding_label();
    bindings[*att.new_component] = fresh;
    record.new_binding = std::move(fresh);
  }

  std::vector<std::string> marks;
  for (const auto& m : ob.marks()) {
    const auto& relabeled = record.relabeling.at(m);
    if (std::find(marks.begin(), marks.end(), relabeled) == marks.end()) marks.push_back(relabeled);
  }

  MonodromyWord word = ob.monodromy();
  word.twists.push_back({c.id, sign});
  record.embedding = std::move(att.embedding);
  OpenBook next(std::move(att.surface), std::move(curves), std::move(word), std::move(bindings), std::move(marks));
  return {std::move(next), std::move(record)};
}

StabilizationResult positive_stabilize(const OpenBook& ob, const StabilizationFeet& feet, const CurveRef& c) {
  return stabilize(ob, feet, c, Sign::positive);
}

StabilizationResult negative_stabilize(const OpenBook& ob, const StabilizationFeet& feet, const CurveRef& c) {
  return stabilize(ob, feet, c, Sign::negative);
}

OpenBook destabilize(const OpenBook& ob, const StabilizationRecord& record) {
  if (!record.feet.is_same_boundary() || !record.new_binding) {
    throw DomainError("only same-boundary stabilizations can be undone");
  }
  const auto& word = ob.monodromy().twists;
  if (word.empty() || word.back().curve_id != record.twist_curve.id || word.back().sign != record.sign) {
    throw DomainError("stabilization twist is not the last word entry");
  }
  const Surface& page = ob.page();
  const auto b = static_cast<std::size_t>(page.boundary_count());
  if (ob.bindings().back() != *record.new_binding) {
    throw DomainError("split-off binding is not the last boundary component");
  }
  const std::size_t j = ob.require_binding(record.relabeling.at(record.feet.binding));
  if (j + 1 == b) throw DomainError("stabilization feet coincide with the split-off binding");
  const std::size_t rank = page.rank();
  const std::size_t kappa = rank - 1;

  auto truncate = [&](const HomologyVector& v, std::string_view what) {
    if (v[kappa] != 0) throw DomainError(std::string(what) + " runs over the handle being removed");
    return HomologyVector(v.begin(), v.end() - 1);
  };

  std::vector<HomologyVector> classes;
  for (std::size_t k = 0; k + 1 < b; ++k) {
    HomologyVector v = page.boundary_classes()[k];
    if (k == j) {
      const auto& split = page.boundary_classes()[b - 1];
      for (std::size_t c = 0; c < rank; ++c) v[c] += split[c];
    }
    classes.push_back(truncate(v, "boundary class"));
  }
  std::vector<std::vector<Coeff>> exprs;
  for (std::size_t i = 0; i + 1 < page.boundary_expressions().size(); ++i) {
    const auto& e = page.boundary_expressions()[i];
    if (e[b - 1] != e[j]) throw DomainError("d-class does not descend to the destabilized page");
    exprs.emplace_back(e.begin(), e.end() - 1);
  }
  Surface smaller = Surface::from_tables(page.genus(), page.boundary_count() - 1, std::move(classes), std::move(exprs));

  MonodromyWord shorter{std::vector<Twist>(word.begin(), word.end() - 1)};
  const bool still_used = std::any_of(shorter.twists.begin(), shorter.twists.end(),
                                      [&](const Twist& t) { return t.curve_id == record.twist_curve.id; });
  std::vector<CurveRef> curves;
  for (const auto& c : ob.curves()) {
    if (c.id == record.twist_curve.id && !still_used) continue;
    CurveRef moved = c;
    moved.homology = truncate(c.homology, "curve " + c.id);
    curves.push_back(std::move(moved));
  }
  std::vector<std::string> bindings(ob.bindings().begin(), ob.bindings().end() - 1);
  std::vector<std::string> marks;
  for (const auto& m : ob.marks()) {
    if (m != *record.new_binding) marks.push_back(m);
  }
  return OpenBook(std::move(smaller), std::move(curves), std::move(shorter), std::move(bindings), std::move(marks));
}

IntMatrix monodromy_homology_action(const OpenBook& ob) {
  IntMatrix m = IntMatrix::identity(ob.page().rank());
  for (const auto& t : ob.monodromy().twists) {
    m = m * twist_matrix(ob.page(), ob.curve(t.curve_id).homology, t.sign);
  }
  return m;
}

}  // namespace obk
