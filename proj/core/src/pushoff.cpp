#include "obk/pushoff.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "obk/error.hpp"
#include "obk/interchange.hpp"

namespace obk {

namespace {

constexpr std::string_view kCaseNames[] = {"1a", "1bi", "1bii", "2a", "2bi", "2bii"};

std::string describe(const std::vector<Violation>& violations) {
  std::string out = "invalid placement:";
  for (const auto& v : violations) {
    out += " [" + v.rule + (v.component.empty() ? "" : " " + v.component) + ": " + v.message + "]";
  }
  return out;
}

}  // namespace

std::string_view to_string(Case c) { return kCaseNames[static_cast<int>(c)]; }

std::optional<Case> parse_case(std::string_view text) {
  for (int i = 0; i < 6; ++i) {
    if (kCaseNames[i] == text) return static_cast<Case>(i);
  }
  return std::nullopt;
}

std::string_view to_string(StepKind k) { return k == StepKind::pushoff ? "pushoff" : "aux"; }

std::optional<StepKind> parse_step_kind(std::string_view text) {
  if (text == "pushoff") return StepKind::pushoff;
  if (text == "aux") return StepKind::aux_boundary_parallel;
  return std::nullopt;
}

std::size_t Certificate::aux_count() const {
  return static_cast<std::size_t>(std::count_if(steps.begin(), steps.end(), [](const ScheduleStep& s) {
    return s.kind == StepKind::aux_boundary_parallel;
  }));
}

std::size_t Certificate::pushoff_count() const { return steps.size() - aux_count(); }

bool Certificate::has_tag(std::string_view tag) const {
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

InvalidPlacement::InvalidPlacement(std::vector<Violation> violations)
    : DomainError(describe(violations)), violations_(std::move(violations)) {}

namespace {

/// Parallel classes in order of first appearance, members sorted by class_index.
std::vector<std::vector<const LinkComponent*>> parallel_classes(const LinkPlacement& p) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const LinkComponent*>> members;
  for (const auto& c : p.components) {
    if (!members.contains(c.parallel_class)) order.push_back(c.parallel_class);
    members[c.parallel_class].push_back(&c);
  }
  std::vector<std::vector<const LinkComponent*>> out;
  for (const auto& name : order) {
    auto m = members[name];
    std::sort(m.begin(), m.end(), [](const auto* x, const auto* y) { return x->class_index < y->class_index; });
    out.push_back(std::move(m));
  }
  return out;
}

bool has_handle_part(const Surface& page, const HomologyVector& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0 && !page.is_boundary_coordinate(i)) return true;
  }
  return false;
}

HomologyVector padded(const HomologyVector& v, std::size_t rank) {
  HomologyVector out = v;
  out.resize(rank, 0);
  return out;
}

void require_schedulable(const LinkPlacement& p) {
  auto violations = validate_placement(p);
  if (!violations.empty()) throw InvalidPlacement(std::move(violations));
  if (p.components.empty()) throw DomainError("empty link");
  for (const auto& c : p.components) {
    if (c.framing_offset != 0) {
      throw DomainError("framing offset must be zero (component " + c.id + " has " +
                        std::to_string(c.framing_offset) + ")");
    }
  }
}

bool bounds_own_bindings(const LinkPlacement& p) {
  std::set<std::string> used;
  for (const auto& c : p.components) {
    if (c.curve.kind != CurveKind::boundary_parallel) return false;
    if (c.curve.oriented_class() != p.open_book.binding_class(c.nearest_binding)) return false;
    if (!used.insert(c.nearest_binding).second) return false;
  }
  return true;
}

std::string fresh_label(const std::vector<std::string>& used) {
  for (std::size_t n = 1;; ++n) {
    std::string candidate = "B" + std::to_string(n);
    if (std::find(used.begin(), used.end(), candidate) == used.end()) return candidate;
  }
}

}  // namespace

Case classify(const LinkPlacement& p) {
  auto violations = validate_placement(p);
  if (!violations.empty()) throw InvalidPlacement(std::move(violations));
  const bool planar = p.open_book.page().genus() == 0;
  bool parallel = false;
  bool mixed = false;
  for (const auto& members : parallel_classes(p)) {
    if (members.size() >= 2) parallel = true;
    for (const auto* m : members) {
      if (m->orientation != members.front()->orientation) mixed = true;
    }
  }
  if (!parallel) return planar ? Case::c1a : Case::c2a;
  if (!mixed) return planar ? Case::c1bi : Case::c2bi;
  return planar ? Case::c1bii : Case::c2bii;
}

CrucialStep lemma_crucial_step(const OpenBook& ob, const LinkComponent& k, std::string_view gamma_target,
                               std::string curve_id) {
  if (k.framing_offset != 0) {
    throw DomainError("framing offset must be zero (component " + k.id + " has " + std::to_string(k.framing_offset) +
                      ")");
  }
  if (!ob.binding_index(gamma_target)) {
    throw DomainError("unreachable target binding " + std::string(gamma_target) + " for component " + k.id);
  }
  check_dimension(ob.page(), k.curve.homology, "component " + k.id);
  const auto feet = StabilizationFeet::same_boundary(std::string(gamma_target));
  HandleAttachment att = preview_attachment(ob, feet);

  CurveRef alpha;
  alpha.id = curve_id.empty() ? ob.fresh_curve_id("alpha_" + k.id) : std::move(curve_id);
  alpha.kind = CurveKind::stabilization_curve;
  alpha.homology = att.embed(k.curve.oriented_class());
  alpha.homology[att.core_coordinate] += 1;

  auto result = positive_stabilize(ob, feet, alpha);
  std::optional<int> sl;
  if (k.tb && k.rot) sl = pushoff_invariants(k, Sign::positive);
  return CrucialStep{std::move(result.open_book), *result.record.new_binding, std::move(alpha), sl,
                     std::move(result.record.embedding)};
}

Certificate build_schedule(const LinkPlacement& p) {
  require_schedulable(p);
  Certificate cert;
  cert.input_digest = placement_digest(p);
  cert.case_tag = classify(p);
  const OpenBook& ob = p.open_book;
  const Surface& page = ob.page();

  struct State {
    std::string binding;
    std::optional<int> tb;
    std::optional<int> rot;
  };
  std::map<std::string, State> state;
  for (const auto& c : p.components) state[c.id] = {c.nearest_binding, c.tb, c.rot};

  std::map<std::string, std::string> mapped;
  const bool shortcut = (cert.case_tag == Case::c1a) && bounds_own_bindings(p);
  if (shortcut) {
    cert.tags.emplace_back(kTagBoundsOwnBinding);
    for (const auto& c : p.components) mapped[c.id] = c.nearest_binding;
  } else {
    std::vector<std::string> bindings = ob.bindings();
    std::set<std::string> curve_ids;
    for (const auto& c : ob.curves()) curve_ids.insert(c.id);
    auto fresh_curve = [&](std::size_t step_number) {
      std::string stem = "c" + std::to_string(step_number);
      std::string id = stem;
      for (int n = 2; curve_ids.contains(id); ++n) id = stem + "_" + std::to_string(n);
      curve_ids.insert(id);
      return id;
    };
    std::size_t rank = page.rank();

    for (const auto& members : parallel_classes(p)) {
      // Start from the innermost copy when it is positively oriented, else
      // from the outermost; the arc from that end then lies to its right.
      std::vector<const LinkComponent*> order = members;
      if (order.front()->orientation != Sign::positive) std::reverse(order.begin(), order.end());

      std::string current = order.front()->nearest_binding;
      std::optional<std::size_t> current_origin;
      std::vector<std::size_t> class_steps;

      auto push_step = [&](ScheduleStep step) {
        const std::size_t index = cert.steps.size();
        step.depends_on = class_steps;
        for (std::size_t i = 0; i < index; ++i) {
          if (std::find(class_steps.begin(), class_steps.end(), i) == class_steps.end()) {
            step.disjoint_from.push_back(i);
          }
        }
        step.feet = current;
        step.feet_step = current_origin;
        step.new_binding = fresh_label(bindings);
        bindings.push_back(step.new_binding);
        ++rank;
        step.twist_curve.id = fresh_curve(index + 1);
        step.twist_curve.homology.assign(rank, 0);
        step.twist_curve.homology[rank - 1] = 1;
        cert.steps.push_back(std::move(step));
        class_steps.push_back(index);
        return index;
      };

      for (std::size_t idx = 0; idx < order.size(); ++idx) {
        const LinkComponent& comp = *order[idx];
        if (idx > 0 && comp.orientation != order[idx - 1]->orientation) {
          // Orientation reversal: stabilize along a boundary-parallel curve
          // at the current binding, push the copies over the new handle and
          // continue from the new binding.
          ScheduleStep aux;
          aux.kind = StepKind::aux_boundary_parallel;
          aux.pushed = comp.id;
          aux.twist_curve.kind = CurveKind::boundary_parallel;
          const std::size_t index = push_step(std::move(aux));
          current = cert.steps[index].new_binding;
          current_origin = index;
          auto& s = state[comp.id];
          if (s.tb) *s.tb -= 1;
          if (s.rot) *s.rot -= 1;
          for (std::size_t rest = idx; rest < order.size(); ++rest) state[order[rest]->id].binding = current;
        }
        ScheduleStep step;
        step.kind = StepKind::pushoff;
        step.target = comp.id;
        step.twist_curve.kind = CurveKind::stabilization_curve;
        const std::size_t index = push_step(std::move(step));
        auto& curve = cert.steps[index].twist_curve.homology;
        const HomologyVector k = padded(comp.curve.oriented_class(), rank);
        for (std::size_t i = 0; i < rank; ++i) curve[i] += k[i];
        mapped[comp.id] = cert.steps[index].new_binding;
      }

      if (page.genus() > 0 && members.size() >= 2 && !has_handle_part(page, members.front()->curve.homology) &&
          !cert.has_tag(kTagRemarkExtension)) {
        cert.tags.emplace_back(kTagRemarkExtension);
      }
    }
  }

  cert.order_free = true;
  for (std::size_t i = 0; i < cert.steps.size() && cert.order_free; ++i) {
    if (cert.steps[i].disjoint_from.size() != i) cert.order_free = false;
  }
  for (const auto& c : p.components) {
    cert.sub_binding_map.emplace_back(c.id, mapped.at(c.id));
    const auto& s = state.at(c.id);
    std::optional<int> sl;
    if (s.tb && s.rot) sl = *s.tb - *s.rot;
    cert.transverse.components.push_back({c.id, mapped.at(c.id), sl, c.loose});
  }
  return cert;
}

namespace {

struct Replay {
  OpenBook open_book;
  std::vector<LedgerEntry> ledger;
  std::vector<LinkComponent> components;
  /// binding created by each step (indexed by step)
  std::vector<std::string> created;
  /// coordinate of each step's new d-class (indexed by step)
  std::vector<std::size_t> coordinate;
};

LinkComponent& find_component(std::vector<LinkComponent>& comps, const std::string& id) {
  for (auto& c : comps) {
    if (c.id == id) return c;
  }
  throw DomainError("certificate step names unknown component " + id);
}

// Replays `cert` in `order`. canonical=true additionally checks every stored
// label and twist curve against what the replay produces.
Replay replay(const LinkPlacement& p, const Certificate& cert, std::span<const std::size_t> order, bool canonical) {
  Replay r{p.open_book, {}, p.components, std::vector<std::string>(cert.steps.size()),
           std::vector<std::size_t>(cert.steps.size())};
  std::vector<bool> done(cert.steps.size(), false);
  auto mismatch = [](std::size_t step, const std::string& what) {
    return DomainError("ledger replay mismatch at step " + std::to_string(step + 1) + ": " + what);
  };

  for (const std::size_t s : order) {
    const ScheduleStep& step = cert.steps.at(s);
    std::string feet = step.feet;
    if (step.feet_step) {
      const std::size_t origin = *step.feet_step;
      if (origin >= cert.steps.size() || !done[origin]) {
        throw mismatch(s, "feet binding created by a step that has not run");
      }
      feet = r.created[origin];
      if (canonical && feet != step.feet) throw mismatch(s, "feet label " + step.feet + " vs " + feet);
    }

    CurveRef curve;
    std::string new_binding;
    IntMatrix embedding;
    if (step.kind == StepKind::pushoff) {
      if (!step.target) throw mismatch(s, "pushoff step without target");
      const LinkComponent& k = find_component(r.components, *step.target);
      auto crucial = lemma_crucial_step(r.open_book, k, feet, step.twist_curve.id);
      curve = std::move(crucial.twist_curve);
      new_binding = std::move(crucial.new_binding);
      embedding = std::move(crucial.embedding);
      r.open_book = std::move(crucial.open_book);
    } else {
      const auto sfeet = StabilizationFeet::same_boundary(feet);
      HandleAttachment att = preview_attachment(r.open_book, sfeet);
      curve.id = step.twist_curve.id;
      curve.kind = CurveKind::boundary_parallel;
      curve.homology = att.surface.unit(att.core_coordinate);
      auto result = positive_stabilize(r.open_book, sfeet, curve);
      new_binding = *result.record.new_binding;
      embedding = std::move(result.record.embedding);
      r.open_book = std::move(result.open_book);
      if (step.pushed) {
        LinkComponent& pushed = find_component(r.components, *step.pushed);
        if (pushed.tb) *pushed.tb -= 1;
        if (pushed.rot) *pushed.rot -= 1;
      }
    }
    if (canonical) {
      if (curve.homology != step.twist_curve.homology || curve.kind != step.twist_curve.kind) {
        throw mismatch(s, "twist curve " + step.twist_curve.id + " differs from the replayed curve");
      }
      if (new_binding != step.new_binding) {
        throw mismatch(s, "new binding " + step.new_binding + " vs " + new_binding);
      }
    }
    for (auto& c : r.components) c.curve.homology = embedding.apply(c.curve.homology);
    if (step.kind == StepKind::aux_boundary_parallel) {
      // remaining copies of the class now use the new binding
      for (const auto& later : cert.steps) {
        if (later.feet_step == s && later.target) find_component(r.components, *later.target).nearest_binding = new_binding;
      }
    }
    r.created[s] = new_binding;
    r.coordinate[s] = r.open_book.page().rank() - 1;
    done[s] = true;
    const Surface& page = r.open_book.page();
    r.ledger.push_back({page.genus(), page.boundary_count(), page.euler_char(), r.open_book.monodromy().size()});
  }
  return r;
}

}  // namespace

AppliedSchedule apply_schedule(const LinkPlacement& p, const Certificate& cert) {
  if (cert.input_digest != placement_digest(p)) {
    throw DomainError("certificate input digest does not match the placement");
  }
  require_schedulable(p);

  std::vector<std::size_t> order(cert.steps.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Replay r = replay(p, cert, order, true);

  if (!cert.ledger.empty() && cert.ledger != r.ledger) {
    for (std::size_t i = 0; i < std::max(cert.ledger.size(), r.ledger.size()); ++i) {
      if (i >= cert.ledger.size() || i >= r.ledger.size() || !(cert.ledger[i] == r.ledger[i])) {
        throw DomainError("ledger replay mismatch at step " + std::to_string(i + 1));
      }
    }
  }

  const Surface& before = p.open_book.page();
  const Surface& after = r.open_book.page();
  if (after.genus() != before.genus()) throw DomainError("ledger replay mismatch: genus changed");
  if (after.boundary_count() != before.boundary_count() + static_cast<int>(cert.steps.size())) {
    throw DomainError("ledger replay mismatch: boundary growth differs from step count");
  }
  const auto& word = r.open_book.monodromy().twists;
  for (std::size_t i = p.open_book.monodromy().size(); i < word.size(); ++i) {
    if (word[i].sign != Sign::positive) throw DomainError("ledger replay mismatch: negative twist appended");
  }

  std::vector<std::pair<std::string, std::string>> expected_map;
  for (const auto& c : p.components) {
    std::optional<std::string> binding;
    for (std::size_t s = 0; s < cert.steps.size(); ++s) {
      if (cert.steps[s].kind == StepKind::pushoff && cert.steps[s].target == c.id) binding = r.created[s];
    }
    if (!binding && cert.steps.empty() && cert.has_tag(kTagBoundsOwnBinding)) binding = c.nearest_binding;
    if (!binding) throw DomainError("ledger replay mismatch: component " + c.id + " is never realized");
    expected_map.emplace_back(c.id, *binding);
  }
  if (expected_map != cert.sub_binding_map) throw DomainError("ledger replay mismatch: sub-binding map differs");
  for (const auto& t : cert.transverse.components) {
    const LinkComponent* c = nullptr;
    for (const auto& candidate : r.components) {
      if (candidate.id == t.id) c = &candidate;
    }
    if (c == nullptr) throw DomainError("transverse record names unknown component " + t.id);
    std::optional<int> sl;
    if (c->tb && c->rot) sl = *c->tb - *c->rot;
    if (sl != t.sl) throw DomainError("ledger replay mismatch: self-linking of " + t.id + " differs");
  }

  std::vector<std::string> marks = r.open_book.marks();
  for (const auto& [component, binding] : cert.sub_binding_map) {
    if (!r.open_book.binding_index(binding)) {
      throw DomainError("sub-binding map names missing binding " + binding + " for " + component);
    }
    if (std::find(marks.begin(), marks.end(), binding) == marks.end()) marks.push_back(binding);
  }
  for (const auto& [component, binding] : cert.sub_binding_map) {
    for (auto& c : r.components) {
      if (c.id == component) c.nearest_binding = binding;
    }
  }

  AppliedSchedule out{r.open_book.with_marks(std::move(marks)), cert, std::move(r.components)};
  out.certificate.ledger = std::move(r.ledger);
  return out;
}

PermutationReport permute_and_check(const LinkPlacement& p, const Certificate& cert,
                                    std::span<const std::size_t> perm) {
  const std::size_t n = cert.steps.size();
  std::vector<std::size_t> sorted(perm.begin(), perm.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted.size() != n || sorted[i] != i) throw DomainError("not a permutation of the certificate steps");
  }

  PermutationReport report;
  if (!cert.order_free) {
    std::vector<std::size_t> position(n);
    for (std::size_t q = 0; q < n; ++q) position[perm[q]] = q;
    for (std::size_t s = 0; s < n; ++s) {
      for (const std::size_t d : cert.steps[s].depends_on) {
        if (position[d] > position[s]) {
          report.violations.push_back("step " + std::to_string(s + 1) + " must follow step " + std::to_string(d + 1));
        }
      }
    }
    if (!report.violations.empty()) return report;
  }

  std::vector<std::size_t> identity(n);
  std::iota(identity.begin(), identity.end(), std::size_t{0});
  const Replay base = replay(p, cert, identity, false);
  const Replay moved = replay(p, cert, perm, false);
  report.applied = true;

  if (base.ledger != moved.ledger) {
    report.violations.push_back("ledger differs under permutation");
    return report;
  }
  // Both replays share the original coordinates; step s owns coordinate
  // base.coordinate[s] in one and moved.coordinate[s] in the other.
  const std::size_t rank = base.open_book.page().rank();
  std::vector<std::size_t> to_moved(rank);
  std::iota(to_moved.begin(), to_moved.end(), std::size_t{0});
  for (std::size_t s = 0; s < n; ++s) to_moved[base.coordinate[s]] = moved.coordinate[s];

  const IntMatrix a = monodromy_homology_action(base.open_book);
  const IntMatrix b = monodromy_homology_action(moved.open_book);
  for (std::size_t i = 0; i < rank; ++i) {
    for (std::size_t j = 0; j < rank; ++j) {
      if (a(i, j) != b(to_moved[i], to_moved[j])) {
        report.violations.push_back("monodromy homology action differs under permutation");
        return report;
      }
    }
  }
  report.equivalent = true;
  return report;
}

}  // namespace obk
