#include "obk/legendrian.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "obk/error.hpp"

namespace obk {

std::string_view to_string(Looseness l) {
  switch (l) {
    case Looseness::loose: return "loose";
    case Looseness::non_loose: return "non-loose";
    case Looseness::unknown: break;
  }
  return "unknown";
}

std::optional<Looseness> parse_looseness(std::string_view text) {
  if (text == "loose") return Looseness::loose;
  if (text == "non-loose") return Looseness::non_loose;
  if (text == "unknown") return Looseness::unknown;
  return std::nullopt;
}

const LinkComponent* LinkPlacement::find(std::string_view id) const {
  for (const auto& c : components) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

const LinkComponent& LinkPlacement::component(std::string_view id) const {
  if (const auto* c = find(id)) return *c;
  throw DomainError("unknown link component " + std::string(id));
}

LinkPlacement stabilize_legendrian(const LinkPlacement& p, std::string_view id, Sign sign) {
  LinkPlacement out = p;
  auto it = std::find_if(out.components.begin(), out.components.end(),
                         [&](const LinkComponent& c) { return c.id == id; });
  if (it == out.components.end()) throw DomainError("unknown link component " + std::string(id));
  if (it->tb) *it->tb -= 1;
  if (it->rot) *it->rot += to_int(sign);
  // a zig-zag adds a left twist relative to the page framing
  it->framing_offset -= 1;
  return out;
}

int pushoff_invariants(const LinkComponent& c, Sign sign) {
  if (!c.tb || !c.rot) {
    throw DomainError("component " + c.id + " has no classical invariants (not null-homologous)");
  }
  return *c.tb - to_int(sign) * *c.rot;
}

int pushoff_invariants(const LinkPlacement& p, std::string_view id, Sign sign) {
  return pushoff_invariants(p.component(id), sign);
}

namespace {

bool equal_up_to_sign(const HomologyVector& x, const HomologyVector& y) {
  if (x == y) return true;
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != -y[i]) return false;
  }
  return true;
}

}  // namespace

std::vector<Violation> validate_placement(const LinkPlacement& p) {
  std::vector<Violation> out;
  const OpenBook& ob = p.open_book;
  const Surface& page = ob.page();
  auto add = [&](const std::string& component, std::string rule, std::string message) {
    out.push_back({component, std::move(rule), std::move(message)});
  };

  std::set<std::string> ids;
  std::map<std::string, std::vector<const LinkComponent*>> classes;
  for (const auto& c : p.components) {
    if (!ids.insert(c.id).second) add(c.id, "unique-id", "duplicate component id");
    if (!ob.binding_index(c.nearest_binding)) {
      add(c.id, "binding-resolves", "nearest binding " + c.nearest_binding + " is not a binding");
    }
    const bool has_invariants = c.tb.has_value() || c.rot.has_value();
    if (c.null_homologous && !(c.tb && c.rot)) {
      add(c.id, "invariants-iff-null-homologous", "null-homologous component is missing tb/rot");
    } else if (!c.null_homologous && has_invariants) {
      add(c.id, "invariants-iff-null-homologous", "tb/rot present on a component that is not null-homologous");
    }
    if (c.curve.homology.size() != page.rank()) {
      add(c.id, "homology-dimension", "curve homology does not match the page basis");
    } else if (c.curve.kind == CurveKind::boundary_parallel) {
      for (std::size_t i = 0; i < c.curve.homology.size(); ++i) {
        if (c.curve.homology[i] != 0 && !page.is_boundary_coordinate(i)) {
          add(c.id, "boundary-parallel-support", "boundary-parallel curve has a handle coefficient");
          break;
        }
      }
    }
    if (c.curve.kind != CurveKind::link_component && c.curve.kind != CurveKind::boundary_parallel) {
      add(c.id, "curve-kind", "link components must be link-component or boundary-parallel curves");
    }
    if (c.curve.orientation != c.orientation) {
      add(c.id, "orientation", "component orientation disagrees with its curve");
    }
    if (c.parallel_class.empty()) add(c.id, "parallel-class", "missing parallel class");
    classes[c.parallel_class].push_back(&c);
  }

  for (const auto& [name, members] : classes) {
    std::vector<int> indices;
    for (const auto* m : members) indices.push_back(m->class_index);
    std::sort(indices.begin(), indices.end());
    for (std::size_t i = 1; i < indices.size(); ++i) {
      if (indices[i] == indices[i - 1]) {
        add(name, "class-index-contiguous", "duplicate class_index " + std::to_string(indices[i]));
      }
    }
    std::vector<int> unique_indices = indices;
    unique_indices.erase(std::unique(unique_indices.begin(), unique_indices.end()), unique_indices.end());
    for (std::size_t i = 0; i < unique_indices.size(); ++i) {
      if (unique_indices[i] != static_cast<int>(i) + 1) {
        add(name, "class-index-contiguous", "class indices must run 1..k");
        break;
      }
    }
    for (std::size_t i = 1; i < members.size(); ++i) {
      if (members[i]->curve.homology.size() == page.rank() && members[0]->curve.homology.size() == page.rank() &&
          !equal_up_to_sign(members[i]->curve.homology, members[0]->curve.homology)) {
        add(members[i]->id, "parallel-homology", "parallel copies must share a homology class up to sign");
      }
    }
  }

  for (std::size_t i = 0; i < p.components.size(); ++i) {
    for (std::size_t j = i + 1; j < p.components.size(); ++j) {
      const auto& x = p.components[i].curve.homology;
      const auto& y = p.components[j].curve.homology;
      if (x.size() != page.rank() || y.size() != page.rank()) continue;
      if (intersection(page, x, y) != 0) {
        add(p.components[i].id, "disjoint-components",
            "algebraic intersection with " + p.components[j].id + " is nonzero");
      }
    }
  }
  return out;
}

LinkPlacement embed_components(LinkPlacement p, const IntMatrix& embedding) {
  for (auto& c : p.components) c.curve.homology = embedding.apply(c.curve.homology);
  return p;
}

}  // namespace obk
