#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "obk/openbook.hpp"

namespace obk {

enum class Looseness { unknown, loose, non_loose };

std::string_view to_string(Looseness l);
std::optional<Looseness> parse_looseness(std::string_view text);

/// One Legendrian component sitting on a page.
struct LinkComponent {
  std::string id;
  CurveRef curve;
  Sign orientation = Sign::positive;
  /// Components are parallel copies on the page iff they share this label.
  std::string parallel_class;
  /// 1 = innermost, increasing outward.
  int class_index = 1;
  std::string nearest_binding;
  /// contact framing minus page framing
  int framing_offset = 0;
  bool null_homologous = false;
  std::optional<int> tb;
  std::optional<int> rot;
  /// Looseness of the link this component represents; an input, never computed.
  Looseness loose = Looseness::unknown;

  friend bool operator==(const LinkComponent&, const LinkComponent&) = default;
};

struct LinkPlacement {
  OpenBook open_book;
  std::vector<LinkComponent> components;

  const LinkComponent* find(std::string_view id) const;
  const LinkComponent& component(std::string_view id) const;

  friend bool operator==(const LinkPlacement&, const LinkPlacement&) = default;
};

struct TransverseComponent {
  std::string id;
  /// binding realizing the component, when it is a sub-binding
  std::optional<std::string> binding;
  std::optional<int> sl;
  Looseness loose = Looseness::unknown;

  friend bool operator==(const TransverseComponent&, const TransverseComponent&) = default;
};

struct TransverseLinkRecord {
  std::vector<TransverseComponent> components;
  friend bool operator==(const TransverseLinkRecord&, const TransverseLinkRecord&) = default;
};

/// tb -= 1, rot += sign, framing_offset -= 1 on one component.
LinkPlacement stabilize_legendrian(const LinkPlacement& p, std::string_view id, Sign sign);

/// Self-linking number of the positive (sign=+) or negative push-off:
/// sl = tb ∓ rot. Throws if the component has no classical invariants.
int pushoff_invariants(const LinkComponent& c, Sign sign = Sign::positive);
int pushoff_invariants(const LinkPlacement& p, std::string_view id, Sign sign = Sign::positive);

struct Violation {
  std::string component;  // empty for placement-wide rules
  std::string rule;
  std::string message;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Empty iff every placement invariant holds.
std::vector<Violation> validate_placement(const LinkPlacement& p);

/// Re-expresses every component curve after a page change.
LinkPlacement embed_components(LinkPlacement p, const IntMatrix& embedding);

}  // namespace obk
