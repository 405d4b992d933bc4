#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "obk/surface.hpp"

namespace obk {

struct Twist {
  std::string curve_id;
  Sign sign = Sign::positive;
  friend bool operator==(const Twist&, const Twist&) = default;
};

/// Ordered signed Dehn twists. Entries compose left to right after the base
/// monodromy: [c_1, ..., c_n] means φ ∘ D_{c_1} ∘ ... ∘ D_{c_n}.
struct MonodromyWord {
  std::vector<Twist> twists;
  std::size_t size() const { return twists.size(); }
  friend bool operator==(const MonodromyWord&, const MonodromyWord&) = default;
};

/// Page + monodromy + binding labels, one per boundary component (binding k
/// is boundary component k of the page). Curves referenced by the word live
/// in a registry stored in page coordinates and are re-embedded whenever the
/// page changes.
class OpenBook {
 public:
  /// The disk with identity monodromy.
  OpenBook();
  /// Throws DomainError when any invariant fails.
  OpenBook(Surface page, std::vector<CurveRef> curves, MonodromyWord monodromy, std::vector<std::string> bindings,
           std::vector<std::string> marks = {});

  /// Page Σ_{g,b} with bindings B1..Bb and the identity monodromy.
  static OpenBook trivial(int genus, int boundary_count);

  const Surface& page() const { return page_; }
  const std::vector<CurveRef>& curves() const { return curves_; }
  const MonodromyWord& monodromy() const { return monodromy_; }
  const std::vector<std::string>& bindings() const { return bindings_; }
  /// Sub-binding marks, kept in binding order.
  const std::vector<std::string>& marks() const { return marks_; }

  const CurveRef* find_curve(std::string_view id) const;
  const CurveRef& curve(std::string_view id) const;
  std::optional<std::size_t> binding_index(std::string_view label) const;
  std::size_t require_binding(std::string_view label) const;
  const HomologyVector& binding_class(std::string_view label) const;
  bool is_marked(std::string_view label) const;

  /// Lowest unused label of the form B<n>.
  std::string fresh_binding_label() const;
  /// `stem` if unused, else stem_2, stem_3, ...
  std::string fresh_curve_id(std::string_view stem) const;

  OpenBook with_marks(std::vector<std::string> marks) const;
  /// Appends a twist along a registered curve or along a new one.
  OpenBook with_twist(const CurveRef& curve, Sign sign) const;

  friend bool operator==(const OpenBook&, const OpenBook&) = default;

 private:
  Surface page_;
  std::vector<CurveRef> curves_;
  MonodromyWord monodromy_;
  std::vector<std::string> bindings_;
  std::vector<std::string> marks_;
};

/// Feet named by binding label.
struct StabilizationFeet {
  std::string binding;
  std::optional<std::string> other;  // different-boundaries variant

  static StabilizationFeet same_boundary(std::string label) { return {std::move(label), std::nullopt}; }
  static StabilizationFeet different_boundaries(std::string a, std::string b) { return {std::move(a), std::move(b)}; }
  bool is_same_boundary() const { return !other.has_value(); }
};

/// What a stabilization did; enough to undo it or replay it elsewhere.
struct StabilizationRecord {
  StabilizationFeet feet;
  CurveRef twist_curve;
  Sign sign = Sign::positive;
  /// Positive stabilization preserves the supported contact structure;
  /// a negative one may not. Recorded, not verified.
  bool contact_preserving = true;
  std::optional<std::string> new_binding;
  /// old binding label -> new binding label (every old label appears)
  std::map<std::string, std::string> relabeling;
  IntMatrix embedding;
  std::size_t core_coordinate = 0;
};

struct StabilizationResult {
  OpenBook open_book;
  StabilizationRecord record;
};

/// Builds the page the stabilization would produce, so callers can express
/// the twist curve in the new coordinates.
HandleAttachment preview_attachment(const OpenBook& ob, const StabilizationFeet& feet);

/// Attaches a 1-handle and appends a twist along `c`, given in the new page's
/// coordinates. `c` must have coefficient ±1 on the handle's core coordinate.
StabilizationResult positive_stabilize(const OpenBook& ob, const StabilizationFeet& feet, const CurveRef& c);
StabilizationResult negative_stabilize(const OpenBook& ob, const StabilizationFeet& feet, const CurveRef& c);
StabilizationResult stabilize(const OpenBook& ob, const StabilizationFeet& feet, const CurveRef& c, Sign sign);

/// Inverse of a same-boundary stabilization that is still the last move:
/// drops the appended twist, the handle and the split-off binding.
OpenBook destabilize(const OpenBook& ob, const StabilizationRecord& record);

/// Product of transvections in word order (empty word -> identity).
IntMatrix monodromy_homology_action(const OpenBook& ob);

}  // namespace obk
