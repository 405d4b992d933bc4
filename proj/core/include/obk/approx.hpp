#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "obk/pushoff.hpp"

namespace obk {

/// A transverse link realized as marked bindings of an open book. Component
/// `binding` fields name the marked bindings.
struct TransverseWitness {
  OpenBook open_book;
  TransverseLinkRecord link;
  friend bool operator==(const TransverseWitness&, const TransverseWitness&) = default;
};

/// Legendrian approximation of a sub-binding.
struct ApproximationLink {
  TransverseWitness source;
  std::string result_digest;
  friend bool operator==(const ApproximationLink&, const ApproximationLink&) = default;
};

/// Push-off schedule applied to a placement.
struct PushoffLink {
  LinkPlacement input;
  Certificate certificate;
  std::string result_digest;
  friend bool operator==(const PushoffLink&, const PushoffLink&) = default;
};

/// `steps` framing decreases on one component. With `realign`, the
/// stabilized component is then taken with contact framing equal to the page
/// framing again (framing_offset reset to 0), as when a negatively
/// stabilized knot is put back on the page before the push-off algorithm.
struct FramingLink {
  LinkPlacement input;
  std::string component;
  int steps = 0;
  bool realign = false;
  std::string result_digest;
  friend bool operator==(const FramingLink&, const FramingLink&) = default;
};

using ProvenanceLink = std::variant<ApproximationLink, PushoffLink, FramingLink>;

enum class ObjectKind { legendrian, transverse };

std::string_view to_string(ObjectKind k);

/// Upper bound on support genus, witnessed by an explicit open book.
struct SgCertificate {
  ObjectKind kind = ObjectKind::transverse;
  std::string link_digest;
  int genus_upper_bound = 0;
  /// LinkPlacement for Legendrian links, TransverseWitness for transverse ones
  std::variant<LinkPlacement, TransverseWitness> witness;
  std::vector<ProvenanceLink> provenance;
  std::vector<std::string> tags;

  friend bool operator==(const SgCertificate&, const SgCertificate&) = default;
};

inline constexpr std::string_view kTagBindingIsotopyAssumed = "assumption:stabilized-binding-isotopy";
inline constexpr std::string_view kTagPlanarWitnessAssumed = "assumption:planar-witness";
inline constexpr std::string_view kTagFramingRealigned = "assumption:framing-realigned";

/// Legendrian approximation of each marked binding, placed on a page of the
/// same genus with contact framing equal to page framing. A page with a
/// single boundary component is first stabilized positively along it.
LinkPlacement approximate_subbinding(const TransverseWitness& witness);
LinkPlacement approximate_subbinding(const OpenBook& ob, const std::vector<std::string>& marks);

/// n rounds of: stabilize positively along the component's binding, push the
/// component over the new handle (negative Legendrian stabilization).
LinkPlacement decrease_contact_framing(const LinkPlacement& p, std::string_view id, int n);

/// Certificate for a witness with no recorded history.
SgCertificate transverse_certificate(TransverseWitness witness);

struct RoundTrip {
  SgCertificate legendrian;
  SgCertificate transverse;
};

/// T -> Legendrian approximation L (same genus) -> push-off T' (same genus).
RoundTrip roundtrip_sg(const SgCertificate& t_cert);

/// m extra negative stabilizations on a planar page, then the push-off
/// algorithm; the result has genus bound 0.
SgCertificate loose_planar_pipeline(const LinkPlacement& l, int m);

/// Empty when witness invariants hold and every provenance link replays to
/// its recorded digest and the chain ends at the witness.
std::vector<std::string> check_sg_certificate(const SgCertificate& cert);

}  // namespace obk
