#include "obk/approx.hpp"

#include <algorithm>

#include "obk/error.hpp"
#include "obk/interchange.hpp"

namespace obk {

std::string_view to_string(ObjectKind k) { return k == ObjectKind::legendrian ? "legendrian" : "transverse"; }

namespace {

StabilizationResult stabilize_along_binding(const OpenBook& ob, const std::string& binding, std::string_view stem) {
  const auto feet = StabilizationFeet::same_boundary(binding);
  HandleAttachment att = preview_attachment(ob, feet);
  CurveRef c;
  c.id = ob.fresh_curve_id(stem);
  c.kind = CurveKind::boundary_parallel;
  c.homology = att.surface.unit(att.core_coordinate);
  return positive_stabilize(ob, feet, c);
}

std::string result_digest_of(const ProvenanceLink& link) {
  return std::visit([](const auto& l) { return l.result_digest; }, link);
}

std::string input_digest_of(const ProvenanceLink& link) {
  if (const auto* a = std::get_if<ApproximationLink>(&link)) return witness_digest(a->source);
  if (const auto* p = std::get_if<PushoffLink>(&link)) return placement_digest(p->input);
  return placement_digest(std::get<FramingLink>(link).input);
}

LinkPlacement run_framing(const FramingLink& link) {
  LinkPlacement out = decrease_contact_framing(link.input, link.component, link.steps);
  if (link.realign) {
    for (auto& c : out.components) {
      if (c.id == link.component) c.framing_offset = 0;
    }
  }
  return out;
}

TransverseWitness witness_from(const AppliedSchedule& applied) {
  return TransverseWitness{applied.open_book, applied.certificate.transverse};
}

}  // namespace

LinkPlacement approximate_subbinding(const TransverseWitness& witness) {
  if (witness.link.components.empty()) throw DomainError("approximation needs at least one marked binding");
  OpenBook ob = witness.open_book;
  for (const auto& t : witness.link.components) {
    if (!t.binding) throw DomainError("transverse component " + t.id + " is not realized by a binding");
    if (!ob.is_marked(*t.binding)) throw DomainError("binding " + *t.binding + " is not marked as sub-binding");
  }
  std::map<std::string, std::string> relabel;
  for (const auto& label : ob.bindings()) relabel[label] = label;
  if (ob.page().boundary_count() == 1) {
    // a single binding: stabilize along it first; genus and the binding's
    // transverse class are unchanged
    auto result = stabilize_along_binding(ob, ob.bindings().front(), "approx_" + ob.bindings().front());
    relabel = result.record.relabeling;
    ob = std::move(result.open_book);
  }

  LinkPlacement out{ob, {}};
  for (const auto& t : witness.link.components) {
    const std::string& binding = relabel.at(*t.binding);
    LinkComponent c;
    c.id = t.id;
    c.curve.id = "L_" + t.id;
    c.curve.kind = CurveKind::boundary_parallel;
    c.curve.homology = ob.binding_class(binding);
    c.parallel_class = "P_" + t.id;
    c.class_index = 1;
    c.nearest_binding = binding;
    c.framing_offset = 0;
    c.null_homologous = t.sl.has_value();
    if (t.sl) {
      // any (tb, rot) with tb - rot = sl; rot = 0 is the representative
      c.tb = *t.sl;
      c.rot = 0;
    }
    c.loose = t.loose;
    out.components.push_back(std::move(c));
  }
  return out;
}

LinkPlacement approximate_subbinding(const OpenBook& ob, const std::vector<std::string>& marks) {
  TransverseWitness w{ob.with_marks(marks), {}};
  for (const auto& m : marks) w.link.components.push_back({m, m, std::nullopt, Looseness::unknown});
  return approximate_subbinding(w);
}

LinkPlacement decrease_contact_framing(const LinkPlacement& p, std::string_view id, int n) {
  if (n < 0) throw DomainError("framing can only be decreased (n must be >= 0)");
  LinkPlacement out = p;
  const std::string binding = p.component(id).nearest_binding;
  for (int i = 0; i < n; ++i) {
    auto result = stabilize_along_binding(out.open_book, binding, "f_" + std::string(id));
    out = embed_components(std::move(out), result.record.embedding);
    out.open_book = std::move(result.open_book);
    out = stabilize_legendrian(out, id, Sign::negative);
  }
  return out;
}

SgCertificate transverse_certificate(TransverseWitness witness) {
  SgCertificate cert;
  cert.kind = ObjectKind::transverse;
  cert.link_digest = link_digest(witness.link);
  cert.genus_upper_bound = witness.open_book.page().genus();
  cert.witness = std::move(witness);
  return cert;
}

RoundTrip roundtrip_sg(const SgCertificate& t_cert) {
  if (t_cert.kind != ObjectKind::transverse) throw DomainError("round trip starts from a transverse certificate");
  const auto* witness = std::get_if<TransverseWitness>(&t_cert.witness);
  if (witness == nullptr) throw DomainError("transverse certificate without a sub-binding witness");
  if (witness->open_book.page().genus() != t_cert.genus_upper_bound) {
    throw DomainError("witness genus differs from the certified bound");
  }

  LinkPlacement placement = approximate_subbinding(*witness);
  ApproximationLink approx{*witness, placement_digest(placement)};

  RoundTrip out;
  out.legendrian.kind = ObjectKind::legendrian;
  out.legendrian.link_digest = link_digest(placement.components);
  out.legendrian.genus_upper_bound = placement.open_book.page().genus();
  out.legendrian.provenance.emplace_back(approx);
  if (witness->open_book.page().boundary_count() == 1) out.legendrian.tags.emplace_back(kTagBindingIsotopyAssumed);
  out.legendrian.witness = placement;

  Certificate schedule = build_schedule(placement);
  AppliedSchedule applied = apply_schedule(placement, schedule);
  TransverseWitness result = witness_from(applied);
  out.transverse.kind = ObjectKind::transverse;
  out.transverse.link_digest = link_digest(result.link);
  out.transverse.genus_upper_bound = result.open_book.page().genus();
  out.transverse.provenance.emplace_back(std::move(approx));
  out.transverse.provenance.emplace_back(PushoffLink{placement, applied.certificate, witness_digest(result)});
  out.transverse.tags = out.legendrian.tags;
  out.transverse.witness = std::move(result);
  return out;
}

SgCertificate loose_planar_pipeline(const LinkPlacement& l, int m) {
  if (l.open_book.page().genus() != 0) throw DomainError("planar witness required");
  if (m < 0) throw DomainError("number of extra negative stabilizations must be >= 0");
  for (const auto& c : l.components) {
    if (c.loose != Looseness::loose) throw DomainError("component " + c.id + " is not flagged loose");
  }

  SgCertificate out;
  out.kind = ObjectKind::transverse;
  out.tags.emplace_back(kTagPlanarWitnessAssumed);
  LinkPlacement current = l;
  if (m > 0) {
    out.tags.emplace_back(kTagFramingRealigned);
    for (const auto& c : l.components) {
      FramingLink link{current, c.id, m, true, {}};
      current = run_framing(link);
      link.result_digest = placement_digest(current);
      out.provenance.emplace_back(std::move(link));
    }
  }
  Certificate schedule = build_schedule(current);
  AppliedSchedule applied = apply_schedule(current, schedule);
  TransverseWitness result = witness_from(applied);
  out.provenance.emplace_back(PushoffLink{current, applied.certificate, witness_digest(result)});
  out.link_digest = link_digest(result.link);
  out.genus_upper_bound = result.open_book.page().genus();
  out.witness = std::move(result);
  return out;
}

std::vector<std::string> check_sg_certificate(const SgCertificate& cert) {
  std::vector<std::string> problems;
  std::string final_digest;
  if (const auto* p = std::get_if<LinkPlacement>(&cert.witness)) {
    if (cert.kind != ObjectKind::legendrian) problems.push_back("transverse certificate with a placement witness");
    if (p->open_book.page().genus() != cert.genus_upper_bound) problems.push_back("witness genus differs from bound");
    for (const auto& c : p->components) {
      if (c.framing_offset != 0) problems.push_back("component " + c.id + " is not at page framing");
    }
    if (!validate_placement(*p).empty()) problems.push_back("witness placement is invalid");
    if (link_digest(p->components) != cert.link_digest) problems.push_back("link digest mismatch");
    final_digest = placement_digest(*p);
  } else {
    const auto& w = std::get<TransverseWitness>(cert.witness);
    if (cert.kind != ObjectKind::transverse) problems.push_back("Legendrian certificate with a sub-binding witness");
    if (w.open_book.page().genus() != cert.genus_upper_bound) problems.push_back("witness genus differs from bound");
    for (const auto& t : w.link.components) {
      if (!t.binding || !w.open_book.is_marked(*t.binding)) {
        problems.push_back("component " + t.id + " is not a marked sub-binding");
      }
    }
    if (link_digest(w.link) != cert.link_digest) problems.push_back("link digest mismatch");
    final_digest = witness_digest(w);
  }

  for (std::size_t i = 0; i < cert.provenance.size(); ++i) {
    const auto& link = cert.provenance[i];
    const std::string label = "provenance " + std::to_string(i + 1);
    if (i > 0 && input_digest_of(link) != result_digest_of(cert.provenance[i - 1])) {
      problems.push_back(label + " does not continue the previous link");
    }
    try {
      std::string replayed;
      if (const auto* a = std::get_if<ApproximationLink>(&link)) {
        replayed = placement_digest(approximate_subbinding(a->source));
      } else if (const auto* po = std::get_if<PushoffLink>(&link)) {
        replayed = witness_digest(witness_from(apply_schedule(po->input, po->certificate)));
      } else {
        replayed = placement_digest(run_framing(std::get<FramingLink>(link)));
      }
      if (replayed != result_digest_of(link)) problems.push_back(label + " replays to a different result");
    } catch (const std::exception& e) {
      problems.push_back(label + " failed to replay: " + e.what());
    }
  }
  if (!cert.provenance.empty() && result_digest_of(cert.provenance.back()) != final_digest) {
    problems.push_back("provenance does not end at the witness");
  }
  return problems;
}

}  // namespace obk
