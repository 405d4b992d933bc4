#include "obk/check.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include <json.hpp>

#include "obk/error.hpp"
#include "obk/generate.hpp"

namespace obk {
namespace {

/// Thrown inside a property to report a counterexample.
struct Counterexample {
  std::string what;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Counterexample{what};
}

CheckResult evaluate(std::string name, const std::function<void()>& body) {
  CheckResult r{std::move(name), true, {}};
  try {
    body();
  } catch (const Counterexample& c) {
    r.pass = false;
    r.reason = c.what;
  } catch (const std::exception& e) {
    r.pass = false;
    r.reason = e.what();
  }
  return r;
}

// ---- seeded built-in properties -------------------------------------------

void stabilization_arithmetic(Rng& rng, int samples) {
  for (int s = 0; s < samples; ++s) {
    LinkPlacement p{OpenBook::trivial(0, 1), {}};
    LinkComponent c;
    c.id = "K";
    c.curve = {"L", {}, CurveKind::link_component, Sign::positive};
    c.parallel_class = "P";
    c.class_index = 1;
    c.nearest_binding = "B1";
    c.null_homologous = true;
    c.tb = std::uniform_int_distribution<int>(-20, 20)(rng);
    c.rot = std::uniform_int_distribution<int>(-20, 20)(rng);
    p.components.push_back(c);
    const int sl = pushoff_invariants(p, "K");
    const int rounds = std::uniform_int_distribution<int>(1, 8)(rng);
    int positives = 0;
    for (int i = 0; i < rounds; ++i) {
      const Sign sign = (rng() & 1U) ? Sign::positive : Sign::negative;
      const auto before = p.components[0];
      p = stabilize_legendrian(p, "K", sign);
      const auto& after = p.components[0];
      require(*after.tb == *before.tb - 1, "tb did not drop by one");
      require(*after.rot == *before.rot + to_int(sign), "rot did not move by the stabilization sign");
      if (sign == Sign::positive) ++positives;
    }
    // only positive stabilizations move sl of the push-off, by -2 each
    require(pushoff_invariants(p, "K") == sl - 2 * positives, "push-off sl drifted under negative stabilization");
  }
}

HomologyVector isotropic_vector(Rng& rng, const Surface& s) {
  HomologyVector v = s.zero();
  for (int i = 0; i < s.genus(); ++i) v[2 * static_cast<std::size_t>(i)] = std::uniform_int_distribution<int>(-2, 2)(rng);
  for (std::size_t i = 2 * static_cast<std::size_t>(s.genus()); i < v.size(); ++i) {
    v[i] = std::uniform_int_distribution<int>(-2, 2)(rng);
  }
  return v;
}

void transvections(Rng& rng, int samples) {
  for (int s = 0; s < samples; ++s) {
    const Surface page = Surface::make(std::uniform_int_distribution<int>(0, 3)(rng),
                                       std::uniform_int_distribution<int>(1, 4)(rng));
    const CurveRef c1{"x", isotropic_vector(rng, page), CurveKind::page_curve, Sign::positive};
    const CurveRef c2{"y", isotropic_vector(rng, page), CurveKind::page_curve, Sign::positive};
    const IntMatrix t1 = twist_matrix(page, c1.homology, Sign::positive);
    const IntMatrix t2 = twist_matrix(page, c2.homology, Sign::positive);
    require(t1 * t2 == t2 * t1, "twists along disjoint classes do not commute");
    require(t1 * twist_matrix(page, c1.homology, Sign::negative) == IntMatrix::identity(page.rank()),
            "negative twist is not inverse to the positive one");
    for (std::size_t i = 0; i < page.rank(); ++i) {
      for (std::size_t j = 0; j < page.rank(); ++j) {
        const auto x = page.unit(i);
        const auto y = page.unit(j);
        require(intersection(page, t1.apply(x), t1.apply(y)) == intersection(page, x, y),
                "twist does not preserve the intersection form");
      }
    }
  }
}

void handle_ledger(Rng& rng, int samples) {
  for (int s = 0; s < samples; ++s) {
    const int g = std::uniform_int_distribution<int>(0, 3)(rng);
    const int b = std::uniform_int_distribution<int>(1, 4)(rng);
    const Surface page = Surface::make(g, b);
    const auto j = static_cast<std::size_t>(std::uniform_int_distribution<int>(0, b - 1)(rng));
    HandleFeet feet = HandleFeet::same_boundary(j);
    if (b >= 2 && (rng() & 1U)) {
      auto k = static_cast<std::size_t>(std::uniform_int_distribution<int>(0, b - 2)(rng));
      if (k >= j) ++k;
      feet = HandleFeet::different_boundaries(j, k);
    }
    const auto att = attach_handle(page, feet);
    require(att.surface.euler_char() == page.euler_char() - 1, "euler characteristic did not drop by one");
    if (feet.is_same_boundary()) {
      require(att.surface.genus() == g && att.surface.boundary_count() == b + 1, "same-boundary ledger");
    } else {
      require(att.surface.genus() == g + 1 && att.surface.boundary_count() == b - 1, "different-boundaries ledger");
    }
    for (std::size_t x = 0; x < page.rank(); ++x) {
      for (std::size_t y = 0; y < page.rank(); ++y) {
        require(intersection(att.surface, att.embed(page.unit(x)), att.embed(page.unit(y))) ==
                    intersection(page, page.unit(x), page.unit(y)),
                "handle embedding does not preserve the intersection form");
      }
    }
  }
}

void schedule_replay(Rng& rng, int samples) {
  for (int s = 0; s < samples; ++s) {
    const LinkPlacement p = random_placement(rng);
    const Certificate cert = build_schedule(p);
    const AppliedSchedule applied = apply_schedule(p, cert);
    const auto& page = applied.open_book.page();
    require(page.genus() == p.open_book.page().genus(), "genus changed");
    require(page.boundary_count() == p.open_book.page().boundary_count() + static_cast<int>(cert.steps.size()),
            "boundary growth differs from the step count");
    const auto& word = applied.open_book.monodromy().twists;
    for (std::size_t i = p.open_book.monodromy().size(); i < word.size(); ++i) {
      require(word[i].sign == Sign::positive, "schedule appended a negative twist");
    }
    std::set<std::string> targets;
    for (const auto& [component, binding] : applied.certificate.sub_binding_map) {
      require(targets.insert(binding).second, "sub-binding map is not injective");
    }
    require(targets.size() == p.components.size(), "sub-binding map does not cover the link");
    apply_schedule(p, applied.certificate);
  }
}

void interchange_roundtrip(Rng& rng, int samples) {
  for (int s = 0; s < samples; ++s) {
    const Document doc = random_document(rng);
    const std::string text = emit(doc);
    const Document back = parse_document(text);
    require(back == doc, "parsed document differs from the emitted one");
    require(emit(back) == text, "emit(parse(text)) is not byte-identical");
  }
}

void sg_roundtrip(Rng& rng, int samples) {
  for (int s = 0; s < samples; ++s) {
    const auto t = transverse_certificate(random_witness(rng));
    const auto rt = roundtrip_sg(t);
    require(rt.legendrian.genus_upper_bound == t.genus_upper_bound, "Legendrian bound differs");
    require(rt.transverse.genus_upper_bound == t.genus_upper_bound, "transverse bound differs");
    const auto p1 = check_sg_certificate(rt.legendrian);
    const auto p2 = check_sg_certificate(rt.transverse);
    require(p1.empty(), p1.empty() ? "" : p1.front());
    require(p2.empty(), p2.empty() ? "" : p2.front());
  }
}

// ---- per-document checks ---------------------------------------------------

std::string first_violation(const std::vector<Violation>& vs) {
  const auto& v = vs.front();
  return v.component + " [" + v.rule + "] " + v.message;
}

void permutation_check(const CertificateDocument& doc, std::vector<CheckResult>& out, const std::string& name) {
  const auto n = doc.certificate.steps.size();
  if (n > 4) {
    out.push_back({name, true, "skipped: more than 4 steps"});
    return;
  }
  out.push_back(evaluate(name, [&] {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    bool rejected_any = false;
    do {
      const auto report = permute_and_check(doc.input, doc.certificate, perm);
      if (doc.certificate.order_free) {
        require(report.ok(), report.violations.empty() ? "permutation not equivalent" : report.violations.front());
      } else if (!report.applied) {
        rejected_any = true;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!doc.certificate.order_free && n >= 2) {
      require(rejected_any, "order-sensitive certificate accepted every permutation");
    }
  }));
}

void check_document(const NamedDocument& named, const CheckOptions& options, std::vector<CheckResult>& out) {
  const std::string& n = named.name;
  Document doc;
  try {
    doc = parse_document(named.text);
    out.push_back({n + ":parse", true, {}});
  } catch (const std::exception& e) {
    out.push_back({n + ":parse", false, e.what()});
    return;
  }
  out.push_back(evaluate(n + ":roundtrip", [&] { require(emit(doc) == named.text, "emit(parse(text)) differs"); }));

  switch (doc.kind()) {
    case DocumentKind::open_book:
      break;
    case DocumentKind::placement:
      out.push_back(evaluate(n + ":validate", [&] {
        const auto vs = validate_placement(std::get<LinkPlacement>(doc.payload));
        require(vs.empty(), vs.empty() ? "" : first_violation(vs));
      }));
      break;
    case DocumentKind::certificate: {
      const auto& c = std::get<CertificateDocument>(doc.payload);
      out.push_back(evaluate(n + ":validate", [&] {
        const auto vs = validate_placement(c.input);
        require(vs.empty(), vs.empty() ? "" : first_violation(vs));
      }));
      out.push_back(evaluate(n + ":replay", [&] { apply_schedule(c.input, c.certificate); }));
      if (options.all_permutations) permutation_check(c, out, n + ":permutations");
      break;
    }
    case DocumentKind::sg_certificate:
      out.push_back(evaluate(n + ":provenance", [&] {
        const auto problems = check_sg_certificate(std::get<SgCertificate>(doc.payload));
        require(problems.empty(), problems.empty() ? "" : problems.front());
      }));
      break;
  }
}

}  // namespace

std::size_t CheckReport::failed() const {
  return static_cast<std::size_t>(std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.pass; }));
}

CheckReport run_checks(const std::vector<NamedDocument>& documents, const CheckOptions& options) {
  CheckReport report;
  report.seed = options.seed;
  if (options.builtin) {
    const std::pair<const char*, void (*)(Rng&, int)> properties[] = {
        {"stabilization-arithmetic", stabilization_arithmetic},
        {"transvections", transvections},
        {"handle-ledger", handle_ledger},
        {"schedule-replay", schedule_replay},
        {"interchange-roundtrip", interchange_roundtrip},
        {"sg-roundtrip", sg_roundtrip},
    };
    std::uint64_t stream = 0;
    for (const auto& [name, body] : properties) {
      // independent stream per property so adding one does not shift others
      Rng rng(options.seed ^ (0x9e3779b97f4a7c15ULL * ++stream));
      const int samples = options.samples;
      report.results.push_back(evaluate(std::string("builtin:") + name, [&] { body(rng, samples); }));
    }
  }
  for (const auto& d : documents) check_document(d, options, report.results);
  return report;
}

std::string format_text(const CheckReport& report) {
  std::string out;
  for (const auto& r : report.results) {
    out += r.pass ? "PASS " + r.name : "FAIL " + r.name + ": " + r.reason;
    if (r.pass && !r.reason.empty()) out += " (" + r.reason + ")";
    out += '\n';
  }
  out += "summary: " + std::to_string(report.results.size() - report.failed()) + " passed, " +
         std::to_string(report.failed()) + " failed (seed " + std::to_string(report.seed) + ")\n";
  return out;
}

std::string format_json(const CheckReport& report) {
  nlohmann::json j;
  j["seed"] = report.seed;
  j["passed"] = report.results.size() - report.failed();
  j["failed"] = report.failed();
  j["results"] = nlohmann::json::array();
  for (const auto& r : report.results) {
    nlohmann::json e{{"name", r.name}, {"pass", r.pass}};
    if (!r.reason.empty()) e["reason"] = r.reason;
    j["results"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

}  // namespace obk
