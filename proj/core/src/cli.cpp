#include "obk/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "obk/check.hpp"
#include "obk/error.hpp"
#include "obk/generate.hpp"
#include "obk/render.hpp"

namespace obk {
namespace {

/// Bad invocation: missing files, wrong document kind, bad flag values.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text)) throw UsageError("cannot write " + path);
}

Document read_document(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_document(text);
  } catch (const ParseError& e) {
    throw DomainError(path + ": " + e.what());
  }
}

template <typename T>
const T& expect_payload(const Document& doc, std::string_view wanted, const std::string& path) {
  if (const auto* p = std::get_if<T>(&doc.payload)) return *p;
  throw UsageError(path + ": expected a " + std::string(wanted) + " document, found " +
                   std::string(to_string(doc.kind())));
}

/// foo.obk -> foo.<tag>.obk next to the input.
std::string sibling(const std::string& input, std::string_view tag) {
  std::filesystem::path p(input);
  const std::string ext = p.has_extension() ? p.extension().string() : ".obk";
  p.replace_extension();
  return p.string() + "." + std::string(tag) + ext;
}

std::string shape(const OpenBook& ob) {
  return "(" + std::to_string(ob.page().genus()) + "," + std::to_string(ob.page().boundary_count()) + ")";
}

struct NewArgs {
  int genus = 0;
  int boundary = 1;
  std::string word;
  std::string output;
};

struct PushoffArgs {
  std::string input;
  std::string certificate;
  std::string open_book;
};

struct RenderArgs {
  std::string input;
  std::string output;
};

struct CheckArgs {
  std::vector<std::string> inputs;
  std::string permutations = "none";
  bool json = false;
  bool no_builtin = false;
  int samples = 200;
};

struct RoundtripArgs {
  std::string input;
  std::string legendrian;
  std::string transverse;
};

struct LooseArgs {
  std::string input;
  int extra = 0;
  std::string output;
};

int cmd_new(const NewArgs& a, std::ostream& out) {
  if (a.genus < 0) throw UsageError("--genus must be >= 0");
  if (a.boundary < 1) throw UsageError("--boundary must be >= 1");
  OpenBook ob = [&] {
    try {
      return open_book_from_spec(a.genus, a.boundary, a.word);
    } catch (const ParseError& e) {
      throw UsageError(std::string("--word: ") + e.what());
    }
  }();
  write_output(a.output, emit(Document{kFormatVersion, std::move(ob)}), out);
  return kExitOk;
}

int cmd_pushoff(const PushoffArgs& a, std::ostream& out, std::ostream& err) {
  const Document doc = read_document(a.input);
  const auto& p = expect_payload<LinkPlacement>(doc, "placement", a.input);
  if (const auto violations = validate_placement(p); !violations.empty()) {
    err << "invalid placement:\n";
    for (const auto& v : violations) err << "  " << v.component << " [" << v.rule << "] " << v.message << "\n";
    return kExitDomain;
  }
  const Certificate schedule = build_schedule(p);
  const AppliedSchedule applied = apply_schedule(p, schedule);
  const Certificate& cert = applied.certificate;

  write_output(a.certificate.empty() ? sibling(a.input, "certificate") : a.certificate,
               emit(Document{kFormatVersion, CertificateDocument{p, cert}}), out);
  write_output(a.open_book.empty() ? sibling(a.input, "open_book") : a.open_book,
               emit(Document{kFormatVersion, applied.open_book}), out);

  out << "case=" << to_string(cert.case_tag) << " steps=" << cert.steps.size()
      << " order_free=" << (cert.order_free ? "true" : "false");
  if (cert.aux_count() > 0) out << " aux=" << cert.aux_count();
  out << "\n";
  const auto& last = cert.ledger.empty() ? LedgerEntry{p.open_book.page().genus(), p.open_book.page().boundary_count(),
                                                       p.open_book.page().euler_char(), p.open_book.monodromy().size()}
                                         : cert.ledger.back();
  out << "ledger " << shape(p.open_book) << " -> (" << last.genus << "," << last.boundary_count << ")"
      << " chi " << p.open_book.page().euler_char() << " -> " << last.euler_char << " twists "
      << p.open_book.monodromy().size() << " -> " << last.word_length << "\n";
  for (const auto& tag : cert.tags) out << "tag " << tag << "\n";
  for (const auto& t : cert.transverse.components) {
    out << "sub-binding " << t.id << " -> " << t.binding.value_or("-") << " sl="
        << (t.sl ? std::to_string(*t.sl) : std::string("-")) << "\n";
  }
  return kExitOk;
}

int cmd_render(const RenderArgs& a, std::ostream& out) {
  const Document doc = read_document(a.input);
  write_output(a.output, render_svg(doc), out);
  return kExitOk;
}

int cmd_check(const CheckArgs& a, std::ostream& out) {
  if (a.permutations != "all" && a.permutations != "none") throw UsageError("--permutations must be all or none");
  CheckOptions options;
  options.all_permutations = a.permutations == "all";
  options.builtin = !a.no_builtin;
  options.samples = a.samples;
  try {
    options.seed = seed_from_env();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  std::vector<NamedDocument> docs;
  CheckReport unreadable;
  for (const auto& path : a.inputs) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      unreadable.results.push_back({path + ":read", false, "cannot read file"});
      continue;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    docs.push_back({path, buf.str()});
  }
  CheckReport report = run_checks(docs, options);
  report.results.insert(report.results.end(), unreadable.results.begin(), unreadable.results.end());
  out << (a.json ? format_json(report) : format_text(report));
  return report.ok() ? kExitOk : kExitDomain;
}

int cmd_roundtrip(const RoundtripArgs& a, std::ostream& out) {
  const Document doc = read_document(a.input);
  SgCertificate start;
  if (const auto* sg = std::get_if<SgCertificate>(&doc.payload)) {
    start = *sg;
  } else if (const auto* ob = std::get_if<OpenBook>(&doc.payload)) {
    // marked bindings with unknown self-linking
    TransverseWitness w{*ob, {}};
    for (const auto& m : ob->marks()) w.link.components.push_back({m, m, std::nullopt, Looseness::unknown});
    start = transverse_certificate(std::move(w));
  } else {
    throw UsageError(a.input + ": expected an sg_certificate or open_book document");
  }
  const RoundTrip rt = roundtrip_sg(start);
  write_output(a.legendrian.empty() ? sibling(a.input, "legendrian") : a.legendrian,
               emit(Document{kFormatVersion, rt.legendrian}), out);
  write_output(a.transverse.empty() ? sibling(a.input, "transverse") : a.transverse,
               emit(Document{kFormatVersion, rt.transverse}), out);
  out << "bound=" << start.genus_upper_bound << " legendrian=" << rt.legendrian.genus_upper_bound
      << " transverse=" << rt.transverse.genus_upper_bound << "\n";
  return kExitOk;
}

int cmd_loose(const LooseArgs& a, std::ostream& out) {
  if (a.extra < 0) throw UsageError("--extra must be >= 0");
  const Document doc = read_document(a.input);
  const auto& p = expect_payload<LinkPlacement>(doc, "placement", a.input);
  const SgCertificate cert = loose_planar_pipeline(p, a.extra);
  write_output(a.output.empty() ? sibling(a.input, "sg") : a.output, emit(Document{kFormatVersion, cert}), out);
  out << "bound=" << cert.genus_upper_bound << " extra=" << a.extra << "\n";
  for (const auto& t : std::get<TransverseWitness>(cert.witness).link.components) {
    out << "sub-binding " << t.id << " -> " << t.binding.value_or("-")
        << " sl=" << (t.sl ? std::to_string(*t.sl) : std::string("-")) << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Open book decompositions, push-off schedules and support-genus certificates", "obk"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "obk 0.1.0 (interchange format " + std::to_string(kFormatVersion) + ")");

  NewArgs new_args;
  auto* new_cmd = app.add_subcommand("new", "Create an open book document");
  new_cmd->add_option("--genus", new_args.genus, "Page genus")->required();
  new_cmd->add_option("--boundary", new_args.boundary, "Number of binding components")->required();
  new_cmd->add_option("--word", new_args.word, "Monodromy word, e.g. +a1,-b1,+(a1+2*b1)");
  new_cmd->add_option("-o,--output", new_args.output, "Output file (default stdout)");

  PushoffArgs pushoff_args;
  auto* pushoff_cmd = app.add_subcommand("pushoff", "Run the push-off schedule on a placement");
  pushoff_cmd->add_option("placement", pushoff_args.input, "Placement document")->required();
  pushoff_cmd->add_option("--certificate", pushoff_args.certificate, "Certificate output ('-' for stdout)");
  pushoff_cmd->add_option("--open-book", pushoff_args.open_book, "Resulting open book output ('-' for stdout)");

  RenderArgs render_args;
  auto* render_cmd = app.add_subcommand("render", "Draw an open book, placement or certificate as SVG");
  render_cmd->add_option("document", render_args.input, "Input document")->required();
  render_cmd->add_option("-o,--output", render_args.output, "SVG output (default stdout)");

  CheckArgs check_args;
  auto* check_cmd = app.add_subcommand("check", "Run property checks on documents and seeded built-ins");
  check_cmd->add_option("documents", check_args.inputs, "Documents to check");
  check_cmd->add_option("--permutations", check_args.permutations, "all | none")->capture_default_str();
  check_cmd->add_flag("--json", check_args.json, "Machine-readable report");
  check_cmd->add_flag("--no-builtin", check_args.no_builtin, "Skip the seeded built-in properties");
  check_cmd->add_option("--samples", check_args.samples, "Samples per built-in property")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  RoundtripArgs roundtrip_args;
  auto* roundtrip_cmd = app.add_subcommand("roundtrip", "Transverse -> Legendrian -> transverse certificates");
  roundtrip_cmd->add_option("document", roundtrip_args.input, "sg_certificate or open_book with marks")->required();
  roundtrip_cmd->add_option("--legendrian", roundtrip_args.legendrian, "Legendrian certificate output");
  roundtrip_cmd->add_option("--transverse", roundtrip_args.transverse, "Transverse certificate output");

  LooseArgs loose_args;
  auto* loose_cmd = app.add_subcommand("loose", "Planar loose pipeline with extra negative stabilizations");
  loose_cmd->add_option("placement", loose_args.input, "Planar placement document")->required();
  loose_cmd->add_option("--extra", loose_args.extra, "Extra negative stabilizations per component")
      ->capture_default_str();
  loose_cmd->add_option("-o,--output", loose_args.output, "Certificate output ('-' for stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "obk: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*new_cmd) return cmd_new(new_args, out);
    if (*pushoff_cmd) return cmd_pushoff(pushoff_args, out, err);
    if (*render_cmd) return cmd_render(render_args, out);
    if (*check_cmd) return cmd_check(check_args, out);
    if (*roundtrip_cmd) return cmd_roundtrip(roundtrip_args, out);
    if (*loose_cmd) return cmd_loose(loose_args, out);
  } catch (const UsageError& e) {
    err << "obk: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "obk: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace obk
