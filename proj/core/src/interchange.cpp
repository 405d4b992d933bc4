#include "obk/interchange.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "obk/error.hpp"

namespace obk {

std::string_view to_string(DocumentKind k) {
  switch (k) {
    case DocumentKind::open_book: return "open_book";
    case DocumentKind::placement: return "placement";
    case DocumentKind::certificate: return "certificate";
    case DocumentKind::sg_certificate: return "sg_certificate";
  }
  return "?";
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Emission

namespace {

std::string vec(const std::vector<Coeff>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out + "]";
}

std::string opt_int(const std::optional<int>& v) { return v ? std::to_string(*v) : "-"; }
std::string opt_str(const std::optional<std::string>& v) { return v ? *v : "-"; }

std::string index_list(const std::vector<std::size_t>& v) {
  if (v.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i] + 1);
  }
  return out;
}

class Emitter {
 public:
  Emitter& line(const std::string& s) {
    out_ += s;
    out_ += '\n';
    return *this;
  }
  std::string take() { return std::move(out_); }

  void open_book(const OpenBook& ob) {
    const Surface& page = ob.page();
    line("page " + std::to_string(page.genus()) + " " + std::to_string(page.boundary_count()));
    for (std::size_t k = 0; k < ob.bindings().size(); ++k) {
      line("binding " + ob.bindings()[k] + " " + vec(page.boundary_classes()[k]));
    }
    for (std::size_t i = 0; i < page.boundary_expressions().size(); ++i) {
      line("dclass d" + std::to_string(i + 1) + " " + vec(page.boundary_expressions()[i]));
    }
    for (const auto& c : ob.curves()) {
      line("curve " + c.id + " " + std::string(to_string(c.kind)) + " " + sign_char(c.orientation) + " " +
           vec(c.homology));
    }
    for (const auto& t : ob.monodromy().twists) line("twist " + t.curve_id + " " + sign_char(t.sign));
    for (const auto& m : ob.marks()) line("mark " + m);
  }

  void component(const LinkComponent& c) {
    line("component " + c.id + " curve=" + c.curve.id + " kind=" + std::string(to_string(c.curve.kind)) +
         " corient=" + sign_char(c.curve.orientation) + " hom=" + vec(c.curve.homology) +
         " orient=" + sign_char(c.orientation) + " class=" + c.parallel_class +
         " index=" + std::to_string(c.class_index) + " binding=" + c.nearest_binding +
         " offset=" + std::to_string(c.framing_offset) + " null=" + (c.null_homologous ? "yes" : "no") +
         " tb=" + opt_int(c.tb) + " rot=" + opt_int(c.rot) + " loose=" + std::string(to_string(c.loose)));
  }

  void placement(const LinkPlacement& p) {
    open_book(p.open_book);
    for (const auto& c : p.components) component(c);
  }

  void transverse(const TransverseLinkRecord& r) {
    for (const auto& t : r.components) {
      line("transverse " + t.id + " binding=" + opt_str(t.binding) + " sl=" + opt_int(t.sl) +
           " loose=" + std::string(to_string(t.loose)));
    }
  }

  void witness(const TransverseWitness& w) {
    open_book(w.open_book);
    transverse(w.link);
  }

  void certificate(const Certificate& c) {
    line("digest " + c.input_digest);
    line("case " + std::string(to_string(c.case_tag)));
    line(std::string("order_free ") + (c.order_free ? "true" : "false"));
    for (const auto& t : c.tags) line("tag " + t);
    for (std::size_t i = 0; i < c.steps.size(); ++i) {
      const auto& s = c.steps[i];
      line("step " + std::to_string(i + 1) + " " + std::string(to_string(s.kind)) + " target=" + opt_str(s.target) +
           " pushed=" + opt_str(s.pushed) + " feet=" + s.feet +
           " via=" + (s.feet_step ? std::to_string(*s.feet_step + 1) : "-") + " new=" + s.new_binding +
           " curve=" + s.twist_curve.id + " ckind=" + std::string(to_string(s.twist_curve.kind)) +
           " corient=" + sign_char(s.twist_curve.orientation) + " hom=" + vec(s.twist_curve.homology) +
           " depends=" + index_list(s.depends_on) + " disjoint=" + index_list(s.disjoint_from));
    }
    for (std::size_t i = 0; i < c.ledger.size(); ++i) {
      const auto& e = c.ledger[i];
      line("ledger " + std::to_string(i + 1) + " genus=" + std::to_string(e.genus) +
           " boundary=" + std::to_string(e.boundary_count) + " chi=" + std::to_string(e.euler_char) +
           " word=" + std::to_string(e.word_length));
    }
    for (const auto& [component, binding] : c.sub_binding_map) line("map " + component + " " + binding);
    transverse(c.transverse);
  }

  void provenance(const ProvenanceLink& link) {
    if (const auto* a = std::get_if<ApproximationLink>(&link)) {
      line("begin provenance approximation");
      line("begin source");
      witness(a->source);
      line("end source");
      line("result " + a->result_digest);
    } else if (const auto* p = std::get_if<PushoffLink>(&link)) {
      line("begin provenance pushoff");
      line("begin input");
      placement(p->input);
      line("end input");
      line("begin certificate");
      certificate(p->certificate);
      line("end certificate");
      line("result " + p->result_digest);
    } else {
      const auto& f = std::get<FramingLink>(link);
      line("begin provenance framing");
      line("begin input");
      placement(f.input);
      line("end input");
      line("component " + f.component);
      line("steps " + std::to_string(f.steps));
      line(std::string("realign ") + (f.realign ? "true" : "false"));
      line("result " + f.result_digest);
    }
    line("end provenance");
  }

  void sg_certificate(const SgCertificate& c) {
    line("object " + std::string(to_string(c.kind)));
    line("link " + c.link_digest);
    line("bound " + std::to_string(c.genus_upper_bound));
    for (const auto& t : c.tags) line("tag " + t);
    if (const auto* p = std::get_if<LinkPlacement>(&c.witness)) {
      line("begin witness placement");
      placement(*p);
    } else {
      line("begin witness transverse");
      witness(std::get<TransverseWitness>(c.witness));
    }
    line("end witness");
    for (const auto& link : c.provenance) provenance(link);
  }

 private:
  std::string out_;
};

}  // namespace

std::string emit(const Document& doc) {
  Emitter e;
  e.line(std::string(kFormatMagic) + " " + std::to_string(doc.version) + " " + std::string(to_string(doc.kind())));
  std::visit(
      [&](const auto& payload) {
        using T = std::decay_t<decltype(payload)>;
        if constexpr (std::is_same_v<T, OpenBook>) {
          e.open_book(payload);
        } else if constexpr (std::is_same_v<T, LinkPlacement>) {
          e.placement(payload);
        } else if constexpr (std::is_same_v<T, CertificateDocument>) {
          e.line("begin input");
          e.placement(payload.input);
          e.line("end input");
          e.certificate(payload.certificate);
        } else {
          e.sg_certificate(payload);
        }
      },
      doc.payload);
  e.line("end");
  return e.take();
}

std::string open_book_digest(const OpenBook& ob) {
  Emitter e;
  e.open_book(ob);
  return fnv1a_hex(e.take());
}

std::string placement_digest(const LinkPlacement& p) {
  Emitter e;
  e.placement(p);
  return fnv1a_hex(e.take());
}

std::string witness_digest(const TransverseWitness& w) {
  Emitter e;
  e.witness(w);
  return fnv1a_hex(e.take());
}

std::string link_digest(const TransverseLinkRecord& link) {
  std::string text = "transverse\n";
  for (const auto& t : link.components) {
    text += t.id + " sl=" + opt_int(t.sl) + " loose=" + std::string(to_string(t.loose)) + "\n";
  }
  return fnv1a_hex(text);
}

std::string link_digest(const std::vector<LinkComponent>& link) {
  std::string text = "legendrian\n";
  for (const auto& c : link) {
    text += c.id + " tb=" + opt_int(c.tb) + " rot=" + opt_int(c.rot) + " loose=" + std::string(to_string(c.loose)) +
            "\n";
  }
  return fnv1a_hex(text);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Token {
  std::string_view text;
  std::size_t column;
};

struct Line {
  std::size_t number = 0;
  std::vector<Token> tokens;

  const Token& at(std::size_t i) const {
    if (i >= tokens.size()) {
      const std::size_t col = tokens.empty() ? 1 : tokens.back().column + tokens.back().text.size();
      throw ParseError(number, col, "expected more fields");
    }
    return tokens[i];
  }
  std::string_view keyword() const { return tokens.front().text; }
  [[noreturn]] void fail(std::size_t token, const std::string& what) const {
    const std::size_t col = token < tokens.size() ? tokens[token].column : 1;
    throw ParseError(number, col, what);
  }
  void expect_size(std::size_t n) const {
    if (tokens.size() != n) {
      fail(std::min(n, tokens.size() - 1), "expected " + std::to_string(n) + " fields, found " +
                                              std::to_string(tokens.size()));
    }
  }
};

class Reader {
 public:
  explicit Reader(std::string_view text) {
    if (text.empty() || text.back() != '\n') throw ParseError(1, 1, "document must end with a newline");
    std::size_t start = 0;
    std::size_t number = 1;
    while (start < text.size()) {
      const std::size_t end = text.find('\n', start);
      const std::string_view raw = text.substr(start, end - start);
      Line line{number, {}};
      if (raw.empty()) throw ParseError(number, 1, "empty line");
      std::size_t pos = 0;
      while (pos <= raw.size()) {
        const std::size_t next = std::min(raw.find(' ', pos), raw.size());
        if (next == pos) throw ParseError(number, pos + 1, "empty field (stray space)");
        line.tokens.push_back({raw.substr(pos, next - pos), pos + 1});
        pos = next + 1;
      }
      for (const char ch : raw) {
        if (ch == '\r' || ch == '\t') throw ParseError(number, raw.find(ch) + 1, "control character");
      }
      lines_.push_back(std::move(line));
      start = end + 1;
      ++number;
    }
  }

  bool done() const { return pos_ >= lines_.size(); }
  const Line* peek() const { return done() ? nullptr : &lines_[pos_]; }
  bool peek_is(std::string_view keyword) const { return !done() && lines_[pos_].keyword() == keyword; }
  bool peek_is(std::string_view keyword, std::string_view arg) const {
    return peek_is(keyword) && lines_[pos_].tokens.size() >= 2 && lines_[pos_].tokens[1].text == arg;
  }

  const Line& next() {
    if (done()) {
      const std::size_t n = lines_.empty() ? 1 : lines_.back().number;
      throw ParseError(n, 1, "unexpected end of document");
    }
    return lines_[pos_++];
  }

  const Line& expect(std::string_view keyword) {
    const Line& l = next();
    if (l.keyword() != keyword) l.fail(0, "expected '" + std::string(keyword) + "', found '" + std::string(l.keyword()) + "'");
    return l;
  }

  void expect_exact(std::string_view a, std::string_view b) {
    const Line& l = expect(a);
    l.expect_size(2);
    if (l.tokens[1].text != b) l.fail(1, "expected '" + std::string(a) + " " + std::string(b) + "'");
  }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

bool is_identifier(std::string_view s) {
  if (s.empty() || s == "-") return false;
  return std::all_of(s.begin(), s.end(), [](char ch) {
    return (ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9') || ch == '_' ||
           ch == '.' || ch == '\'' || ch == '^' || ch == '-' || ch == ':';
  });
}

std::string ident(const Line& l, std::size_t i, std::string_view text) {
  if (!is_identifier(text)) l.fail(i, "invalid identifier '" + std::string(text) + "'");
  return std::string(text);
}

std::string ident(const Line& l, std::size_t i) { return ident(l, i, l.at(i).text); }

Coeff integer(const Line& l, std::size_t i, std::string_view text) {
  Coeff value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || std::to_string(value) != text) {
    l.fail(i, "invalid integer '" + std::string(text) + "'");
  }
  return value;
}

int small_int(const Line& l, std::size_t i, std::string_view text) {
  const Coeff v = integer(l, i, text);
  if (v < -1000000000 || v > 1000000000) l.fail(i, "integer out of range");
  return static_cast<int>(v);
}

std::optional<int> opt_small_int(const Line& l, std::size_t i, std::string_view text) {
  if (text == "-") return std::nullopt;
  return small_int(l, i, text);
}

std::optional<std::string> opt_ident(const Line& l, std::size_t i, std::string_view text) {
  if (text == "-") return std::nullopt;
  return ident(l, i, text);
}

std::vector<Coeff> vector_of(const Line& l, std::size_t i, std::string_view text) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') l.fail(i, "expected [..] vector");
  std::vector<Coeff> out;
  std::string_view body = text.substr(1, text.size() - 2);
  if (body.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = std::min(body.find(',', pos), body.size());
    out.push_back(integer(l, i, body.substr(pos, comma - pos)));
    if (comma == body.size()) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<std::size_t> index_list_of(const Line& l, std::size_t i, std::string_view text) {
  std::vector<std::size_t> out;
  if (text == "-") return out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const Coeff v = integer(l, i, text.substr(pos, comma - pos));
    if (v < 1) l.fail(i, "step numbers start at 1");
    out.push_back(static_cast<std::size_t>(v - 1));
    if (comma == text.size()) break;
    pos = comma + 1;
  }
  return out;
}

Sign sign_of(const Line& l, std::size_t i, std::string_view text) {
  if (text == "+") return Sign::positive;
  if (text == "-") return Sign::negative;
  l.fail(i, "expected + or -");
}

bool bool_of(const Line& l, std::size_t i, std::string_view text) {
  if (text == "true") return true;
  if (text == "false") return false;
  l.fail(i, "expected true or false");
}

CurveKind curve_kind_of(const Line& l, std::size_t i, std::string_view text) {
  if (auto k = parse_curve_kind(text)) return *k;
  l.fail(i, "unknown curve kind '" + std::string(text) + "'");
}

Looseness looseness_of(const Line& l, std::size_t i, std::string_view text) {
  if (auto v = parse_looseness(text)) return *v;
  l.fail(i, "unknown looseness '" + std::string(text) + "'");
}

/// Value of token i, which must read `key=value`.
std::string_view field(const Line& l, std::size_t i, std::string_view key) {
  const std::string_view t = l.at(i).text;
  if (t.size() <= key.size() || t.substr(0, key.size()) != key || t[key.size()] != '=') {
    l.fail(i, "expected field '" + std::string(key) + "='");
  }
  return t.substr(key.size() + 1);
}

std::string digest_of(const Line& l, std::size_t i) {
  const std::string_view t = l.at(i).text;
  if (t.size() != 16 || !std::all_of(t.begin(), t.end(), [](char ch) {
        return (ch >= '0' && ch <= '9') || (ch >= 'a' && ch <= 'f');
      })) {
    l.fail(i, "expected a 16-digit hex digest");
  }
  return std::string(t);
}

template <typename F>
auto guarded(const Line& l, F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw ParseError(l.number, 1, e.what());
  }
}

OpenBook read_open_book(Reader& r) {
  const Line& page_line = r.expect("page");
  page_line.expect_size(3);
  const int genus = small_int(page_line, 1, page_line.tokens[1].text);
  const int boundary = small_int(page_line, 2, page_line.tokens[2].text);
  if (genus < 0 || boundary < 1) page_line.fail(1, "page needs genus >= 0 and boundary >= 1");

  std::vector<std::string> bindings;
  std::vector<HomologyVector> classes;
  while (r.peek_is("binding")) {
    const Line& l = r.next();
    l.expect_size(3);
    bindings.push_back(ident(l, 1));
    classes.push_back(vector_of(l, 2, l.tokens[2].text));
  }
  std::vector<std::vector<Coeff>> exprs;
  while (r.peek_is("dclass")) {
    const Line& l = r.next();
    l.expect_size(3);
    if (l.tokens[1].text != "d" + std::to_string(exprs.size() + 1)) l.fail(1, "d-classes must be listed in order");
    exprs.push_back(vector_of(l, 2, l.tokens[2].text));
  }
  Surface surface = guarded(page_line, [&] { return Surface::from_tables(genus, boundary, classes, exprs); });

  std::vector<CurveRef> curves;
  while (r.peek_is("curve")) {
    const Line& l = r.next();
    l.expect_size(5);
    curves.push_back({ident(l, 1), vector_of(l, 4, l.tokens[4].text), curve_kind_of(l, 2, l.tokens[2].text),
                      sign_of(l, 3, l.tokens[3].text)});
  }
  MonodromyWord word;
  while (r.peek_is("twist")) {
    const Line& l = r.next();
    l.expect_size(3);
    word.twists.push_back({ident(l, 1), sign_of(l, 2, l.tokens[2].text)});
  }
  std::vector<std::string> marks;
  while (r.peek_is("mark")) {
    const Line& l = r.next();
    l.expect_size(2);
    marks.push_back(ident(l, 1));
  }
  OpenBook ob = guarded(page_line, [&] {
    return OpenBook(std::move(surface), std::move(curves), std::move(word), std::move(bindings), marks);
  });
  if (ob.marks() != marks) page_line.fail(0, "marks must be listed in binding order");
  return ob;
}

LinkComponent read_component(const Line& l) {
  l.expect_size(15);
  LinkComponent c;
  c.id = ident(l, 1);
  c.curve.id = ident(l, 2, field(l, 2, "curve"));
  c.curve.kind = curve_kind_of(l, 3, field(l, 3, "kind"));
  c.curve.orientation = sign_of(l, 4, field(l, 4, "corient"));
  c.curve.homology = vector_of(l, 5, field(l, 5, "hom"));
  c.orientation = sign_of(l, 6, field(l, 6, "orient"));
  c.parallel_class = ident(l, 7, field(l, 7, "class"));
  c.class_index = small_int(l, 8, field(l, 8, "index"));
  c.nearest_binding = ident(l, 9, field(l, 9, "binding"));
  c.framing_offset = small_int(l, 10, field(l, 10, "offset"));
  const auto null = field(l, 11, "null");
  if (null != "yes" && null != "no") l.fail(11, "expected null=yes or null=no");
  c.null_homologous = null == "yes";
  c.tb = opt_small_int(l, 12, field(l, 12, "tb"));
  c.rot = opt_small_int(l, 13, field(l, 13, "rot"));
  c.loose = looseness_of(l, 14, field(l, 14, "loose"));
  return c;
}

LinkPlacement read_placement(Reader& r) {
  LinkPlacement p{read_open_book(r), {}};
  while (r.peek_is("component")) p.components.push_back(read_component(r.next()));
  return p;
}

TransverseLinkRecord read_transverse(Reader& r) {
  TransverseLinkRecord out;
  while (r.peek_is("transverse")) {
    const Line& l = r.next();
    l.expect_size(5);
    out.components.push_back({ident(l, 1), opt_ident(l, 2, field(l, 2, "binding")),
                              opt_small_int(l, 3, field(l, 3, "sl")), looseness_of(l, 4, field(l, 4, "loose"))});
  }
  return out;
}

TransverseWitness read_witness(Reader& r) {
  OpenBook ob = read_open_book(r);
  return TransverseWitness{std::move(ob), read_transverse(r)};
}

Certificate read_certificate(Reader& r) {
  Certificate c;
  {
    const Line& l = r.expect("digest");
    l.expect_size(2);
    c.input_digest = digest_of(l, 1);
  }
  {
    const Line& l = r.expect("case");
    l.expect_size(2);
    auto tag = parse_case(l.tokens[1].text);
    if (!tag) l.fail(1, "unknown case tag");
    c.case_tag = *tag;
  }
  {
    const Line& l = r.expect("order_free");
    l.expect_size(2);
    c.order_free = bool_of(l, 1, l.tokens[1].text);
  }
  while (r.peek_is("tag")) {
    const Line& l = r.next();
    l.expect_size(2);
    c.tags.push_back(ident(l, 1));
  }
  while (r.peek_is("step")) {
    const Line& l = r.next();
    l.expect_size(14);
    if (l.tokens[1].text != std::to_string(c.steps.size() + 1)) l.fail(1, "steps must be numbered consecutively");
    ScheduleStep s;
    auto kind = parse_step_kind(l.tokens[2].text);
    if (!kind) l.fail(2, "unknown step kind");
    s.kind = *kind;
    s.target = opt_ident(l, 3, field(l, 3, "target"));
    s.pushed = opt_ident(l, 4, field(l, 4, "pushed"));
    s.feet = ident(l, 5, field(l, 5, "feet"));
    const auto via = field(l, 6, "via");
    if (via != "-") {
      const auto v = index_list_of(l, 6, via);
      if (v.size() != 1) l.fail(6, "via names a single step");
      s.feet_step = v.front();
    }
    s.new_binding = ident(l, 7, field(l, 7, "new"));
    s.twist_curve.id = ident(l, 8, field(l, 8, "curve"));
    s.twist_curve.kind = curve_kind_of(l, 9, field(l, 9, "ckind"));
    s.twist_curve.orientation = sign_of(l, 10, field(l, 10, "corient"));
    s.twist_curve.homology = vector_of(l, 11, field(l, 11, "hom"));
    s.depends_on = index_list_of(l, 12, field(l, 12, "depends"));
    s.disjoint_from = index_list_of(l, 13, field(l, 13, "disjoint"));
    c.steps.push_back(std::move(s));
  }
  while (r.peek_is("ledger")) {
    const Line& l = r.next();
    l.expect_size(6);
    if (l.tokens[1].text != std::to_string(c.ledger.size() + 1)) l.fail(1, "ledger entries must be consecutive");
    LedgerEntry e;
    e.genus = small_int(l, 2, field(l, 2, "genus"));
    e.boundary_count = small_int(l, 3, field(l, 3, "boundary"));
    e.euler_char = small_int(l, 4, field(l, 4, "chi"));
    const Coeff w = integer(l, 5, field(l, 5, "word"));
    if (w < 0) l.fail(5, "word length must be >= 0");
    e.word_length = static_cast<std::size_t>(w);
    c.ledger.push_back(e);
  }
  while (r.peek_is("map")) {
    const Line& l = r.next();
    l.expect_size(3);
    c.sub_binding_map.emplace_back(ident(l, 1), ident(l, 2));
  }
  c.transverse = read_transverse(r);
  return c;
}

ProvenanceLink read_provenance(Reader& r, const Line& begin) {
  const std::string_view kind = begin.tokens[2].text;
  ProvenanceLink out;
  if (kind == "approximation") {
    r.expect_exact("begin", "source");
    ApproximationLink a;
    a.source = read_witness(r);
    r.expect_exact("end", "source");
    out = std::move(a);
  } else if (kind == "pushoff") {
    PushoffLink p;
    r.expect_exact("begin", "input");
    p.input = read_placement(r);
    r.expect_exact("end", "input");
    r.expect_exact("begin", "certificate");
    p.certificate = read_certificate(r);
    r.expect_exact("end", "certificate");
    out = std::move(p);
  } else if (kind == "framing") {
    FramingLink f;
    r.expect_exact("begin", "input");
    f.input = read_placement(r);
    r.expect_exact("end", "input");
    {
      const Line& l = r.expect("component");
      l.expect_size(2);
      f.component = ident(l, 1);
    }
    {
      const Line& l = r.expect("steps");
      l.expect_size(2);
      f.steps = small_int(l, 1, l.tokens[1].text);
    }
    {
      const Line& l = r.expect("realign");
      l.expect_size(2);
      f.realign = bool_of(l, 1, l.tokens[1].text);
    }
    out = std::move(f);
  } else {
    begin.fail(2, "unknown provenance kind '" + std::string(kind) + "'");
  }
  const Line& result = r.expect("result");
  result.expect_size(2);
  std::visit([&](auto& link) { link.result_digest = digest_of(result, 1); }, out);
  r.expect_exact("end", "provenance");
  return out;
}

SgCertificate read_sg_certificate(Reader& r) {
  SgCertificate c;
  {
    const Line& l = r.expect("object");
    l.expect_size(2);
    if (l.tokens[1].text == "legendrian") {
      c.kind = ObjectKind::legendrian;
    } else if (l.tokens[1].text == "transverse") {
      c.kind = ObjectKind::transverse;
    } else {
      l.fail(1, "object must be legendrian or transverse");
    }
  }
  {
    const Line& l = r.expect("link");
    l.expect_size(2);
    c.link_digest = digest_of(l, 1);
  }
  {
    const Line& l = r.expect("bound");
    l.expect_size(2);
    c.genus_upper_bound = small_int(l, 1, l.tokens[1].text);
    if (c.genus_upper_bound < 0) l.fail(1, "bound must be >= 0");
  }
  while (r.peek_is("tag")) {
    const Line& l = r.next();
    l.expect_size(2);
    c.tags.push_back(ident(l, 1));
  }
  const Line& begin = r.expect("begin");
  begin.expect_size(3);
  if (begin.tokens[1].text != "witness") begin.fail(1, "expected 'begin witness'");
  if (begin.tokens[2].text == "placement") {
    c.witness = read_placement(r);
  } else if (begin.tokens[2].text == "transverse") {
    c.witness = read_witness(r);
  } else {
    begin.fail(2, "witness must be placement or transverse");
  }
  r.expect_exact("end", "witness");
  while (r.peek_is("begin", "provenance")) {
    const Line& l = r.next();
    l.expect_size(3);
    c.provenance.push_back(read_provenance(r, l));
  }
  return c;
}

}  // namespace

Document parse_document(std::string_view text) {
  Reader r(text);
  const Line& header = r.next();
  header.expect_size(3);
  if (header.tokens[0].text != kFormatMagic) header.fail(0, "not an openbook-kit document");
  const Coeff version = integer(header, 1, header.tokens[1].text);
  if (version != kFormatVersion) header.fail(1, "unsupported format version " + std::to_string(version));
  const std::string_view kind = header.tokens[2].text;

  Document doc;
  doc.version = static_cast<int>(version);
  if (kind == "open_book") {
    doc.payload = read_open_book(r);
  } else if (kind == "placement") {
    doc.payload = read_placement(r);
  } else if (kind == "certificate") {
    r.expect_exact("begin", "input");
    CertificateDocument c;
    c.input = read_placement(r);
    r.expect_exact("end", "input");
    c.certificate = read_certificate(r);
    doc.payload = std::move(c);
  } else if (kind == "sg_certificate") {
    doc.payload = read_sg_certificate(r);
  } else {
    header.fail(2, "unknown document kind '" + std::string(kind) + "'");
  }
  const Line& end = r.next();
  if (end.tokens.size() != 1 || end.keyword() != "end") {
    end.fail(0, "unexpected '" + std::string(end.keyword()) + "'");
  }
  if (!r.done()) r.peek()->fail(0, "content after end of document");
  return doc;
}

// ---------------------------------------------------------------------------
// Word specs

namespace {

class WordParser {
 public:
  WordParser(const Surface& page, std::string_view text) : page_(page), text_(text) {}

  std::vector<std::pair<CurveRef, Sign>> run() {
    std::vector<std::pair<CurveRef, Sign>> out;
    skip_separators();
    while (pos_ < text_.size()) {
      const char ch = text_[pos_];
      if (ch != '+' && ch != '-') fail("expected '+' or '-' before a twist curve");
      const Sign sign = ch == '+' ? Sign::positive : Sign::negative;
      ++pos_;
      out.emplace_back(curve(out.size() + 1), sign);
      const std::size_t before = pos_;
      skip_separators();
      if (pos_ < text_.size() && pos_ == before) fail("expected ',' or whitespace between twists");
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(line, col, what);
  }

  void skip_separators() {
    while (pos_ < text_.size() && (text_[pos_] == ',' || text_[pos_] == ' ' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\t')) {
      ++pos_;
    }
  }

  std::size_t label() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    auto parsed = BasisLabel::parse(name);
    if (!parsed) {
      pos_ = start;
      fail("expected a basis label (a<i>, b<i> or d<j>)");
    }
    auto coord = page_.coordinate_of(*parsed);
    if (!coord) {
      pos_ = start;
      fail("basis label " + std::string(name) + " does not exist on this page");
    }
    return *coord;
  }

  CurveRef curve(std::size_t twist_number) {
    CurveRef c;
    c.homology = page_.zero();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      bool first = true;
      while (true) {
        Coeff sign = 1;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
          sign = text_[pos_] == '-' ? -1 : 1;
          ++pos_;
        } else if (!first) {
          fail("expected '+', '-' or ')'");
        }
        Coeff factor = 1;
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          const std::size_t start = pos_;
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
          std::from_chars(text_.data() + start, text_.data() + pos_, factor);
          if (pos_ >= text_.size() || text_[pos_] != '*') fail("expected '*' after a coefficient");
          ++pos_;
        }
        c.homology[label()] += sign * factor;
        first = false;
        if (pos_ < text_.size() && text_[pos_] == ')') {
          ++pos_;
          break;
        }
        if (pos_ >= text_.size()) fail("unterminated '('");
      }
      c.id = "w" + std::to_string(twist_number);
    } else {
      const std::size_t start = pos_;
      const std::size_t coord = label();
      c.id = std::string(text_.substr(start, pos_ - start));
      c.homology[coord] = 1;
    }
    bool boundary_only = true;
    for (std::size_t i = 0; i < c.homology.size(); ++i) {
      if (c.homology[i] != 0 && !page_.is_boundary_coordinate(i)) boundary_only = false;
    }
    c.kind = boundary_only ? CurveKind::boundary_parallel : CurveKind::page_curve;
    return c;
  }

  const Surface& page_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

OpenBook open_book_from_spec(int genus, int boundary_count, std::string_view word_spec) {
  OpenBook ob = OpenBook::trivial(genus, boundary_count);
  for (auto& [curve, sign] : WordParser(ob.page(), word_spec).run()) ob = ob.with_twist(curve, sign);
  return ob;
}

}  // namespace obk
