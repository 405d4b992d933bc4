#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "obk/approx.hpp"

namespace obk {

inline constexpr int kFormatVersion = 1;
inline constexpr std::string_view kFormatMagic = "openbook-kit";

enum class DocumentKind { open_book, placement, certificate, sg_certificate };

std::string_view to_string(DocumentKind k);

struct CertificateDocument {
  LinkPlacement input;
  Certificate certificate;
  friend bool operator==(const CertificateDocument&, const CertificateDocument&) = default;
};

struct Document {
  int version = kFormatVersion;
  std::variant<OpenBook, LinkPlacement, CertificateDocument, SgCertificate> payload;

  DocumentKind kind() const { return static_cast<DocumentKind>(payload.index()); }
  friend bool operator==(const Document&, const Document&) = default;
};

/// Canonical text; see docs/interchange.md for the grammar.
std::string emit(const Document& doc);
/// Strict parser for canonical text. Throws ParseError with a position.
Document parse_document(std::string_view text);

/// 64-bit FNV-1a, 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);
std::string open_book_digest(const OpenBook& ob);
std::string placement_digest(const LinkPlacement& p);
std::string witness_digest(const TransverseWitness& w);
/// Digest of the link alone (ids and classical invariants), independent of
/// how it sits in an open book.
std::string link_digest(const TransverseLinkRecord& link);
std::string link_digest(const std::vector<LinkComponent>& link);

/// Open book Σ_{g,b} with a monodromy word such as "+a1,-b1,+(a1+2*b1)".
/// Curve names are basis labels of the page. Positions in errors are 1-based.
OpenBook open_book_from_spec(int genus, int boundary_count, std::string_view word_spec);

}  // namespace obk
