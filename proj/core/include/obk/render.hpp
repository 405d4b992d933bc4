#pragma once

#include <string>

#include "obk/interchange.hpp"

namespace obk {

/// Deterministic SVG drawing of an open book, a placement or a certificate.
///
/// Handles are drawn as foot pairs (`<g class="handle">`), binding
/// components as circles with class "boundary", link components as closed
/// paths with class "link" carrying an orientation arrow. A certificate adds
/// one dashed stabilization curve per step, labelled c1..cn (class
/// "twist-label"). Other document kinds throw DomainError.
std::string render_svg(const Document& doc);

std::string render_svg(const OpenBook& ob);
std::string render_svg(const LinkPlacement& p);
std::string render_svg(const CertificateDocument& c);

}  // namespace obk
