#pragma once
// Text primitives shared by the store, exporters and validators.
//
// All attribute values entering an instance are normalized to Unicode NFC;
// equality everywhere else in the library is plain byte equality, so two
// values compare equal iff their NFC forms are code-point identical.

#include <string>
#include <string_view>

namespace termstore {

bool utf8_valid(std::string_view bytes);

// NFC-normalizes a UTF-8 string. Throws Error(parse_error) on ill-formed UTF-8.
std::string nfc(std::string_view utf8);

// Identifier alphabet: letters, digits, '_', '-', '.'; 1..256 code points.
// Identifiers in this alphabet embed verbatim in XML attributes, IRIs and SQL.
bool valid_identifier(std::string_view id);

// Language tags are checked for shape only: ASCII letters/digits/hyphens.
bool valid_language_tag(std::string_view tag);

// Escapes '&', '<', '>' and '"' for use in XML content and attribute values.
std::string xml_escape(std::string_view text);

// RFC 3986 percent-encoding; unreserved characters pass through, every other
// byte of the UTF-8 encoding becomes %XX with uppercase hex.
std::string percent_encode(std::string_view component);

} // namespace termstore
