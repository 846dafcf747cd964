#pragma once
// Canonical store file ("TermStore"): a UTF-8 JSON document with LF line
// endings, two-space indentation, lexicographic object keys, entity lists
// sorted by id, links sorted by (assoc, from, to) and a trailing newline.
// Equal instances serialize byte-identically.

#include <memory>
#include <string>
#include <string_view>

#include "termstore/instance.hpp"

namespace termstore {

std::string store_bytes(const ERInstance& instance);

// Parses a store document against `schema`. Structural problems (malformed
// JSON, unknown type or association names, duplicate ids or links, schema
// name/version mismatch) raise Error(parse_error). Content problems a store
// can legally carry after hand edits — dangling links, missing required
// attributes, enumeration breaches — are loaded as-is and surface through
// check_cardinalities.
ERInstance load_store(std::string_view bytes, std::shared_ptr<const ERSchema> schema);

} // namespace termstore
