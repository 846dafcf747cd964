#pragma once
// ER instance to RDF graph, serialized as deterministic N-Triples: one
// triple per line, lines sorted by code point, LF separated, trailing
// newline (empty graph -> zero bytes).

#include <string>
#include <string_view>

#include "termstore/instance.hpp"

namespace termstore {

// Minted IRIs:
//   instance:   BASE/TYPE/ID
//   schema:     BASE/schema#NAME          (entity types, associations)
//   attribute:  BASE/schema#TYPE.ATTR
// Components are percent-encoded, so distinct (type, id) pairs always yield
// distinct subject IRIs.
class IriScheme {
public:
    // Base must be absolute (scheme + authority), carry no fragment and no
    // trailing slash, and contain no characters an N-Triples IRIREF forbids.
    explicit IriScheme(std::string base);

    const std::string& base() const { return base_; }

    std::string instance_iri(std::string_view type_name, std::string_view id) const;
    std::string schema_iri(std::string_view name) const;
    std::string attribute_iri(std::string_view type_name, std::string_view attr_name) const;

private:
    std::string base_;
};

// Emission rules: an rdf:type triple per entity, one triple per set
// attribute (plain literal object), one triple per link directed role1 ->
// role2. Rejects dangling links.
std::string to_ntriples(const ERInstance& instance, const IriScheme& scheme);

} // namespace termstore
