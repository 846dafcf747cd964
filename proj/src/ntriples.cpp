#include "termstore/ntriples.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "termstore/text.hpp"

namespace termstore {

namespace {

constexpr const char* kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

bool iriref_forbidden(unsigned char c) {
    return c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' ||
           c == '^' || c == '`' || c == '\\';
}

void check_base(const std::string& base) {
    auto reject = [&](const std::string& why) {
        throw Error(ErrorCode::invalid_iri, "invalid base IRI '" + base + "': " + why);
    };
    std::size_t scheme_end = base.find("://");
    if (scheme_end == std::string::npos || scheme_end == 0) {
        reject("not an absolute IRI (scheme://authority)");
    }
    if (!std::isalpha(static_cast<unsigned char>(base[0]))) reject("scheme must start with a letter");
    for (std::size_t i = 1; i < scheme_end; ++i) {
        char c = base[i];
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') {
            reject("malformed scheme");
        }
    }
    if (scheme_end + 3 >= base.size()) reject("empty authority");
    if (base.find('#') != std::string::npos) reject("fragment not allowed");
    if (base.back() == '/') reject("trailing slash not allowed");
    for (unsigned char c : base) {
        if (iriref_forbidden(c)) reject("character not allowed in an IRI reference");
    }
}

std::string encode_component(std::string_view component) {
    if (component.empty()) {
        throw Error(ErrorCode::invalid_iri, "empty IRI component");
    }
    return percent_encode(component);
}

std::string escape_literal(std::string_view value) {
    std::string out;
    out.reserve(value.size());
    static const char* hex = "0123456789ABCDEF";
    for (unsigned char c : value) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    out += "\\u00";
                    out += hex[c >> 4];
                    out += hex[c & 0xF];
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    return out;
}

} // namespace

IriScheme::IriScheme(std::string base) : base_(std::move(base)) {
    check_base(base_);
}

std::string IriScheme::instance_iri(std::string_view type_name, std::string_view id) const {
    return base_ + "/" + encode_component(type_name) + "/" + encode_component(id);
}

std::string IriScheme::schema_iri(std::string_view name) const {
    return base_ + "/schema#" + encode_component(name);
}

std::string IriScheme::attribute_iri(std::string_view type_name,
                                     std::string_view attr_name) const {
    return base_ + "/schema#" +
           encode_component(std::string(type_name) + "." + std::string(attr_name));
}

std::string to_ntriples(const ERInstance& instance, const IriScheme& scheme) {
    std::vector<std::string> lines;
    auto triple = [&lines](const std::string& s, const std::string& p, const std::string& o) {
        lines.push_back("<" + s + "> <" + p + "> " + o + " .");
    };

    for (const auto& [type_name, bucket] : instance.entities()) {
        for (const auto& [id, entity] : bucket) {
            const std::string subject = scheme.instance_iri(type_name, id);
            triple(subject, kRdfType, "<" + scheme.schema_iri(type_name) + ">");
            for (const auto& [attr, value] : entity.attrs) {
                triple(subject, scheme.attribute_iri(type_name, attr),
                       "\"" + escape_literal(value) + "\"");
            }
        }
    }
    const ERSchema& schema = instance.schema();
    for (const auto& link : instance.links()) {
        const AssociationDef* assoc = schema.find_association(link.association);
        if (instance.find_entity(assoc->role1.entity_type, link.from) == nullptr ||
            instance.find_entity(assoc->role2.entity_type, link.to) == nullptr) {
            throw Error(ErrorCode::dangling_endpoint,
                        link.association + " link (" + link.from + " -> " + link.to +
                            ") references a missing entity");
        }
        triple(scheme.instance_iri(assoc->role1.entity_type, link.from),
               scheme.schema_iri(link.association),
               "<" + scheme.instance_iri(assoc->role2.entity_type, link.to) + ">");
    }

    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const std::string& line : lines) {
        out += line;
        out += '\n';
    }
    return out;
}

} // namespace termstore
