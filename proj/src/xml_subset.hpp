#pragma once
// Minimal strict XML reader for the TBX dialect: prolog, elements,
// double/single quoted attributes, character data, comments, the five named
// entities and numeric character references. DOCTYPE, CDATA and processing
// instructions other than the prolog are rejected. Internal to the library.

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace termstore::xml {

struct XmlNode {
    std::string name;
    std::map<std::string, std::string> attributes;
    std::vector<XmlNode> children;
    std::string text; // concatenated character data, entities decoded

    bool text_is_whitespace() const;
};

// Parses a whole document and returns its root element.
// Throws Error(ErrorCode::parse_error) with a line number on any breach.
XmlNode parse_document(std::string_view input);

} // namespace termstore::xml
