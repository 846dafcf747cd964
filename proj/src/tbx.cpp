#include "termstore/tbx.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "termstore/terminology.hpp"
#include "termstore/text.hpp"
#include "xml_subset.hpp"

namespace termstore {

namespace {

constexpr const char* kNamespace = "urn:iso:std:iso:30042:ed-2";
constexpr const char* kEntityLossReason = "entity type not representable in the TBX dialect";
constexpr const char* kLinkLossReason = "association not representable in the TBX dialect";
constexpr const char* kCharacteristicLossReason = "characteristic delineates no concept";

// Associations the dialect can carry; everything else is loss-accounted.
bool dialect_association(const std::string& name) {
    return name == "Denoted" || name == "Hierarchical" || name == "Generic" ||
           name == "Delineated";
}

TbxDocument build_document(const ERInstance& termbase, std::string_view title) {
    TbxDocument document;
    document.title = std::string(title);

    std::map<std::string, ConceptEntry> entries;
    for (const auto& [concept_id, unused] : termbase.entities().at("Concept")) {
        entries[concept_id].concept_id = concept_id;
    }

    for (const auto& link : termbase.links()) {
        if (link.association == "Hierarchical") {
            entries.at(link.to).superordinate_id = link.from;
        } else if (link.association == "Generic") {
            entries.at(link.from).generic_targets.push_back(link.to);
        } else if (link.association == "Delineated") {
            const EntityInstance* characteristic =
                termbase.find_entity("Characteristic", link.to);
            entries.at(link.from).characteristics.emplace_back(
                characteristic->attrs.at("variety"), link.to);
        } else if (link.association == "Denoted") {
            const EntityInstance* term = termbase.find_entity("Term", link.to);
            auto& sections = entries.at(link.from).lang_sections;
            const std::string& language = term->attrs.at("language");
            auto section = std::find_if(sections.begin(), sections.end(),
                                        [&](const LangSection& s) { return s.language == language; });
            if (section == sections.end()) {
                sections.push_back({language, {}});
                section = std::prev(sections.end());
            }
            auto definition = term->attrs.find("definition");
            section->terms.push_back(
                {link.to, term->attrs.at("designation"),
                 definition == term->attrs.end() ? std::nullopt
                                                 : std::optional<std::string>(definition->second)});
        }
    }

    for (auto& [unused, entry] : entries) {
        std::sort(entry.characteristics.begin(), entry.characteristics.end());
        std::sort(entry.lang_sections.begin(), entry.lang_sections.end(),
                  [](const LangSection& a, const LangSection& b) { return a.language < b.language; });
        for (auto& section : entry.lang_sections) {
            std::sort(section.terms.begin(), section.terms.end(),
                      [](const TermSection& a, const TermSection& b) {
                          return a.term_id < b.term_id;
                      });
        }
        document.entries.push_back(std::move(entry));
    }
    return document;
}

LossReport census_loss(const ERInstance& termbase) {
    std::map<std::string, LossEntry> by_kind;
    auto add = [&](const std::string& kind, const char* reason) {
        LossEntry& entry = by_kind[kind];
        entry.kind = kind;
        entry.reason = reason;
        ++entry.count;
    };

    for (const char* type : {"Frame", "FrameElement", "TextSource", "Collection"}) {
        for (std::size_t i = termbase.entities().at(type).size(); i > 0; --i) {
            add(type, kEntityLossReason);
        }
    }
    std::set<std::string> delineated;
    for (const auto& link : termbase.links()) {
        if (link.association == "Delineated") delineated.insert(link.to);
        if (!dialect_association(link.association)) add(link.association, kLinkLossReason);
    }
    for (const auto& [name, unused] : termbase.entities().at("Characteristic")) {
        if (delineated.count(name) == 0) add("Characteristic", kCharacteristicLossReason);
    }

    LossReport report;
    for (auto& [unused, entry] : by_kind) report.entries.push_back(std::move(entry));
    return report;
}

std::string emit(const TbxDocument& document) {
    std::string out;
    auto line = [&out](int depth, const std::string& content) {
        out.append(static_cast<std::size_t>(depth) * 2, ' ');
        out += content;
        out += '\n';
    };

    line(0, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    line(0, std::string("<tbx style=\"dca\" type=\"TBX-Basic\" xml:lang=\"en\" xmlns=\"") +
                kNamespace + "\">");
    line(1, "<tbxHeader>");
    line(2, "<fileDesc>");
    line(3, "<titleStmt>");
    line(4, "<title>" + xml_escape(document.title) + "</title>");
    line(3, "</titleStmt>");
    line(2, "</fileDesc>");
    line(1, "</tbxHeader>");
    line(1, "<text>");
    line(2, "<body>");
    for (const ConceptEntry& entry : document.entries) {
        line(3, "<conceptEntry id=\"" + xml_escape(entry.concept_id) + "\">");
        if (entry.superordinate_id.has_value()) {
            line(4, "<descrip type=\"superordinateConcept\">" +
                        xml_escape(*entry.superordinate_id) + "</descrip>");
        }
        for (const std::string& target : entry.generic_targets) {
            line(4, "<descrip type=\"genericRelation\">" + xml_escape(target) + "</descrip>");
        }
        for (const auto& [variety, name] : entry.characteristics) {
            line(4, "<descrip type=\"characteristic\">" + xml_escape(variety + ":" + name) +
                        "</descrip>");
        }
        for (const LangSection& section : entry.lang_sections) {
            line(4, "<langSec xml:lang=\"" + xml_escape(section.language) + "\">");
            for (const TermSection& term : section.terms) {
                line(5, "<termSec id=\"" + xml_escape(term.term_id) + "\">");
                line(6, "<term>" + xml_escape(term.designation) + "</term>");
                if (term.definition.has_value()) {
                    line(6, "<descrip type=\"definition\">" + xml_escape(*term.definition) +
                                "</descrip>");
                }
                line(5, "</termSec>");
            }
            line(4, "</langSec>");
        }
        line(3, "</conceptEntry>");
    }
    line(2, "</body>");
    line(1, "</text>");
    line(0, "</tbx>");
    return out;
}

} // namespace

TbxExport export_tbx(const ERInstance& termbase, std::string_view title, bool force) {
    ViolationReport report = validate_termbase(termbase);
    if (report.any_hard()) {
        throw Error(ErrorCode::validation_failed,
                    "export refused: " + std::to_string(report.size()) +
                        " validation violations (first: " + report.violations.front().message +
                        ")");
    }
    if (report.any_conditional() && !force) {
        throw Error(ErrorCode::validation_failed,
                    "export refused: " + std::to_string(report.size()) +
                        " conditional violations (first: " + report.violations.front().message +
                        "); pass force to export anyway");
    }
    return {emit(build_document(termbase, title)), census_loss(termbase)};
}

namespace {

using xml::XmlNode;

[[noreturn]] void bad(const std::string& what) {
    throw Error(ErrorCode::parse_error, "TBX: " + what);
}

void require_no_attributes(const XmlNode& node) {
    if (!node.attributes.empty()) {
        bad("unexpected attribute '" + node.attributes.begin()->first + "' on <" + node.name +
            ">");
    }
}

void require_attributes(const XmlNode& node, const std::vector<std::string>& names) {
    for (const auto& [name, unused] : node.attributes) {
        if (std::find(names.begin(), names.end(), name) == names.end()) {
            bad("unexpected attribute '" + name + "' on <" + node.name + ">");
        }
    }
    for (const auto& name : names) {
        if (node.attributes.count(name) == 0) {
            bad("missing attribute '" + name + "' on <" + node.name + ">");
        }
    }
}

// an element that contains only child elements
void require_container(const XmlNode& node) {
    if (!node.text_is_whitespace()) bad("unexpected character data in <" + node.name + ">");
}

// an element that contains only character data
const std::string& text_of(const XmlNode& node) {
    if (!node.children.empty()) {
        bad("unexpected element <" + node.children.front().name + "> in <" + node.name + ">");
    }
    return node.text;
}

const XmlNode& only_child(const XmlNode& node, const char* child_name) {
    require_container(node);
    if (node.children.size() != 1 || node.children.front().name != child_name) {
        bad("<" + node.name + "> must contain exactly one <" + child_name + ">");
    }
    return node.children.front();
}

struct ParsedTerm {
    std::string term_id;
    std::string designation;
    std::optional<std::string> definition;
    std::string language;
};

struct ParsedEntry {
    std::string concept_id;
    std::optional<std::string> superordinate_id;
    std::vector<std::string> generic_targets;
    std::vector<std::pair<std::string, std::string>> characteristics; // (variety, name)
    std::vector<ParsedTerm> terms;
};

ParsedTerm parse_term_section(const XmlNode& node, const std::string& language) {
    require_attributes(node, {"id"});
    require_container(node);
    ParsedTerm term;
    term.term_id = node.attributes.at("id");
    term.language = language;
    bool saw_term = false;
    for (const XmlNode& child : node.children) {
        if (child.name == "term") {
            if (saw_term) bad("termSec '" + term.term_id + "' has more than one <term>");
            require_no_attributes(child);
            term.designation = text_of(child);
            saw_term = true;
        } else if (child.name == "descrip") {
            require_attributes(child, {"type"});
            if (child.attributes.at("type") != "definition") {
                bad("unknown descrip type '" + child.attributes.at("type") + "' in <termSec>");
            }
            if (term.definition.has_value()) {
                bad("termSec '" + term.term_id + "' has more than one definition");
            }
            term.definition = text_of(child);
        } else {
            bad("unexpected element <" + child.name + "> in <termSec>");
        }
    }
    if (!saw_term) bad("termSec '" + term.term_id + "' lacks a <term> element");
    return term;
}

ParsedEntry parse_concept_entry(const XmlNode& node) {
    require_attributes(node, {"id"});
    require_container(node);
    ParsedEntry entry;
    entry.concept_id = node.attributes.at("id");
    bool saw_lang_section = false;
    for (const XmlNode& child : node.children) {
        if (child.name == "descrip") {
            require_attributes(child, {"type"});
            const std::string& type = child.attributes.at("type");
            if (type == "superordinateConcept") {
                if (entry.superordinate_id.has_value()) {
                    bad("conceptEntry '" + entry.concept_id +
                        "' has more than one superordinateConcept");
                }
                entry.superordinate_id = text_of(child);
            } else if (type == "genericRelation") {
                entry.generic_targets.push_back(text_of(child));
            } else if (type == "characteristic") {
                const std::string& value = text_of(child);
                std::size_t colon = value.find(':');
                if (colon == std::string::npos || colon == 0 || colon + 1 == value.size()) {
                    bad("characteristic descrip '" + value + "' is not VARIETY:NAME");
                }
                std::string variety = value.substr(0, colon);
                if (variety != "type" && variety != "essential" && variety != "non-essential" &&
                    variety != "delimiting") {
                    bad("unknown characteristic variety '" + variety + "'");
                }
                entry.characteristics.emplace_back(std::move(variety), value.substr(colon + 1));
            } else {
                bad("unknown descrip type '" + type + "' in <conceptEntry>");
            }
        } else if (child.name == "langSec") {
            require_attributes(child, {"xml:lang"});
            require_container(child);
            saw_lang_section = true;
            const std::string& language = child.attributes.at("xml:lang");
            bool saw_term_section = false;
            for (const XmlNode& section : child.children) {
                if (section.name != "termSec") {
                    bad("unexpected element <" + section.name + "> in <langSec>");
                }
                entry.terms.push_back(parse_term_section(section, language));
                saw_term_section = true;
            }
            if (!saw_term_section) {
                bad("langSec '" + language + "' in conceptEntry '" + entry.concept_id +
                    "' has no termSec");
            }
        } else {
            bad("unexpected element <" + child.name + "> in <conceptEntry>");
        }
    }
    if (!saw_lang_section) bad("conceptEntry '" + entry.concept_id + "' has no langSec");
    return entry;
}

} // namespace

ERInstance import_tbx(std::string_view xml_text) {
    XmlNode root = xml::parse_document(xml_text);
    if (root.name != "tbx") bad("document element is <" + root.name + ">, expected <tbx>");
    require_attributes(root, {"style", "type", "xml:lang", "xmlns"});
    if (root.attributes.at("xmlns") != kNamespace) {
        bad("unsupported namespace '" + root.attributes.at("xmlns") + "'");
    }
    if (root.attributes.at("style") != "dca" || root.attributes.at("type") != "TBX-Basic") {
        bad("unsupported dialect (expected style=\"dca\" type=\"TBX-Basic\")");
    }
    require_container(root);
    if (root.children.size() != 2 || root.children[0].name != "tbxHeader" ||
        root.children[1].name != "text") {
        bad("<tbx> must contain <tbxHeader> followed by <text>");
    }

    const XmlNode& header = root.children[0];
    require_no_attributes(header);
    const XmlNode& title_stmt = only_child(only_child(header, "fileDesc"), "titleStmt");
    text_of(only_child(title_stmt, "title")); // structural check; content unused

    const XmlNode& body = only_child(root.children[1], "body");
    require_no_attributes(body);
    require_container(body);

    std::vector<ParsedEntry> entries;
    for (const XmlNode& child : body.children) {
        if (child.name != "conceptEntry") {
            bad("unexpected element <" + child.name + "> in <body>");
        }
        entries.push_back(parse_concept_entry(child));
    }

    ERInstance termbase = new_termbase();
    std::set<std::string> concept_ids;
    for (const ParsedEntry& entry : entries) {
        add_concept(termbase, entry.concept_id); // rejects duplicates
        concept_ids.insert(entry.concept_id);
    }

    // characteristic varieties must agree across the whole document
    std::map<std::string, std::pair<std::string, std::string>> varieties; // name -> (variety, entry)
    for (const ParsedEntry& entry : entries) {
        for (const auto& [variety, name] : entry.characteristics) {
            auto [it, inserted] = varieties.emplace(name, std::make_pair(variety, entry.concept_id));
            if (!inserted && it->second.first != variety) {
                throw Error(ErrorCode::conflict,
                            "characteristic '" + name + "' has variety '" + it->second.first +
                                "' in conceptEntry '" + it->second.second + "' but variety '" +
                                variety + "' in conceptEntry '" + entry.concept_id + "'");
            }
        }
    }
    for (const auto& [name, variety_entry] : varieties) {
        add_characteristic(termbase, name, variety_entry.first);
    }

    for (const ParsedEntry& entry : entries) {
        if (entry.superordinate_id.has_value() && concept_ids.count(*entry.superordinate_id) == 0) {
            bad("superordinateConcept target '" + *entry.superordinate_id + "' of conceptEntry '" +
                entry.concept_id + "' is not in the document");
        }
        for (const std::string& target : entry.generic_targets) {
            if (concept_ids.count(target) == 0) {
                bad("genericRelation target '" + target + "' of conceptEntry '" + entry.concept_id +
                    "' is not in the document");
            }
        }
        // raw links: force-exported documents may carry hierarchy cycles,
        // which the eager builder would refuse to rebuild
        if (entry.superordinate_id.has_value()) {
            termbase.add_link("Hierarchical", *entry.superordinate_id, entry.concept_id);
        }
        for (const std::string& target : entry.generic_targets) {
            termbase.add_link("Generic", entry.concept_id, target);
        }
        for (const auto& [unused, name] : entry.characteristics) {
            termbase.add_link("Delineated", entry.concept_id, name);
        }
        for (const ParsedTerm& term : entry.terms) {
            add_term(termbase, term.term_id, term.designation, term.language, term.definition);
            termbase.add_link("Denoted", entry.concept_id, term.term_id);
        }
    }
    return termbase;
}

} // namespace termstore
