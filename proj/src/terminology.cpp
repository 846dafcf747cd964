#include "termstore/terminology.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

#include "termstore/text.hpp"

namespace termstore {

namespace {

constexpr const char* kVarietyType = "type";

ERSchema build_terminology_schema() {
    ERSchema schema;
    schema.name = std::string(kTerminologySchemaName);
    schema.version = std::string(kTerminologySchemaVersion);

    auto id_attr = [](const char* name) {
        return AttributeDef{name, AttributeKind::identifier, std::nullopt};
    };
    auto req = [](const char* name) {
        return AttributeDef{name, AttributeKind::required, std::nullopt};
    };
    auto opt = [](const char* name) {
        return AttributeDef{name, AttributeKind::optional, std::nullopt};
    };

    schema.entity_types = {
        {"Concept", {id_attr("id")}},
        {"Term", {id_attr("id"), req("designation"), req("language"), opt("definition")}},
        {"Characteristic",
         {id_attr("name"),
          AttributeDef{"variety", AttributeKind::required,
                       std::vector<std::string>{"type", "essential", "non-essential",
                                                "delimiting"}}}},
        {"TextSource", {id_attr("id"), opt("title")}},
        {"Collection", {id_attr("id"), opt("name")}},
        {"Frame", {id_attr("id"), req("name")}},
        {"FrameElement", {id_attr("id"), req("name")}},
    };

    auto assoc = [](const char* name, const char* role1, const char* type1, Cardinality c1,
                    const char* role2, const char* type2, Cardinality c2) {
        return AssociationDef{name, RoleDef{role1, type1, c1}, RoleDef{role2, type2, c2}};
    };
    const Cardinality any{0, kUnbounded};
    const Cardinality one_or_more{1, kUnbounded};
    const Cardinality exactly_one{1, 1};
    const Cardinality at_most_one{0, 1};

    schema.associations = {
        assoc("Denoted", "denoting-concept", "Concept", one_or_more, //
              "denoted-term", "Term", exactly_one),
        assoc("Hierarchical", "superordinate", "Concept", any, //
              "subordinate", "Concept", at_most_one),
        assoc("Generic", "generic-source", "Concept", any, //
              "generic-target", "Concept", any),
        assoc("Delineated", "delineated-concept", "Concept", any, //
              "delineating-characteristic", "Characteristic", any),
        assoc("Group", "grouping-type", "Characteristic", any, //
              "grouped-member", "Characteristic", any),
        assoc("OccursIn", "occurring-term", "Term", any, //
              "source-text", "TextSource", any),
        assoc("PartOfCollection", "member-text", "TextSource", exactly_one, //
              "holding-collection", "Collection", any),
        assoc("ConnectedTo", "relation-source", "Concept", any, //
              "relation-target", "Concept", any),
        assoc("ConsistsOf", "relation-source", "Concept", any, //
              "relation-target", "Concept", any),
        assoc("IsA", "relation-source", "Concept", any, //
              "relation-target", "Concept", any),
        assoc("Evokes", "evoking-term", "Term", any, //
              "evoked-frame", "Frame", any),
        assoc("HasElement", "owning-frame", "Frame", any, //
              "element", "FrameElement", exactly_one),
        assoc("FilledBy", "slot", "FrameElement", any, //
              "filler-term", "Term", any),
    };

    return schema;
}

void require_terminology(const ERInstance& instance) {
    if (instance.schema() != *terminology_schema()) {
        throw Error(ErrorCode::wrong_schema, "instance does not use the terminology schema");
    }
}

void require_entity(const ERInstance& instance, std::string_view type, std::string_view id) {
    if (instance.find_entity(type, id) == nullptr) {
        throw Error(ErrorCode::dangling_endpoint,
                    std::string(type) + " '" + std::string(id) + "' does not exist");
    }
}

// superordinate chain walk over Hierarchical links (child -> parents)
std::vector<std::string> parents_of(const ERInstance& instance, std::string_view concept_id) {
    std::vector<std::string> parents;
    for (const auto& link : instance.links()) {
        if (link.association == "Hierarchical" && link.to == concept_id) {
            parents.push_back(link.from);
        }
    }
    return parents;
}

} // namespace

const std::shared_ptr<const ERSchema>& terminology_schema() {
    static const std::shared_ptr<const ERSchema> schema =
        std::make_shared<const ERSchema>(build_terminology_schema());
    return schema;
}

ERInstance new_termbase() {
    return ERInstance(terminology_schema());
}

void add_concept(ERInstance& termbase, std::string_view concept_id) {
    require_terminology(termbase);
    termbase.add_entity("Concept", concept_id);
}

void add_term(ERInstance& termbase, std::string_view term_id, std::string_view designation,
              std::string_view language, const std::optional<std::string>& definition) {
    require_terminology(termbase);
    if (!valid_language_tag(language)) {
        throw Error(ErrorCode::invalid_language,
                    "language tag '" + std::string(language) +
                        "' is not made of ASCII letters, digits and hyphens");
    }
    AttributeValues attrs{{"designation", std::string(designation)},
                          {"language", std::string(language)}};
    if (definition.has_value()) attrs.emplace("definition", *definition);
    termbase.add_entity("Term", term_id, attrs);
}

void add_characteristic(ERInstance& termbase, std::string_view name, std::string_view variety) {
    require_terminology(termbase);
    termbase.add_entity("Characteristic", name, {{"variety", std::string(variety)}});
}

void add_text_source(ERInstance& termbase, std::string_view text_id,
                     const std::optional<std::string>& title) {
    require_terminology(termbase);
    AttributeValues attrs;
    if (title.has_value()) attrs.emplace("title", *title);
    termbase.add_entity("TextSource", text_id, attrs);
}

void add_collection(ERInstance& termbase, std::string_view collection_id,
                    const std::optional<std::string>& name) {
    require_terminology(termbase);
    AttributeValues attrs;
    if (name.has_value()) attrs.emplace("name", *name);
    termbase.add_entity("Collection", collection_id, attrs);
}

void add_frame(ERInstance& termbase, std::string_view frame_id, std::string_view name) {
    require_terminology(termbase);
    termbase.add_entity("Frame", frame_id, {{"name", std::string(name)}});
}

void add_frame_element(ERInstance& termbase, std::string_view element_id, std::string_view name) {
    require_terminology(termbase);
    termbase.add_entity("FrameElement", element_id, {{"name", std::string(name)}});
}

void denote(ERInstance& termbase, std::string_view concept_id, std::string_view term_id) {
    require_terminology(termbase);
    require_entity(termbase, "Concept", concept_id);
    require_entity(termbase, "Term", term_id);
    for (const auto& link : termbase.links()) {
        if (link.association == "Denoted" && link.to == term_id) {
            throw Error(ErrorCode::term_already_assigned,
                        "term '" + std::string(term_id) + "' is already assigned to concept '" +
                            link.from + "'");
        }
    }
    termbase.add_link("Denoted", concept_id, term_id);
}

void set_superordinate(ERInstance& termbase, std::string_view child_concept_id,
                       std::string_view parent_concept_id) {
    require_terminology(termbase);
    require_entity(termbase, "Concept", child_concept_id);
    require_entity(termbase, "Concept", parent_concept_id);
    if (child_concept_id == parent_concept_id) {
        throw Error(ErrorCode::self_link, "concept '" + std::string(child_concept_id) +
                                              "' cannot be its own superordinate");
    }
    for (const auto& link : termbase.links()) {
        if (link.association == "Hierarchical" && link.to == child_concept_id) {
            throw Error(ErrorCode::already_has_superordinate,
                        "concept '" + std::string(child_concept_id) +
                            "' already has superordinate '" + link.from + "'");
        }
    }
    // walk up from the prospective parent; hitting the child closes a cycle
    std::vector<std::string> frontier{std::string(parent_concept_id)};
    std::set<std::string> seen;
    while (!frontier.empty()) {
        std::string current = std::move(frontier.back());
        frontier.pop_back();
        if (!seen.insert(current).second) continue;
        if (current == child_concept_id) {
            throw Error(ErrorCode::cycle_detected,
                        "setting '" + std::string(parent_concept_id) + "' above '" +
                            std::string(child_concept_id) + "' would create a hierarchy cycle");
        }
        for (auto& parent : parents_of(termbase, current)) frontier.push_back(std::move(parent));
    }
    termbase.add_link("Hierarchical", parent_concept_id, child_concept_id);
}

void add_generic(ERInstance& termbase, std::string_view source_concept_id,
                 std::string_view target_concept_id) {
    require_terminology(termbase);
    termbase.add_link("Generic", source_concept_id, target_concept_id);
}

void add_characteristic_to_concept(ERInstance& termbase, std::string_view concept_id,
                                   std::string_view characteristic_name) {
    require_terminology(termbase);
    termbase.add_link("Delineated", concept_id, characteristic_name);
}

void group_characteristic(ERInstance& termbase, std::string_view type_characteristic,
                          std::string_view member) {
    require_terminology(termbase);
    const EntityInstance* grouping = termbase.find_entity("Characteristic", type_characteristic);
    if (grouping == nullptr) {
        throw Error(ErrorCode::dangling_endpoint,
                    "Characteristic '" + std::string(type_characteristic) + "' does not exist");
    }
    auto variety = grouping->attrs.find("variety");
    if (variety == grouping->attrs.end() || variety->second != kVarietyType) {
        throw Error(ErrorCode::not_a_type_characteristic,
                    "characteristic '" + std::string(type_characteristic) +
                        "' has variety '" +
                        (variety == grouping->attrs.end() ? std::string() : variety->second) +
                        "' and cannot group members");
    }
    if (type_characteristic == member) {
        throw Error(ErrorCode::self_group, "characteristic '" + std::string(member) +
                                               "' cannot group itself");
    }
    termbase.add_link("Group", type_characteristic, member);
}

void record_occurrence(ERInstance& termbase, std::string_view term_id, std::string_view text_id) {
    require_terminology(termbase);
    termbase.add_link("OccursIn", term_id, text_id);
}

void assign_to_collection(ERInstance& termbase, std::string_view text_id,
                          std::string_view collection_id) {
    require_terminology(termbase);
    termbase.add_link("PartOfCollection", text_id, collection_id);
}

void relate_concepts(ERInstance& termbase, ConceptRelation relation,
                     std::string_view source_concept_id, std::string_view target_concept_id) {
    require_terminology(termbase);
    const char* assoc = nullptr;
    switch (relation) {
        case ConceptRelation::connected_to: assoc = "ConnectedTo"; break;
        case ConceptRelation::consists_of: assoc = "ConsistsOf"; break;
        case ConceptRelation::is_a: assoc = "IsA"; break;
    }
    termbase.add_link(assoc, source_concept_id, target_concept_id);
}

void evoke(ERInstance& termbase, std::string_view term_id, std::string_view frame_id) {
    require_terminology(termbase);
    termbase.add_link("Evokes", term_id, frame_id);
}

void add_element_to_frame(ERInstance& termbase, std::string_view frame_id,
                          std::string_view element_id) {
    require_terminology(termbase);
    termbase.add_link("HasElement", frame_id, element_id);
}

void fill_slot(ERInstance& termbase, std::string_view element_id, std::string_view term_id) {
    require_terminology(termbase);
    termbase.add_link("FilledBy", element_id, term_id);
}

namespace {

// One conditional violation per hierarchy cycle, anchored at the smallest
// concept id on it. Works on arbitrary link sets, not just forests, so
// hand-edited stores with several parents are still diagnosed.
void check_hierarchy_cycles(const ERInstance& termbase, ViolationReport& report) {
    std::map<std::string, std::vector<std::string>> up; // child -> parents
    for (const auto& link : termbase.links()) {
        if (link.association == "Hierarchical") up[link.to].push_back(link.from);
    }
    for (auto& [child, parents] : up) std::sort(parents.begin(), parents.end());

    // iterative coloring; a back edge marks every node on the cycle
    std::map<std::string, int> color; // 0 new, 1 on stack, 2 done
    std::set<std::vector<std::string>> cycles;
    for (const auto& [start, unused] : up) {
        if (color[start] != 0) continue;
        std::vector<std::pair<std::string, std::size_t>> stack{{start, 0}};
        std::vector<std::string> path{start};
        color[start] = 1;
        while (!stack.empty()) {
            auto& [node, next_index] = stack.back();
            const auto& parents = up[node];
            if (next_index < parents.size()) {
                const std::string parent = parents[next_index++];
                if (color[parent] == 1) {
                    auto begin = std::find(path.begin(), path.end(), parent);
                    std::vector<std::string> cycle(begin, path.end());
                    std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()),
                                cycle.end());
                    cycles.insert(std::move(cycle));
                } else if (color[parent] == 0) {
                    color[parent] = 1;
                    stack.emplace_back(parent, 0);
                    path.push_back(parent);
                }
            } else {
                color[node] = 2;
                stack.pop_back();
                path.pop_back();
            }
        }
    }

    for (const auto& cycle : cycles) {
        std::string rendered;
        for (const auto& node : cycle) rendered += node + " -> ";
        rendered += cycle.front();
        report.violations.push_back(
            {ViolationKind::conditional, "Concept", cycle.front(), "Hierarchical", "", std::nullopt,
             std::nullopt,
             "conditional: Concept '" + cycle.front() + "' is its own ancestor (cycle: " +
                 rendered + ")"});
    }
}

} // namespace

ViolationReport validate_termbase(const ERInstance& termbase) {
    require_terminology(termbase);
    ViolationReport report = termbase.check_cardinalities();

    // grouping rules over characteristics
    std::set<std::string> grouping_with_members;
    for (const auto& link : termbase.links()) {
        if (link.association != "Group") continue;
        grouping_with_members.insert(link.from);
        const EntityInstance* grouping = termbase.find_entity("Characteristic", link.from);
        if (grouping != nullptr) {
            auto variety = grouping->attrs.find("variety");
            const std::string value =
                variety == grouping->attrs.end() ? std::string() : variety->second;
            if (value != kVarietyType) {
                report.violations.push_back(
                    {ViolationKind::conditional, "Characteristic", link.from, "Group",
                     "grouping-type", std::nullopt, std::nullopt,
                     "conditional: Characteristic '" + link.from + "' (variety '" + value +
                         "') occupies the grouping-type role but is not a type characteristic"});
            }
        }
        if (link.from == link.to) {
            report.violations.push_back(
                {ViolationKind::conditional, "Characteristic", link.from, "Group", "grouped-member",
                 std::nullopt, std::nullopt,
                 "conditional: Characteristic '" + link.from + "' groups itself"});
        }
    }
    for (const auto& [name, characteristic] : termbase.entities().at("Characteristic")) {
        auto variety = characteristic.attrs.find("variety");
        if (variety != characteristic.attrs.end() && variety->second == kVarietyType &&
            grouping_with_members.count(name) == 0) {
            report.violations.push_back(
                {ViolationKind::conditional, "Characteristic", name, "Group", "grouping-type",
                 std::uint64_t{0}, std::uint64_t{1},
                 "conditional: Characteristic '" + name +
                     "' is a type characteristic but groups no members (minimum 1)"});
        }
    }

    check_hierarchy_cycles(termbase, report);

    report.sort();
    return report;
}

std::vector<std::string> homographs(const ERInstance& termbase, std::string_view designation,
                                    const std::optional<std::string>& language) {
    require_terminology(termbase);
    const std::string query = nfc(designation);
    const std::optional<std::string> language_query =
        language.has_value() ? std::optional<std::string>(nfc(*language)) : std::nullopt;
    std::vector<std::string> ids;
    for (const auto& [id, term] : termbase.entities().at("Term")) {
        auto stored = term.attrs.find("designation");
        if (stored == term.attrs.end() || stored->second != query) continue;
        if (language_query.has_value()) {
            auto stored_language = term.attrs.find("language");
            if (stored_language == term.attrs.end() || stored_language->second != *language_query) {
                continue;
            }
        }
        ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::string formal_definition(const ERInstance& termbase, std::string_view concept_id) {
    require_terminology(termbase);
    if (termbase.find_entity("Concept", concept_id) == nullptr) {
        throw Error(ErrorCode::not_found,
                    "Concept '" + std::string(concept_id) + "' does not exist");
    }
    std::vector<std::string> delimiting, essential, non_essential;
    for (const auto& link : termbase.links()) {
        if (link.association != "Delineated" || link.from != concept_id) continue;
        const EntityInstance* characteristic = termbase.find_entity("Characteristic", link.to);
        if (characteristic == nullptr) continue; // dangling, reported by validation
        auto variety = characteristic->attrs.find("variety");
        if (variety == characteristic->attrs.end()) continue;
        if (variety->second == "delimiting") delimiting.push_back(link.to);
        else if (variety->second == "essential") essential.push_back(link.to);
        else if (variety->second == "non-essential") non_essential.push_back(link.to);
        // variety=type characteristics classify characteristics, not concepts
    }
    auto render = [](const char* label, std::vector<std::string>& names) {
        std::sort(names.begin(), names.end());
        std::string out = std::string(label) + "{";
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (i > 0) out += ",";
            out += names[i];
        }
        return out + "}";
    };
    return "Concept " + std::string(concept_id) + " := " + render("delimiting", delimiting) + " " +
           render("essential", essential) + " " + render("non-essential", non_essential);
}

const char* approach_name(Approach approach) {
    switch (approach) {
        case Approach::onomasiological: return "onomasiological";
        case Approach::semasiological: return "semasiological";
        case Approach::ontoterminological: return "ontoterminological";
        case Approach::frame_based: return "frame-based";
    }
    return "unknown";
}

std::optional<Approach> approach_from_name(std::string_view name) {
    if (name == "onomasiological") return Approach::onomasiological;
    if (name == "semasiological") return Approach::semasiological;
    if (name == "ontoterminological") return Approach::ontoterminological;
    if (name == "frame-based") return Approach::frame_based;
    return std::nullopt;
}

Projection view(const ERInstance& termbase, Approach approach) {
    require_terminology(termbase);

    static const std::set<std::string> onoma_types{"Concept", "Term", "Characteristic"};
    static const std::set<std::string> onoma_assocs{"Denoted", "Hierarchical", "Generic",
                                                    "Delineated", "Group"};

    std::set<std::string> entity_types;
    std::set<std::string> associations;
    switch (approach) {
        case Approach::onomasiological:
        case Approach::ontoterminological:
            // the ontoterminological view differs in surfaced data (term
            // definitions, formal definitions), not in the included types
            entity_types = onoma_types;
            associations = onoma_assocs;
            break;
        case Approach::semasiological:
            entity_types = onoma_types;
            entity_types.insert({"TextSource", "Collection"});
            associations = onoma_assocs;
            associations.insert(
                {"OccursIn", "PartOfCollection", "ConnectedTo", "ConsistsOf", "IsA"});
            break;
        case Approach::frame_based:
            entity_types = {"Concept", "Term", "Frame", "FrameElement"};
            associations = {"Denoted", "Evokes", "HasElement", "FilledBy"};
            break;
    }

    ERInstance::EntityMap kept_entities;
    for (const auto& type_name : entity_types) {
        kept_entities[type_name] = termbase.entities().at(type_name);
    }
    ERInstance::LinkSet kept_links;
    const ERSchema& schema = termbase.schema();
    for (const auto& link : termbase.links()) {
        if (associations.count(link.association) == 0) continue;
        const AssociationDef* assoc = schema.find_association(link.association);
        auto present = [&](const std::string& type, const std::string& id) {
            auto bucket = kept_entities.find(type);
            return bucket != kept_entities.end() && bucket->second.count(id) != 0;
        };
        if (present(assoc->role1.entity_type, link.from) &&
            present(assoc->role2.entity_type, link.to)) {
            kept_links.insert(link);
        }
    }

    return Projection{approach, std::move(entity_types), std::move(associations),
                      ERInstance::from_parts(termbase.schema_ptr(), std::move(kept_entities),
                                             std::move(kept_links))};
}

} // namespace termstore
