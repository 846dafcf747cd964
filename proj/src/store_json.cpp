#include "termstore/store_json.hpp"

#include "json.hpp"

#include "termstore/text.hpp"

namespace termstore {

namespace {

using nlohmann::json;

// nlohmann's default object type is std::map, so object keys come out in
// lexicographic order; dump(2) then yields the canonical two-space form.
json to_json(const ERInstance& instance) {
    json doc = json::object();
    doc["schemaName"] = instance.schema().name;
    doc["schemaVersion"] = instance.schema().version;

    json entities = json::object();
    for (const auto& [type_name, bucket] : instance.entities()) {
        json list = json::array();
        for (const auto& [id, entity] : bucket) {
            json attrs = json::object();
            for (const auto& [name, value] : entity.attrs) attrs[name] = value;
            list.push_back(json{{"attrs", std::move(attrs)}, {"id", id}});
        }
        entities[type_name] = std::move(list);
    }
    doc["entities"] = std::move(entities);

    json links = json::array();
    for (const auto& link : instance.links()) {
        links.push_back(
            json{{"assoc", link.association}, {"from", link.from}, {"to", link.to}});
    }
    doc["links"] = std::move(links);
    return doc;
}

[[noreturn]] void corrupt(const std::string& detail) {
    throw Error(ErrorCode::parse_error, "corrupt store: " + detail);
}

const json& member(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) corrupt(std::string("missing key '") + key + "'");
    return *it;
}

} // namespace

std::string store_bytes(const ERInstance& instance) {
    return to_json(instance).dump(2) + "\n";
}

ERInstance load_store(std::string_view bytes, std::shared_ptr<const ERSchema> schema) {
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::exception& e) {
        corrupt(e.what());
    }
    if (!doc.is_object()) corrupt("top level is not an object");
    for (const auto& [key, value] : doc.items()) {
        if (key != "schemaName" && key != "schemaVersion" && key != "entities" && key != "links") {
            corrupt("unexpected key '" + key + "'");
        }
    }

    const json& name = member(doc, "schemaName");
    const json& version = member(doc, "schemaVersion");
    if (!name.is_string() || name.get<std::string>() != schema->name) {
        corrupt("schemaName does not match '" + schema->name + "'");
    }
    if (!version.is_string() || version.get<std::string>() != schema->version) {
        corrupt("schemaVersion does not match '" + schema->version + "'");
    }

    ERInstance::EntityMap entities;
    const json& entity_obj = member(doc, "entities");
    if (!entity_obj.is_object()) corrupt("'entities' is not an object");
    for (const auto& [type_name, list] : entity_obj.items()) {
        if (schema->find_entity_type(type_name) == nullptr) {
            corrupt("unknown entity type '" + type_name + "'");
        }
        if (!list.is_array()) corrupt("entity list for '" + type_name + "' is not an array");
        auto& bucket = entities[type_name];
        for (const auto& item : list) {
            if (!item.is_object()) corrupt("entity entry in '" + type_name + "' is not an object");
            const json& id_value = member(item, "id");
            const json& attrs_value = member(item, "attrs");
            if (!id_value.is_string() || id_value.get<std::string>().empty()) {
                corrupt("entity in '" + type_name + "' without a non-empty string id");
            }
            if (!attrs_value.is_object()) {
                corrupt("entity attrs in '" + type_name + "' is not an object");
            }
            EntityInstance entity;
            entity.id = id_value.get<std::string>();
            for (const auto& [attr_name, attr_value] : attrs_value.items()) {
                if (!attr_value.is_string()) {
                    corrupt(type_name + " '" + entity.id + "': attribute '" + attr_name +
                            "' is not a string");
                }
                // values are normalized here; their validity is re-checked by
                // check_cardinalities, not enforced on load
                entity.attrs[attr_name] = nfc(attr_value.get<std::string>());
            }
            std::string id = entity.id;
            if (!bucket.emplace(id, std::move(entity)).second) {
                corrupt("duplicate " + type_name + " id '" + id + "'");
            }
        }
    }

    ERInstance::LinkSet links;
    const json& link_list = member(doc, "links");
    if (!link_list.is_array()) corrupt("'links' is not an array");
    for (const auto& item : link_list) {
        if (!item.is_object()) corrupt("link entry is not an object");
        const json& assoc = member(item, "assoc");
        const json& from = member(item, "from");
        const json& to = member(item, "to");
        if (!assoc.is_string() || !from.is_string() || !to.is_string()) {
            corrupt("link fields must be strings");
        }
        if (schema->find_association(assoc.get<std::string>()) == nullptr) {
            corrupt("unknown association '" + assoc.get<std::string>() + "'");
        }
        Link link{assoc.get<std::string>(), from.get<std::string>(), to.get<std::string>()};
        if (link.from.empty() || link.to.empty()) corrupt("link endpoint id is empty");
        if (!links.insert(link).second) {
            corrupt("duplicate " + link.association + " link (" + link.from + " -> " + link.to +
                    ")");
        }
    }

    return ERInstance::from_parts(std::move(schema), std::move(entities), std::move(links));
}

} // namespace termstore
