#include "termstore/instance.hpp"

#include <algorithm>
#include <tuple>

#include "termstore/text.hpp"

namespace termstore {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::schema_error: return "schema-error";
        case ErrorCode::wrong_schema: return "wrong-schema";
        case ErrorCode::unknown_type: return "unknown-type";
        case ErrorCode::unknown_association: return "unknown-association";
        case ErrorCode::unknown_attribute: return "unknown-attribute";
        case ErrorCode::unknown_role: return "unknown-role";
        case ErrorCode::duplicate_id: return "duplicate-id";
        case ErrorCode::duplicate_link: return "duplicate-link";
        case ErrorCode::dangling_endpoint: return "dangling-endpoint";
        case ErrorCode::not_found: return "not-found";
        case ErrorCode::entity_still_linked: return "entity-still-linked";
        case ErrorCode::missing_required_attribute: return "missing-required-attribute";
        case ErrorCode::value_outside_enumeration: return "value-outside-enumeration";
        case ErrorCode::invalid_identifier: return "invalid-identifier";
        case ErrorCode::term_already_assigned: return "term-already-assigned";
        case ErrorCode::already_has_superordinate: return "already-has-superordinate";
        case ErrorCode::cycle_detected: return "cycle-detected";
        case ErrorCode::self_link: return "self-link";
        case ErrorCode::not_a_type_characteristic: return "not-a-type-characteristic";
        case ErrorCode::self_group: return "self-group";
        case ErrorCode::invalid_language: return "invalid-language";
        case ErrorCode::parse_error: return "parse-error";
        case ErrorCode::conflict: return "conflict";
        case ErrorCode::invalid_iri: return "invalid-iri";
        case ErrorCode::validation_failed: return "validation-failed";
        case ErrorCode::io_error: return "io-error";
        case ErrorCode::usage_error: return "usage-error";
    }
    return "unknown";
}

const char* violation_kind_name(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::below_min: return "below-min";
        case ViolationKind::above_max: return "above-max";
        case ViolationKind::dangling_ref: return "dangling-ref";
        case ViolationKind::duplicate_id: return "duplicate-id";
        case ViolationKind::bad_attribute: return "bad-attribute";
        case ViolationKind::conditional: return "conditional";
    }
    return "unknown";
}

bool ViolationReport::any_hard() const {
    return std::any_of(violations.begin(), violations.end(),
                       [](const Violation& v) { return v.kind != ViolationKind::conditional; });
}

bool ViolationReport::any_conditional() const {
    return std::any_of(violations.begin(), violations.end(),
                       [](const Violation& v) { return v.kind == ViolationKind::conditional; });
}

void ViolationReport::sort() {
    std::sort(violations.begin(), violations.end(), [](const Violation& a, const Violation& b) {
        return std::tie(a.entity_type, a.entity_id, a.association, a.role, a.kind, a.message) <
               std::tie(b.entity_type, b.entity_id, b.association, b.role, b.kind, b.message);
    });
}

namespace {

std::string quoted(std::string_view s) {
    return "'" + std::string(s) + "'";
}

} // namespace

ERInstance::ERInstance(std::shared_ptr<const ERSchema> schema) : schema_(std::move(schema)) {
    if (!schema_) {
        throw Error(ErrorCode::schema_error, "instance requires a schema");
    }
    auto issues = validate_schema(*schema_);
    if (!issues.empty()) {
        throw Error(ErrorCode::schema_error, "ill-formed schema: " + issues.front());
    }
    for (const auto& type : schema_->entity_types) {
        entities_[type.name];
    }
}

ERInstance ERInstance::from_parts(std::shared_ptr<const ERSchema> schema, EntityMap entities,
                                  LinkSet links) {
    ERInstance instance(std::move(schema));
    for (auto& [type_name, bucket] : entities) {
        if (instance.schema().find_entity_type(type_name) == nullptr) {
            throw Error(ErrorCode::unknown_type, "unknown entity type " + quoted(type_name));
        }
        for (auto& [id, entity] : bucket) {
            if (id.empty() || id != entity.id) {
                throw Error(ErrorCode::invalid_identifier,
                            "entity key does not match its id in type " + quoted(type_name));
            }
        }
        instance.entities_[type_name] = std::move(bucket);
    }
    for (const auto& link : links) {
        if (instance.schema().find_association(link.association) == nullptr) {
            throw Error(ErrorCode::unknown_association,
                        "unknown association " + quoted(link.association));
        }
    }
    instance.links_ = std::move(links);
    return instance;
}

const std::map<std::string, EntityInstance>& ERInstance::bucket(std::string_view type_name) const {
    auto it = entities_.find(std::string(type_name));
    if (it == entities_.end()) {
        throw Error(ErrorCode::unknown_type, "unknown entity type " + quoted(type_name));
    }
    return it->second;
}

const EntityInstance* ERInstance::find_entity(std::string_view type_name,
                                              std::string_view id) const {
    auto type_it = entities_.find(std::string(type_name));
    if (type_it == entities_.end()) return nullptr;
    auto it = type_it->second.find(std::string(id));
    return it == type_it->second.end() ? nullptr : &it->second;
}

std::uint64_t ERInstance::entity_count() const {
    std::uint64_t n = 0;
    for (const auto& [type_name, bucket] : entities_) n += bucket.size();
    return n;
}

void ERInstance::add_entity(std::string_view type_name, std::string_view id,
                            const AttributeValues& attrs) {
    const EntityTypeDef* type = schema_->find_entity_type(type_name);
    if (type == nullptr) {
        throw Error(ErrorCode::unknown_type, "unknown entity type " + quoted(type_name));
    }
    if (!valid_identifier(id)) {
        throw Error(ErrorCode::invalid_identifier,
                    "id " + quoted(id) + " does not match the identifier alphabet");
    }

    EntityInstance entity;
    entity.id = std::string(id);
    for (const auto& [name, value] : attrs) {
        const AttributeDef* attr = type->find_attribute(name);
        if (attr == nullptr) {
            throw Error(ErrorCode::unknown_attribute, std::string(type_name) + " " + quoted(id) +
                                                          ": unknown attribute " + quoted(name));
        }
        if (attr->kind == AttributeKind::identifier) {
            throw Error(ErrorCode::unknown_attribute,
                        std::string(type_name) + " " + quoted(id) + ": identifier attribute " +
                            quoted(name) + " is set through the id, not the attribute map");
        }
        std::string normalized = nfc(value);
        if (attr->enumeration.has_value()) {
            const auto& domain = *attr->enumeration;
            if (std::find(domain.begin(), domain.end(), normalized) == domain.end()) {
                throw Error(ErrorCode::value_outside_enumeration,
                            std::string(type_name) + " " + quoted(id) + ": value " +
                                quoted(normalized) + " is outside the enumeration of attribute " +
                                quoted(name));
            }
        }
        entity.attrs.emplace(name, std::move(normalized));
    }
    for (const auto& attr : type->attributes) {
        if (attr.kind == AttributeKind::required && entity.attrs.count(attr.name) == 0) {
            throw Error(ErrorCode::missing_required_attribute,
                        std::string(type_name) + " " + quoted(id) +
                            ": missing required attribute " + quoted(attr.name));
        }
    }

    auto& bucket_ref = entities_.at(std::string(type_name));
    if (!bucket_ref.emplace(entity.id, std::move(entity)).second) {
        throw Error(ErrorCode::duplicate_id,
                    std::string(type_name) + " " + quoted(id) + " already exists");
    }
}

void ERInstance::add_link(std::string_view association, std::string_view from_id,
                          std::string_view to_id) {
    const AssociationDef* assoc = schema_->find_association(association);
    if (assoc == nullptr) {
        throw Error(ErrorCode::unknown_association, "unknown association " + quoted(association));
    }
    if (find_entity(assoc->role1.entity_type, from_id) == nullptr) {
        throw Error(ErrorCode::dangling_endpoint,
                    std::string(association) + ": no " + assoc->role1.entity_type + " " +
                        quoted(from_id) + " for role " + quoted(assoc->role1.role_name));
    }
    if (find_entity(assoc->role2.entity_type, to_id) == nullptr) {
        throw Error(ErrorCode::dangling_endpoint,
                    std::string(association) + ": no " + assoc->role2.entity_type + " " +
                        quoted(to_id) + " for role " + quoted(assoc->role2.role_name));
    }
    Link link{std::string(association), std::string(from_id), std::string(to_id)};
    if (!links_.insert(std::move(link)).second) {
        throw Error(ErrorCode::duplicate_link, std::string(association) + " link (" +
                                                   std::string(from_id) + " -> " +
                                                   std::string(to_id) + ") already exists");
    }
}

void ERInstance::remove_entity(std::string_view type_name, std::string_view id) {
    auto type_it = entities_.find(std::string(type_name));
    if (type_it == entities_.end()) {
        throw Error(ErrorCode::unknown_type, "unknown entity type " + quoted(type_name));
    }
    auto it = type_it->second.find(std::string(id));
    if (it == type_it->second.end()) {
        throw Error(ErrorCode::not_found,
                    std::string(type_name) + " " + quoted(id) + " does not exist");
    }
    std::uint64_t referencing = 0;
    for (const auto& link : links_) {
        const AssociationDef* assoc = schema_->find_association(link.association);
        if ((assoc->role1.entity_type == type_name && link.from == id) ||
            (assoc->role2.entity_type == type_name && link.to == id)) {
            ++referencing;
        }
    }
    if (referencing > 0) {
        throw Error(ErrorCode::entity_still_linked,
                    std::string(type_name) + " " + quoted(id) + " is still referenced by " +
                        std::to_string(referencing) + " link(s)");
    }
    type_it->second.erase(it);
}

void ERInstance::remove_link(std::string_view association, std::string_view from_id,
                             std::string_view to_id) {
    Link link{std::string(association), std::string(from_id), std::string(to_id)};
    if (links_.erase(link) == 0) {
        throw Error(ErrorCode::not_found, std::string(association) + " link (" +
                                              std::string(from_id) + " -> " + std::string(to_id) +
                                              ") does not exist");
    }
}

std::uint64_t ERInstance::participation_count(std::string_view type_name, std::string_view id,
                                              std::string_view association,
                                              std::string_view role_name) const {
    const AssociationDef* assoc = schema_->find_association(association);
    if (assoc == nullptr) {
        throw Error(ErrorCode::unknown_association, "unknown association " + quoted(association));
    }
    const RoleDef* role = assoc->find_role(role_name);
    if (role == nullptr) {
        throw Error(ErrorCode::unknown_role, std::string(association) + ": unknown role " +
                                                 quoted(role_name));
    }
    if (role->entity_type != type_name) {
        throw Error(ErrorCode::unknown_role, std::string(association) + " role " +
                                                 quoted(role_name) + " is played by " +
                                                 role->entity_type + ", not " +
                                                 std::string(type_name));
    }
    if (find_entity(type_name, id) == nullptr) {
        throw Error(ErrorCode::not_found,
                    std::string(type_name) + " " + quoted(id) + " does not exist");
    }
    const bool first_role = (role == &assoc->role1);
    std::uint64_t count = 0;
    for (const auto& link : links_) {
        if (link.association != association) continue;
        if (first_role ? link.from == id : link.to == id) ++count;
    }
    return count;
}

ViolationReport ERInstance::check_cardinalities() const {
    ViolationReport report;

    // attribute and identifier invariants (lenient ingestion can break them)
    for (const auto& [type_name, bucket_map] : entities_) {
        const EntityTypeDef* type = schema_->find_entity_type(type_name);
        for (const auto& [id, entity] : bucket_map) {
            if (!valid_identifier(id)) {
                report.violations.push_back(
                    {ViolationKind::bad_attribute, type_name, id, "", "", std::nullopt,
                     std::nullopt,
                     "bad-attribute: " + type_name + " " + quoted(id) +
                         " identifier does not match the identifier alphabet"});
            }
            for (const auto& [name, value] : entity.attrs) {
                const AttributeDef* attr = type->find_attribute(name);
                if (attr == nullptr || attr->kind == AttributeKind::identifier) {
                    report.violations.push_back(
                        {ViolationKind::bad_attribute, type_name, id, "", "", std::nullopt,
                         std::nullopt,
                         "bad-attribute: " + type_name + " " + quoted(id) +
                             " has unknown attribute " + quoted(name)});
                    continue;
                }
                if (attr->enumeration.has_value()) {
                    const auto& domain = *attr->enumeration;
                    if (std::find(domain.begin(), domain.end(), value) == domain.end()) {
                        report.violations.push_back(
                            {ViolationKind::bad_attribute, type_name, id, "", "", std::nullopt,
                             std::nullopt,
                             "bad-attribute: " + type_name + " " + quoted(id) + " attribute " +
                                 quoted(name) + " value " + quoted(value) +
                                 " is outside its enumeration"});
                    }
                }
            }
            for (const auto& attr : type->attributes) {
                if (attr.kind == AttributeKind::required && entity.attrs.count(attr.name) == 0) {
                    report.violations.push_back(
                        {ViolationKind::bad_attribute, type_name, id, "", "", std::nullopt,
                         std::nullopt,
                         "bad-attribute: " + type_name + " " + quoted(id) +
                             " is missing required attribute " + quoted(attr.name)});
                }
            }
        }
    }

    // referential integrity and participation counts in one pass
    std::map<std::tuple<std::string, int, std::string>, std::uint64_t> counts;
    for (const auto& link : links_) {
        const AssociationDef* assoc = schema_->find_association(link.association);
        counts[{link.association, 0, link.from}]++;
        counts[{link.association, 1, link.to}]++;
        if (find_entity(assoc->role1.entity_type, link.from) == nullptr) {
            report.violations.push_back(
                {ViolationKind::dangling_ref, assoc->role1.entity_type, link.from,
                 link.association, assoc->role1.role_name, std::nullopt, std::nullopt,
                 "dangling-ref: " + link.association + " link (" + link.from + " -> " + link.to +
                     ") references missing " + assoc->role1.entity_type + " " +
                     quoted(link.from) + " as " + assoc->role1.role_name});
        }
        if (find_entity(assoc->role2.entity_type, link.to) == nullptr) {
            report.violations.push_back(
                {ViolationKind::dangling_ref, assoc->role2.entity_type, link.to, link.association,
                 assoc->role2.role_name, std::nullopt, std::nullopt,
                 "dangling-ref: " + link.association + " link (" + link.from + " -> " + link.to +
                     ") references missing " + assoc->role2.entity_type + " " + quoted(link.to) +
                     " as " + assoc->role2.role_name});
        }
    }

    for (const auto& assoc : schema_->associations) {
        const RoleDef* roles[2] = {&assoc.role1, &assoc.role2};
        for (int role_index = 0; role_index < 2; ++role_index) {
            const RoleDef& role = *roles[role_index];
            const auto& bucket_map = entities_.at(role.entity_type);
            for (const auto& [id, entity] : bucket_map) {
                auto it = counts.find({assoc.name, role_index, id});
                const std::uint64_t count = it == counts.end() ? 0 : it->second;
                if (count < role.cardinality.min) {
                    report.violations.push_back(
                        {ViolationKind::below_min, role.entity_type, id, assoc.name,
                         role.role_name, count, role.cardinality.min,
                         "below-min: " + role.entity_type + " " + quoted(id) + " has " +
                             std::to_string(count) + " " + assoc.name + " links as " +
                             role.role_name + " (minimum " +
                             std::to_string(role.cardinality.min) + ")"});
                }
                if (role.cardinality.max.has_value() && count > *role.cardinality.max) {
                    report.violations.push_back(
                        {ViolationKind::above_max, role.entity_type, id, assoc.name,
                         role.role_name, count, *role.cardinality.max,
                         "above-max: " + role.entity_type + " " + quoted(id) + " has " +
                             std::to_string(count) + " " + assoc.name + " links as " +
                             role.role_name + " (maximum " +
                             std::to_string(*role.cardinality.max) + ")"});
                }
            }
        }
    }

    report.sort();
    return report;
}

bool ERInstance::operator==(const ERInstance& other) const {
    return schema_->name == other.schema_->name && schema_->version == other.schema_->version &&
           entities_ == other.entities_ && links_ == other.links_;
}

} // namespace termstore
