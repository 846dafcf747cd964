#include "termstore/er.hpp"

#include <set>
#include <string>

namespace termstore {

const AttributeDef* EntityTypeDef::find_attribute(std::string_view attr_name) const {
    for (const auto& attr : attributes) {
        if (attr.name == attr_name) return &attr;
    }
    return nullptr;
}

const AttributeDef* EntityTypeDef::identifier() const {
    const AttributeDef* found = nullptr;
    for (const auto& attr : attributes) {
        if (attr.kind == AttributeKind::identifier) {
            if (found != nullptr) return nullptr;
            found = &attr;
        }
    }
    return found;
}

const RoleDef* AssociationDef::find_role(std::string_view role_name) const {
    if (role1.role_name == role_name) return &role1;
    if (role2.role_name == role_name) return &role2;
    return nullptr;
}

const EntityTypeDef* ERSchema::find_entity_type(std::string_view type_name) const {
    for (const auto& type : entity_types) {
        if (type.name == type_name) return &type;
    }
    return nullptr;
}

const AssociationDef* ERSchema::find_association(std::string_view assoc_name) const {
    for (const auto& assoc : associations) {
        if (assoc.name == assoc_name) return &assoc;
    }
    return nullptr;
}

namespace {

void validate_cardinality(const AssociationDef& assoc, const RoleDef& role,
                          std::vector<std::string>& errors) {
    if (role.cardinality.max.has_value()) {
        if (*role.cardinality.max < 1) {
            errors.push_back("association '" + assoc.name + "' role '" + role.role_name +
                             "': max cardinality must be at least 1");
        } else if (role.cardinality.min > *role.cardinality.max) {
            errors.push_back("association '" + assoc.name + "' role '" + role.role_name +
                             "': min cardinality " + std::to_string(role.cardinality.min) +
                             " exceeds max " + std::to_string(*role.cardinality.max));
        }
    }
}

void validate_role(const AssociationDef& assoc, const RoleDef& role,
                   const std::set<std::string>& type_names, std::vector<std::string>& errors) {
    if (role.role_name.empty()) {
        errors.push_back("association '" + assoc.name + "': role name must be non-empty");
    }
    if (type_names.count(role.entity_type) == 0) {
        errors.push_back("association '" + assoc.name + "' role '" + role.role_name +
                         "': unknown entity type '" + role.entity_type + "'");
    }
    validate_cardinality(assoc, role, errors);
}

} // namespace

std::vector<std::string> validate_schema(const ERSchema& schema) {
    std::vector<std::string> errors;

    std::set<std::string> type_names;
    for (const auto& type : schema.entity_types) {
        if (type.name.empty()) {
            errors.push_back("entity type with empty name");
        }
        if (!type_names.insert(type.name).second) {
            errors.push_back("duplicate entity type name '" + type.name + "'");
        }

        std::set<std::string> attr_names;
        int identifier_count = 0;
        for (const auto& attr : type.attributes) {
            if (attr.name.empty()) {
                errors.push_back("entity type '" + type.name + "': attribute with empty name");
            }
            if (!attr_names.insert(attr.name).second) {
                errors.push_back("entity type '" + type.name + "': duplicate attribute name '" +
                                 attr.name + "'");
            }
            if (attr.kind == AttributeKind::identifier) ++identifier_count;
            if (attr.enumeration.has_value()) {
                if (attr.enumeration->empty()) {
                    errors.push_back("entity type '" + type.name + "' attribute '" + attr.name +
                                     "': enumeration domain is empty");
                }
                std::set<std::string> values;
                for (const auto& value : *attr.enumeration) {
                    if (!values.insert(value).second) {
                        errors.push_back("entity type '" + type.name + "' attribute '" + attr.name +
                                         "': duplicate enumeration value '" + value + "'");
                    }
                }
            }
        }
        if (identifier_count != 1) {
            errors.push_back("entity type '" + type.name + "': has " +
                             std::to_string(identifier_count) +
                             " identifier attributes, expected exactly 1");
        }
    }

    std::set<std::string> assoc_names;
    for (const auto& assoc : schema.associations) {
        if (assoc.name.empty()) {
            errors.push_back("association with empty name");
        }
        if (!assoc_names.insert(assoc.name).second) {
            errors.push_back("duplicate association name '" + assoc.name + "'");
        }
        if (type_names.count(assoc.name) != 0) {
            errors.push_back("association '" + assoc.name + "' collides with an entity type name");
        }
        if (assoc.role1.role_name == assoc.role2.role_name) {
            errors.push_back("association '" + assoc.name + "': role names must be distinct");
        }
        validate_role(assoc, assoc.role1, type_names, errors);
        validate_role(assoc, assoc.role2, type_names, errors);
    }

    return errors;
}

} // namespace termstore
