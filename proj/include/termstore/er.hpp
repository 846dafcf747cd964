#pragma once
// Entity-Relationship meta-model: schemas made of entity types, attributes
// and binary associations with (min,max) role cardinalities.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace termstore {

// Participation bounds for one role. max == nullopt means unbounded ("n").
struct Cardinality {
    std::uint32_t min = 0;
    std::optional<std::uint32_t> max;

    friend bool operator==(const Cardinality&, const Cardinality&) = default;
};

inline constexpr std::optional<std::uint32_t> kUnbounded = std::nullopt;

enum class AttributeKind { identifier, required, optional };

struct AttributeDef {
    std::string name;
    AttributeKind kind = AttributeKind::optional;
    // nullopt: free text; otherwise the closed set of allowed values.
    std::optional<std::vector<std::string>> enumeration;

    friend bool operator==(const AttributeDef&, const AttributeDef&) = default;
};

struct EntityTypeDef {
    std::string name;
    std::vector<AttributeDef> attributes;

    const AttributeDef* find_attribute(std::string_view attr_name) const;
    // The unique kind==identifier attribute; nullptr on ill-formed types.
    const AttributeDef* identifier() const;

    friend bool operator==(const EntityTypeDef&, const EntityTypeDef&) = default;
};

struct RoleDef {
    std::string role_name;
    std::string entity_type;
    Cardinality cardinality;

    friend bool operator==(const RoleDef&, const RoleDef&) = default;
};

struct AssociationDef {
    std::string name;
    RoleDef role1;
    RoleDef role2;

    const RoleDef* find_role(std::string_view role_name) const;

    friend bool operator==(const AssociationDef&, const AssociationDef&) = default;
};

struct ERSchema {
    std::string name;
    std::string version;
    std::vector<EntityTypeDef> entity_types;
    std::vector<AssociationDef> associations;

    const EntityTypeDef* find_entity_type(std::string_view type_name) const;
    const AssociationDef* find_association(std::string_view assoc_name) const;

    friend bool operator==(const ERSchema&, const ERSchema&) = default;
};

// Returns one stable message per violated schema invariant; empty means
// well-formed. Checks name uniqueness, identifier arity, enumeration domains,
// role targets and cardinality bounds.
std::vector<std::string> validate_schema(const ERSchema& schema);

} // namespace termstore
