#pragma once
// Extensional populations of an ER schema: entity instances keyed by
// (type, id), typed links, and deferred cardinality validation.
//
// An ERInstance is a value. Mutators validate eagerly and throw Error;
// participation minima/maxima are checked by check_cardinalities() only,
// so partially built instances are representable.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "termstore/er.hpp"
#include "termstore/errors.hpp"

namespace termstore {

using AttributeValues = std::map<std::string, std::string>;

// The identifier attribute's value lives in `id`, never in `attrs`.
struct EntityInstance {
    std::string id;
    AttributeValues attrs;

    friend bool operator==(const EntityInstance&, const EntityInstance&) = default;
};

struct Link {
    std::string association;
    std::string from; // id bound to role1
    std::string to;   // id bound to role2

    friend auto operator<=>(const Link&, const Link&) = default;
};

enum class ViolationKind {
    below_min,
    above_max,
    dangling_ref,
    duplicate_id,
    bad_attribute,
    conditional,
};

const char* violation_kind_name(ViolationKind kind);

struct Violation {
    ViolationKind kind = ViolationKind::below_min;
    std::string entity_type;
    std::string entity_id;
    std::string association; // empty when not applicable
    std::string role;        // empty when not applicable
    std::optional<std::uint64_t> observed;
    std::optional<std::uint64_t> bound;
    std::string message;

    friend bool operator==(const Violation&, const Violation&) = default;
};

// Deterministically ordered by (type, id, association, role, kind, message).
struct ViolationReport {
    std::vector<Violation> violations;

    bool empty() const { return violations.empty(); }
    std::size_t size() const { return violations.size(); }
    // Violations other than kind==conditional make an instance structurally
    // unfit for export.
    bool any_hard() const;
    bool any_conditional() const;

    void sort();

    friend bool operator==(const ViolationReport&, const ViolationReport&) = default;
};

class ERInstance {
public:
    using EntityMap = std::map<std::string, std::map<std::string, EntityInstance>>;
    using LinkSet = std::set<Link>;

    // Rejects ill-formed schemas (Error schema_error).
    explicit ERInstance(std::shared_ptr<const ERSchema> schema);

    // Assembles an instance without attribute or referential checks. Entity
    // types must exist in the schema and ids/links must not repeat; content
    // problems are left for check_cardinalities to report. This is the
    // ingestion path for hand-edited store files and for projections.
    static ERInstance from_parts(std::shared_ptr<const ERSchema> schema,
                                 EntityMap entities, LinkSet links);

    const ERSchema& schema() const { return *schema_; }
    const std::shared_ptr<const ERSchema>& schema_ptr() const { return schema_; }

    void add_entity(std::string_view type_name, std::string_view id,
                    const AttributeValues& attrs = {});
    void add_link(std::string_view association, std::string_view from_id,
                  std::string_view to_id);
    // Refuses to remove an entity that any link still references.
    void remove_entity(std::string_view type_name, std::string_view id);
    void remove_link(std::string_view association, std::string_view from_id,
                     std::string_view to_id);

    // Exact number of links of `association` in which (type_name, id)
    // occupies the role named `role_name`. Throws on unresolved names.
    std::uint64_t participation_count(std::string_view type_name, std::string_view id,
                                      std::string_view association,
                                      std::string_view role_name) const;

    // Participation bounds for every entity and role, plus referential
    // integrity and attribute invariants. Pure function of the content.
    ViolationReport check_cardinalities() const;

    const EntityInstance* find_entity(std::string_view type_name, std::string_view id) const;
    const EntityMap& entities() const { return entities_; }
    const LinkSet& links() const { return links_; }
    std::uint64_t entity_count() const;

    bool operator==(const ERInstance& other) const;

private:
    std::shared_ptr<const ERSchema> schema_;
    EntityMap entities_; // seeded with every schema type, possibly empty maps
    LinkSet links_;

    const std::map<std::string, EntityInstance>& bucket(std::string_view type_name) const;
};

} // namespace termstore
