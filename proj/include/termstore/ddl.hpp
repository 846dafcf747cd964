#pragma once
// ER schema to portable relational DDL. The emitted subset is dialect
// neutral: TEXT columns, PRIMARY KEY, NOT NULL, CHECK (col IN (...)) and
// REFERENCES only.
//
// Mapping rules:
//   * entity type -> table snake_case(type); the identifier attribute is the
//     TEXT primary key, required attributes are NOT NULL, optional ones
//     nullable, enumeration attributes gain a CHECK over the sorted domain.
//   * association with exactly one max==1 role -> that role's table hosts a
//     foreign key column named snake_case(opposite role), NOT NULL iff the
//     hosting role's min == 1. Both roles max==1 -> role1's table hosts it.
//   * every other association -> junction table snake_case(assoc) with both
//     role columns, a composite primary key and two foreign keys.
//   * emitted names colliding with the reserved-word list get a trailing
//     underscore; a foreign-key column colliding with an existing column is
//     prefixed with the association name.
//   * table order: entity tables alphabetical, then junction tables
//     alphabetical. Column order: primary key first, then attributes
//     alphabetical, then foreign keys alphabetical.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "termstore/er.hpp"

namespace termstore {

struct ColumnDef {
    std::string name;
    bool primary_key = false;
    bool not_null = false;
    std::optional<std::vector<std::string>> check_enum;            // sorted values
    std::optional<std::pair<std::string, std::string>> references; // (table, column)

    friend bool operator==(const ColumnDef&, const ColumnDef&) = default;
};

struct TableDef {
    std::string name;
    std::vector<ColumnDef> columns;
    std::vector<std::string> primary_key;

    friend bool operator==(const TableDef&, const TableDef&) = default;
};

struct RelationalMapping {
    std::vector<TableDef> tables;

    friend bool operator==(const RelationalMapping&, const RelationalMapping&) = default;
};

// ASCII camel case / hyphens / dots to snake_case.
std::string snake_case(std::string_view name);

// Total and deterministic on well-formed ASCII-named schemas.
RelationalMapping map_schema(const ERSchema& schema);

// One CREATE TABLE per table in mapping order, two-space indentation, one
// column per line, each statement closed by ";\n". Byte-deterministic.
std::string emit_ddl(const RelationalMapping& mapping);

} // namespace termstore
