#include "termstore/ddl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "termstore/errors.hpp"

namespace termstore {

namespace {

// Keywords common to the major engines; emitted identifiers that collide
// get a trailing underscore.
const std::set<std::string>& reserved_words() {
    static const std::set<std::string> words{
        "all",    "alter",      "and",    "any",     "as",     "asc",       "between",
        "by",     "case",       "cast",   "check",   "collate", "column",   "constraint",
        "create", "cross",      "current", "default", "delete", "desc",     "distinct",
        "drop",   "else",       "end",    "escape",  "except", "exists",    "foreign",
        "from",   "full",       "group",  "having",  "in",     "index",     "inner",
        "insert", "intersect",  "into",   "is",      "join",   "key",       "left",
        "like",   "limit",      "natural", "not",    "null",   "offset",    "on",
        "or",     "order",      "outer",  "primary", "references", "right", "select",
        "set",    "table",      "then",   "to",      "union",  "unique",    "update",
        "using",  "values",     "when",   "where",
    };
    return words;
}

std::string identifier(std::string_view name) {
    std::string snake = snake_case(name);
    if (reserved_words().count(snake) != 0) snake += '_';
    return snake;
}

std::string sql_quote(const std::string& value) {
    std::string out = "'";
    for (char c : value) {
        out += c;
        if (c == '\'') out += '\'';
    }
    return out + "'";
}

struct HostedForeignKey {
    std::string association;
    const RoleDef* hosting;  // the max==1 role whose table gains the column
    const RoleDef* opposite; // referenced side, supplies the column name
};

} // namespace

std::string snake_case(std::string_view name) {
    std::string out;
    out.reserve(name.size() + 4);
    for (std::size_t i = 0; i < name.size(); ++i) {
        char c = name[i];
        if (c == '-' || c == '.') {
            out += '_';
            continue;
        }
        if (std::isupper(static_cast<unsigned char>(c))) {
            bool prev_lower =
                i > 0 && (std::islower(static_cast<unsigned char>(name[i - 1])) ||
                          std::isdigit(static_cast<unsigned char>(name[i - 1])));
            bool next_lower =
                i > 0 && i + 1 < name.size() && std::islower(static_cast<unsigned char>(name[i + 1]));
            if (prev_lower || (next_lower && std::isupper(static_cast<unsigned char>(name[i - 1])))) {
                out += '_';
            }
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else {
            out += c;
        }
    }
    return out;
}

RelationalMapping map_schema(const ERSchema& schema) {
    std::vector<std::string> problems = validate_schema(schema);
    if (!problems.empty()) {
        throw Error(ErrorCode::schema_error, "ill-formed schema: " + problems.front());
    }

    // associations with exactly one max==1 role add a column to that role's
    // entity table; role1 wins a tie
    std::map<std::string, std::vector<HostedForeignKey>> hosted; // entity type -> FKs
    std::vector<const AssociationDef*> junctions;
    for (const AssociationDef& assoc : schema.associations) {
        bool one1 = assoc.role1.cardinality.max == 1;
        bool one2 = assoc.role2.cardinality.max == 1;
        if (one1) {
            hosted[assoc.role1.entity_type].push_back({assoc.name, &assoc.role1, &assoc.role2});
        } else if (one2) {
            hosted[assoc.role2.entity_type].push_back({assoc.name, &assoc.role2, &assoc.role1});
        } else {
            junctions.push_back(&assoc);
        }
    }

    auto table_name = [](std::string_view type_name) { return identifier(type_name); };
    auto pk_column = [&schema](std::string_view type_name) {
        return identifier(schema.find_entity_type(type_name)->identifier()->name);
    };

    RelationalMapping mapping;

    std::vector<const EntityTypeDef*> entity_types;
    for (const EntityTypeDef& type : schema.entity_types) entity_types.push_back(&type);
    std::sort(entity_types.begin(), entity_types.end(),
              [&](const EntityTypeDef* a, const EntityTypeDef* b) {
                  return table_name(a->name) < table_name(b->name);
              });

    for (const EntityTypeDef* type : entity_types) {
        TableDef table;
        table.name = table_name(type->name);

        ColumnDef pk;
        pk.name = identifier(type->identifier()->name);
        pk.primary_key = true;
        pk.not_null = false; // implied by the primary key
        table.primary_key = {pk.name};
        table.columns.push_back(std::move(pk));

        std::vector<ColumnDef> attr_columns;
        for (const AttributeDef& attr : type->attributes) {
            if (attr.kind == AttributeKind::identifier) continue;
            ColumnDef column;
            column.name = identifier(attr.name);
            column.not_null = attr.kind == AttributeKind::required;
            if (attr.enumeration.has_value()) {
                std::vector<std::string> domain = *attr.enumeration;
                std::sort(domain.begin(), domain.end());
                column.check_enum = std::move(domain);
            }
            attr_columns.push_back(std::move(column));
        }
        std::sort(attr_columns.begin(), attr_columns.end(),
                  [](const ColumnDef& a, const ColumnDef& b) { return a.name < b.name; });

        std::vector<ColumnDef> fk_columns;
        std::set<std::string> taken;
        taken.insert(table.columns.front().name);
        for (const ColumnDef& column : attr_columns) taken.insert(column.name);
        auto fks = hosted.find(type->name);
        if (fks != hosted.end()) {
            for (const HostedForeignKey& fk : fks->second) {
                std::string name = identifier(fk.opposite->role_name);
                if (taken.count(name) != 0) {
                    name = identifier(fk.association) + "_" + name;
                }
                if (!taken.insert(name).second) {
                    throw Error(ErrorCode::schema_error,
                                "cannot name foreign key column for association '" +
                                    fk.association + "' in table '" + table.name + "'");
                }
                ColumnDef column;
                column.name = std::move(name);
                column.not_null = fk.hosting->cardinality.min >= 1;
                column.references = std::make_pair(table_name(fk.opposite->entity_type),
                                                   pk_column(fk.opposite->entity_type));
                fk_columns.push_back(std::move(column));
            }
        }
        std::sort(fk_columns.begin(), fk_columns.end(),
                  [](const ColumnDef& a, const ColumnDef& b) { return a.name < b.name; });

        for (auto& column : attr_columns) table.columns.push_back(std::move(column));
        for (auto& column : fk_columns) table.columns.push_back(std::move(column));
        mapping.tables.push_back(std::move(table));
    }

    std::sort(junctions.begin(), junctions.end(),
              [&](const AssociationDef* a, const AssociationDef* b) {
                  return identifier(a->name) < identifier(b->name);
              });
    for (const AssociationDef* assoc : junctions) {
        TableDef table;
        table.name = identifier(assoc->name);
        for (const RoleDef* role : {&assoc->role1, &assoc->role2}) {
            ColumnDef column;
            column.name = identifier(role->role_name);
            column.not_null = true;
            column.references =
                std::make_pair(table_name(role->entity_type), pk_column(role->entity_type));
            table.primary_key.push_back(column.name);
            table.columns.push_back(std::move(column));
        }
        mapping.tables.push_back(std::move(table));
    }

    return mapping;
}

std::string emit_ddl(const RelationalMapping& mapping) {
    std::string out;
    for (const TableDef& table : mapping.tables) {
        out += "CREATE TABLE " + table.name + " (\n";
        std::vector<std::string> lines;
        for (const ColumnDef& column : table.columns) {
            std::string line = column.name + " TEXT";
            if (column.primary_key && table.primary_key.size() == 1) line += " PRIMARY KEY";
            if (column.not_null) line += " NOT NULL";
            if (column.check_enum.has_value()) {
                line += " CHECK (" + column.name + " IN (";
                for (std::size_t i = 0; i < column.check_enum->size(); ++i) {
                    if (i > 0) line += ", ";
                    line += sql_quote((*column.check_enum)[i]);
                }
                line += "))";
            }
            if (column.references.has_value()) {
                line += " REFERENCES " + column.references->first + "(" +
                        column.references->second + ")";
            }
            lines.push_back(std::move(line));
        }
        if (table.primary_key.size() > 1) {
            std::string line = "PRIMARY KEY (";
            for (std::size_t i = 0; i < table.primary_key.size(); ++i) {
                if (i > 0) line += ", ";
                line += table.primary_key[i];
            }
            lines.push_back(line + ")");
        }
        for (std::size_t i = 0; i < lines.size(); ++i) {
            out += "  " + lines[i] + (i + 1 < lines.size() ? ",\n" : "\n");
        }
        out += ");\n";
    }
    return out;
}

} // namespace termstore
