#pragma once
// In-memory SQLite harness. The INSERT generator spells out the expected
// relational shape of the terminology schema by hand, so loading data into
// tables created from emitted DDL cross-checks the mapping for real.

#include <sqlite3.h>

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <termstore/instance.hpp>

namespace termstore::testing {

class Sqlite {
public:
    Sqlite() {
        if (sqlite3_open(":memory:", &db_) != SQLITE_OK) {
            throw std::runtime_error("cannot open in-memory database");
        }
        exec("PRAGMA foreign_keys = ON;");
    }
    ~Sqlite() { sqlite3_close(db_); }
    Sqlite(const Sqlite&) = delete;
    Sqlite& operator=(const Sqlite&) = delete;

    void exec(const std::string& sql) {
        char* message = nullptr;
        if (sqlite3_exec(db_, sql.c_str(), nullptr, nullptr, &message) != SQLITE_OK) {
            std::string what = message == nullptr ? "unknown sqlite error" : message;
            sqlite3_free(message);
            throw std::runtime_error(what);
        }
    }

    bool fails(const std::string& sql) {
        try {
            exec(sql);
            return false;
        } catch (const std::runtime_error&) {
            return true;
        }
    }

private:
    sqlite3* db_ = nullptr;
};

inline std::string sql_value(const std::optional<std::string>& value) {
    if (!value.has_value()) return "NULL";
    std::string out = "'";
    for (char c : *value) {
        out += c;
        if (c == '\'') out += '\'';
    }
    return out + "'";
}

// entity rows in FK-safe order (parents before children), then junctions
inline std::vector<std::string> insert_statements(const ERInstance& tb) {
    std::vector<std::string> stmts;
    auto attr = [](const EntityInstance& e, const char* name) -> std::optional<std::string> {
        auto it = e.attrs.find(name);
        if (it == e.attrs.end()) return std::nullopt;
        return it->second;
    };
    auto fk = [&tb](const char* assoc, const std::string& id,
                    bool id_is_from) -> std::optional<std::string> {
        for (const Link& link : tb.links()) {
            if (link.association != assoc) continue;
            if (id_is_from && link.from == id) return link.to;
            if (!id_is_from && link.to == id) return link.from;
        }
        return std::nullopt;
    };

    for (const auto& [id, e] : tb.entities().at("Collection")) {
        stmts.push_back("INSERT INTO collection (id, name) VALUES (" + sql_value(id) + ", " +
                        sql_value(attr(e, "name")) + ");");
    }
    for (const auto& [id, e] : tb.entities().at("Characteristic")) {
        stmts.push_back("INSERT INTO characteristic (name, variety) VALUES (" + sql_value(id) +
                        ", " + sql_value(attr(e, "variety")) + ");");
    }
    for (const auto& [id, e] : tb.entities().at("Frame")) {
        stmts.push_back("INSERT INTO frame (id, name) VALUES (" + sql_value(id) + ", " +
                        sql_value(attr(e, "name")) + ");");
    }

    // concepts sorted parents-first so the self-referencing FK resolves
    std::map<std::string, std::string> parent;
    for (const Link& link : tb.links()) {
        if (link.association == "Hierarchical") parent[link.to] = link.from;
    }
    std::vector<std::pair<std::size_t, std::string>> concepts;
    for (const auto& [id, unused] : tb.entities().at("Concept")) {
        std::size_t depth = 0;
        for (std::string c = id; parent.count(c) != 0; c = parent.at(c)) ++depth;
        concepts.emplace_back(depth, id);
    }
    std::sort(concepts.begin(), concepts.end());
    for (const auto& [unused, id] : concepts) {
        std::optional<std::string> sup;
        if (parent.count(id) != 0) sup = parent.at(id);
        stmts.push_back("INSERT INTO concept (id, superordinate) VALUES (" + sql_value(id) + ", " +
                        sql_value(sup) + ");");
    }

    for (const auto& [id, e] : tb.entities().at("FrameElement")) {
        stmts.push_back("INSERT INTO frame_element (id, name, owning_frame) VALUES (" +
                        sql_value(id) + ", " + sql_value(attr(e, "name")) + ", " +
                        sql_value(fk("HasElement", id, false)) + ");");
    }
    for (const auto& [id, e] : tb.entities().at("Term")) {
        stmts.push_back("INSERT INTO term (id, definition, designation, language, "
                        "denoting_concept) VALUES (" +
                        sql_value(id) + ", " + sql_value(attr(e, "definition")) + ", " +
                        sql_value(attr(e, "designation")) + ", " + sql_value(attr(e, "language")) +
                        ", " + sql_value(fk("Denoted", id, false)) + ");");
    }
    for (const auto& [id, e] : tb.entities().at("TextSource")) {
        stmts.push_back("INSERT INTO text_source (id, title, holding_collection) VALUES (" +
                        sql_value(id) + ", " + sql_value(attr(e, "title")) + ", " +
                        sql_value(fk("PartOfCollection", id, true)) + ");");
    }

    static const std::map<std::string, std::pair<std::string, std::pair<std::string, std::string>>>
        junctions{
            {"ConnectedTo", {"connected_to", {"relation_source", "relation_target"}}},
            {"ConsistsOf", {"consists_of", {"relation_source", "relation_target"}}},
            {"Delineated", {"delineated", {"delineated_concept", "delineating_characteristic"}}},
            {"Evokes", {"evokes", {"evoking_term", "evoked_frame"}}},
            {"FilledBy", {"filled_by", {"slot", "filler_term"}}},
            {"Generic", {"generic", {"generic_source", "generic_target"}}},
            {"Group", {"group_", {"grouping_type", "grouped_member"}}},
            {"IsA", {"is_a", {"relation_source", "relation_target"}}},
            {"OccursIn", {"occurs_in", {"occurring_term", "source_text"}}},
        };
    for (const Link& link : tb.links()) {
        auto it = junctions.find(link.association);
        if (it == junctions.end()) continue;
        const auto& [table, columns] = it->second;
        stmts.push_back("INSERT INTO " + table + " (" + columns.first + ", " + columns.second +
                        ") VALUES (" + sql_value(link.from) + ", " + sql_value(link.to) + ");");
    }
    return stmts;
}

} // namespace termstore::testing
