#pragma once
// TBX subset dialect: a fixed element inventory under the ISO 30042 ed-2
// namespace, serialized byte-deterministically and parsed back without loss
// for onomasiological content. Everything the dialect cannot carry is
// accounted for in a LossReport, never dropped silently.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "termstore/instance.hpp"

namespace termstore {

struct TermSection {
    std::string term_id;
    std::string designation;
    std::optional<std::string> definition;
};

struct LangSection {
    std::string language;
    std::vector<TermSection> terms; // sorted by term id
};

struct ConceptEntry {
    std::string concept_id;
    std::optional<std::string> superordinate_id;
    std::vector<std::string> generic_targets;                         // sorted
    std::vector<std::pair<std::string, std::string>> characteristics; // (variety, name), sorted
    std::vector<LangSection> lang_sections;                           // sorted by language
};

struct TbxDocument {
    std::string title;
    std::vector<ConceptEntry> entries; // sorted by concept id
};

struct LossEntry {
    std::string kind; // entity type or association name
    std::uint64_t count = 0;
    std::string reason;

    friend bool operator==(const LossEntry&, const LossEntry&) = default;
};

struct LossReport {
    std::vector<LossEntry> entries; // sorted by kind, counts > 0

    bool empty() const { return entries.empty(); }

    friend bool operator==(const LossReport&, const LossReport&) = default;
};

struct TbxExport {
    std::string xml;
    LossReport loss;
};

// Serializes a valid termbase. Instances with hard violations are rejected;
// conditional violations are rejected too unless `force` is set. The loss
// report lists every Frame, FrameElement, TextSource and Collection, every
// link of an out-of-dialect association, and every characteristic that
// delineates no concept.
TbxExport export_tbx(const ERInstance& termbase, std::string_view title, bool force = false);

// Parses a dialect document back into a termbase. Characteristics are
// deduplicated by name across entries; the same name with two different
// varieties is a conflict error naming both entries.
ERInstance import_tbx(std::string_view xml_text);

} // namespace termstore
