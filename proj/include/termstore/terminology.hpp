#pragma once
// The unified terminology schema and its typed surface: builders that keep
// the hard rules unbreakable during construction, terminology-specific
// validation beyond plain cardinalities, and the four approach views over
// one shared store.

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "termstore/instance.hpp"

namespace termstore {

inline constexpr std::string_view kTerminologySchemaName = "unified-terminology";
inline constexpr std::string_view kTerminologySchemaVersion = "1";

// Entity types: Concept, Term, Characteristic, TextSource, Collection,
// Frame, FrameElement. Associations: Denoted (1,n)/(1,1), Hierarchical
// (0,n)/(0,1), Generic, Delineated, Group, OccursIn, PartOfCollection
// (1,1)/(0,n), ConnectedTo, ConsistsOf, IsA, Evokes, HasElement (0,n)/(1,1),
// FilledBy. The shared singleton is immutable.
const std::shared_ptr<const ERSchema>& terminology_schema();

ERInstance new_termbase();

// ---- typed entity builders ------------------------------------------------

void add_concept(ERInstance& termbase, std::string_view concept_id);
void add_term(ERInstance& termbase, std::string_view term_id, std::string_view designation,
              std::string_view language,
              const std::optional<std::string>& definition = std::nullopt);
void add_characteristic(ERInstance& termbase, std::string_view name, std::string_view variety);
void add_text_source(ERInstance& termbase, std::string_view text_id,
                     const std::optional<std::string>& title = std::nullopt);
void add_collection(ERInstance& termbase, std::string_view collection_id,
                    const std::optional<std::string>& name = std::nullopt);
void add_frame(ERInstance& termbase, std::string_view frame_id, std::string_view name);
void add_frame_element(ERInstance& termbase, std::string_view element_id, std::string_view name);

// ---- typed link builders ----------------------------------------------------

// Adds a Denoted link. A term denotes exactly one concept, so a second
// denotation for the same term is rejected here, at mutation time; the
// error names the concept the term is already assigned to.
void denote(ERInstance& termbase, std::string_view concept_id, std::string_view term_id);

// Adds a Hierarchical link parent -> child. Rejects self-links, a second
// superordinate for the same child, and anything that would close a cycle.
void set_superordinate(ERInstance& termbase, std::string_view child_concept_id,
                       std::string_view parent_concept_id);

void add_generic(ERInstance& termbase, std::string_view source_concept_id,
                 std::string_view target_concept_id);

void add_characteristic_to_concept(ERInstance& termbase, std::string_view concept_id,
                                   std::string_view characteristic_name);

// Groups `member` under `type_characteristic`, which must have variety=type
// and must differ from the member.
void group_characteristic(ERInstance& termbase, std::string_view type_characteristic,
                          std::string_view member);

void record_occurrence(ERInstance& termbase, std::string_view term_id,
                       std::string_view text_id);
void assign_to_collection(ERInstance& termbase, std::string_view text_id,
                          std::string_view collection_id);

enum class ConceptRelation { connected_to, consists_of, is_a };

void relate_concepts(ERInstance& termbase, ConceptRelation relation,
                     std::string_view source_concept_id, std::string_view target_concept_id);

void evoke(ERInstance& termbase, std::string_view term_id, std::string_view frame_id);
void add_element_to_frame(ERInstance& termbase, std::string_view frame_id,
                          std::string_view element_id);
void fill_slot(ERInstance& termbase, std::string_view element_id, std::string_view term_id);

// ---- validation and queries -------------------------------------------------

// check_cardinalities plus the conditional terminology rules: grouping-type
// roles are reserved for variety=type characteristics, every variety=type
// characteristic groups at least one member, Hierarchical links form a
// forest, and no characteristic groups itself.
ViolationReport validate_termbase(const ERInstance& termbase);

// All term ids whose NFC-normalized designation equals the NFC-normalized
// query, filtered by language unless `language` is empty. Sorted by id.
std::vector<std::string> homographs(const ERInstance& termbase, std::string_view designation,
                                    const std::optional<std::string>& language = std::nullopt);

// Canonical characteristic-based rendering:
//   Concept <id> := delimiting{...} essential{...} non-essential{...}
// Names sorted and comma-joined inside each group; variety=type
// characteristics classify other characteristics and are omitted.
std::string formal_definition(const ERInstance& termbase, std::string_view concept_id);

enum class Approach { onomasiological, semasiological, ontoterminological, frame_based };

const char* approach_name(Approach approach);
std::optional<Approach> approach_from_name(std::string_view name);

struct Projection {
    Approach approach = Approach::onomasiological;
    std::set<std::string> entity_types;
    std::set<std::string> associations;
    ERInstance instance;
};

// Restricts the instance to the approach's entity types and associations.
// Links whose endpoints fall outside the kept entities are dropped;
// entities are never synthesized.
Projection view(const ERInstance& termbase, Approach approach);

} // namespace termstore
