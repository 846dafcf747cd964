#pragma once
// Shared hand-built instances for tests.

#include <termstore/terminology.hpp>

namespace termstore::testing {

// Two concepts sharing the designation "bank": c1 (financial institution,
// terms t1 "bank" / t2 "riverbank") and c2 (river side, term t3 "bank").
inline ERInstance bank_fixture() {
    ERInstance tb = new_termbase();
    add_concept(tb, "c1");
    add_concept(tb, "c2");
    add_term(tb, "t1", "bank", "en");
    add_term(tb, "t2", "riverbank", "en");
    add_term(tb, "t3", "bank", "en");
    denote(tb, "c1", "t1");
    denote(tb, "c1", "t2");
    denote(tb, "c2", "t3");
    return tb;
}

// bank_fixture plus every other entity type and association once.
inline ERInstance full_fixture() {
    ERInstance tb = bank_fixture();
    add_characteristic(tb, "liquidity", "essential");
    add_characteristic(tb, "adjacency", "delimiting");
    add_characteristic(tb, "shape", "non-essential");
    add_characteristic(tb, "institution-kind", "type");
    add_characteristic_to_concept(tb, "c1", "liquidity");
    add_characteristic_to_concept(tb, "c2", "adjacency");
    add_characteristic_to_concept(tb, "c2", "shape");
    group_characteristic(tb, "institution-kind", "liquidity");
    add_concept(tb, "c3");
    add_term(tb, "t4", "central bank", "en");
    denote(tb, "c3", "t4");
    set_superordinate(tb, "c3", "c1");
    add_generic(tb, "c2", "c1");
    add_text_source(tb, "x1", "riparian survey");
    add_collection(tb, "k1", "field notes");
    assign_to_collection(tb, "x1", "k1");
    record_occurrence(tb, "t3", "x1");
    relate_concepts(tb, ConceptRelation::connected_to, "c1", "c2");
    relate_concepts(tb, ConceptRelation::consists_of, "c1", "c3");
    relate_concepts(tb, ConceptRelation::is_a, "c3", "c1");
    add_frame(tb, "f1", "Financial_transaction");
    add_frame_element(tb, "fe1", "Lender");
    add_element_to_frame(tb, "f1", "fe1");
    evoke(tb, "t1", "f1");
    fill_slot(tb, "fe1", "t1");
    return tb;
}

} // namespace termstore::testing
