#include <doctest.h>

#include <random>
#include <termstore/instance.hpp>
#include <termstore/terminology.hpp>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random_termbase.hpp"

using namespace termstore;
using namespace termstore::testing;

TEST_CASE("extensional fixture validates cleanly") {
    ERInstance tb = bank_fixture();
    CHECK(tb.check_cardinalities().empty());
    CHECK(tb.entity_count() == 5);
    CHECK(tb.links().size() == 3);
}

TEST_CASE("participation counts on the fixture") {
    ERInstance tb = bank_fixture();
    CHECK(tb.participation_count("Concept", "c1", "Denoted", "denoting-concept") == 2);
    CHECK(tb.participation_count("Concept", "c2", "Denoted", "denoting-concept") == 1);
    CHECK(tb.participation_count("Term", "t1", "Denoted", "denoted-term") == 1);
    add_concept(tb, "fresh");
    CHECK(tb.participation_count("Concept", "fresh", "Denoted", "denoting-concept") == 0);

    CHECK_THROWS_WITH_AS(tb.participation_count("Concept", "c1", "Nope", "denoting-concept"),
                         "unknown association 'Nope'", Error);
    CHECK_THROWS_AS(tb.participation_count("Concept", "c1", "Denoted", "nope"), Error);
    // role exists but is played by the other type
    CHECK_THROWS_AS(tb.participation_count("Concept", "c1", "Denoted", "denoted-term"), Error);
    CHECK_THROWS_AS(tb.participation_count("Concept", "c9", "Denoted", "denoting-concept"), Error);
}

TEST_CASE("removing one denotation breaks both minima") {
    ERInstance tb = bank_fixture();
    tb.remove_link("Denoted", "c2", "t3");
    ViolationReport report = tb.check_cardinalities();
    REQUIRE(report.size() == 2);
    CHECK(report.violations[0].kind == ViolationKind::below_min);
    CHECK(report.violations[0].entity_type == "Concept");
    CHECK(report.violations[0].entity_id == "c2");
    CHECK(report.violations[0].observed == 0);
    CHECK(report.violations[0].bound == 1);
    CHECK(report.violations[0].message ==
          "below-min: Concept 'c2' has 0 Denoted links as denoting-concept (minimum 1)");
    CHECK(report.violations[1].kind == ViolationKind::below_min);
    CHECK(report.violations[1].entity_type == "Term");
    CHECK(report.violations[1].entity_id == "t3");
    CHECK(report.violations[1].message ==
          "below-min: Term 't3' has 0 Denoted links as denoted-term (minimum 1)");
}

TEST_CASE("a second denotation for one term breaks the maximum") {
    ERInstance tb = bank_fixture();
    tb.add_link("Denoted", "c2", "t1");
    ViolationReport report = tb.check_cardinalities();
    REQUIRE(report.size() == 1);
    const Violation& v = report.violations[0];
    CHECK(v.kind == ViolationKind::above_max);
    CHECK(v.entity_type == "Term");
    CHECK(v.entity_id == "t1");
    CHECK(v.association == "Denoted");
    CHECK(v.role == "denoted-term");
    CHECK(v.observed == 2);
    CHECK(v.bound == 1);
    CHECK(v.message == "above-max: Term 't1' has 2 Denoted links as denoted-term (maximum 1)");
}

TEST_CASE("entity mutation rules") {
    ERInstance tb = new_termbase();

    SUBCASE("homographs are distinct entities, not duplicates") {
        tb.add_entity("Term", "t1", {{"designation", "bank"}, {"language", "en"}});
        tb.add_entity("Term", "t2", {{"designation", "bank"}, {"language", "en"}});
        CHECK(tb.entities().at("Term").size() == 2);
    }
    SUBCASE("duplicate id") {
        tb.add_entity("Concept", "c1");
        CHECK_THROWS_WITH_AS(tb.add_entity("Concept", "c1"), "Concept 'c1' already exists", Error);
    }
    SUBCASE("unknown type") {
        CHECK_THROWS_AS(tb.add_entity("Conceptt", "c1"), Error);
    }
    SUBCASE("identifier syntax enforced") {
        CHECK_THROWS_AS(tb.add_entity("Concept", "c 1"), Error);
        CHECK_THROWS_AS(tb.add_entity("Concept", ""), Error);
        CHECK_THROWS_AS(tb.add_entity("Concept", std::string(257, 'c')), Error);
        tb.add_entity("Concept", "ok_id-1.b");
    }
    SUBCASE("missing required attribute") {
        CHECK_THROWS_AS(tb.add_entity("Term", "t1", {{"designation", "bank"}}), Error);
    }
    SUBCASE("unknown attribute") {
        CHECK_THROWS_AS(tb.add_entity("Concept", "c1", {{"color", "blue"}}), Error);
    }
    SUBCASE("identifier value must not appear among the attributes") {
        CHECK_THROWS_AS(tb.add_entity("Concept", "c1", {{"id", "c1"}}), Error);
    }
    SUBCASE("enumeration breach") {
        CHECK_THROWS_AS(tb.add_entity("Characteristic", "has_wheels", {{"variety", "mandatory"}}),
                        Error);
        tb.add_entity("Characteristic", "has_wheels", {{"variety", "type"}});
    }
    SUBCASE("attribute values are normalized on ingestion") {
        tb.add_entity("Term", "t1", {{"designation", "café"}, {"language", "en"}});
        CHECK(tb.find_entity("Term", "t1")->attrs.at("designation") == "café");
    }
}

TEST_CASE("link mutation rules") {
    ERInstance tb = bank_fixture();
    CHECK_THROWS_AS(tb.add_link("Nope", "c1", "t1"), Error);
    CHECK_THROWS_WITH_AS(tb.add_link("Denoted", "c9", "t1"),
                         "Denoted: no Concept 'c9' for role 'denoting-concept'", Error);
    CHECK_THROWS_AS(tb.add_link("Denoted", "c1", "t9"), Error);
    CHECK_THROWS_AS(tb.add_link("Denoted", "c1", "t1"), Error); // duplicate
    CHECK_THROWS_AS(tb.remove_link("Denoted", "c2", "t1"), Error); // not found
}

TEST_CASE("entities cannot vanish from under their links") {
    ERInstance tb = bank_fixture();
    CHECK_THROWS_WITH_AS(tb.remove_entity("Term", "t3"),
                         "Term 't3' is still referenced by 1 link(s)", Error);
    tb.remove_link("Denoted", "c2", "t3");
    tb.remove_entity("Term", "t3");
    CHECK(tb.find_entity("Term", "t3") == nullptr);
    ViolationReport report = tb.check_cardinalities();
    REQUIRE(report.size() == 1);
    CHECK(report.violations[0].entity_id == "c2");
    CHECK(report.violations[0].kind == ViolationKind::below_min);
    CHECK_THROWS_AS(tb.remove_entity("Term", "t3"), Error);
}

TEST_CASE("add then remove of one link restores the report") {
    ERInstance tb = bank_fixture();
    const ViolationReport before = tb.check_cardinalities();
    tb.add_link("Denoted", "c2", "t1");
    tb.remove_link("Denoted", "c2", "t1");
    CHECK(tb.check_cardinalities() == before);
    CHECK(tb == bank_fixture());
}

TEST_CASE("reports are a pure function of content") {
    std::mt19937 rng_a(7), rng_b(1234);
    for (int round = 0; round < 40; ++round) {
        TermbasePlan plan = random_plan(rng_a, true);
        ERInstance first = build_plan(plan, rng_a);
        ERInstance second = build_plan(plan, rng_b);
        CHECK(first == second);
        CHECK(first.check_cardinalities() == second.check_cardinalities());
    }
}

TEST_CASE("violation reports agree with a brute-force recount") {
    std::mt19937 rng(42);
    for (int round = 0; round < 300; ++round) {
        ERInstance messy = random_messy_instance(rng);
        CHECK(violation_keys(messy.check_cardinalities()) == recount_violations(messy));
    }
    // valid instances agree too (both sides empty)
    for (int round = 0; round < 50; ++round) {
        ERInstance valid = random_termbase(rng, true);
        auto report = valid.check_cardinalities();
        CHECK(report.empty());
        CHECK(recount_violations(valid).empty());
    }
}

TEST_CASE("dangling links are reported with link and role context") {
    ERInstance::EntityMap entities;
    entities["Term"]["t1"] = {"t1", {{"designation", "bank"}, {"language", "en"}}};
    ERInstance tb = ERInstance::from_parts(terminology_schema(), std::move(entities),
                                           {{"Denoted", "c9", "t1"}});
    ViolationReport report = tb.check_cardinalities();
    bool found = false;
    for (const Violation& v : report.violations) {
        if (v.kind == ViolationKind::dangling_ref) {
            found = true;
            CHECK(v.message == "dangling-ref: Denoted link (c9 -> t1) references missing "
                               "Concept 'c9' as denoting-concept");
        }
    }
    CHECK(found);
}

TEST_CASE("from_parts rejects structural nonsense") {
    ERInstance::EntityMap bad_type;
    bad_type["Conceptt"]["c1"] = {"c1", {}};
    CHECK_THROWS_AS(ERInstance::from_parts(terminology_schema(), std::move(bad_type), {}), Error);

    ERInstance::EntityMap key_mismatch;
    key_mismatch["Concept"]["c1"] = {"c2", {}};
    CHECK_THROWS_AS(ERInstance::from_parts(terminology_schema(), std::move(key_mismatch), {}),
                    Error);

    CHECK_THROWS_AS(ERInstance::from_parts(terminology_schema(), {}, {{"Nope", "a", "b"}}), Error);
}
