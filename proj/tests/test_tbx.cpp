#include <doctest.h>

#include <map>
#include <random>
#include <termstore/store_json.hpp>
#include <termstore/tbx.hpp>
#include <termstore/terminology.hpp>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random_termbase.hpp"

using namespace termstore;
using namespace termstore::testing;

namespace {

const char* kFixtureTbx =
    R"(<?xml version="1.0" encoding="UTF-8"?>
<tbx style="dca" type="TBX-Basic" xml:lang="en" xmlns="urn:iso:std:iso:30042:ed-2">
  <tbxHeader>
    <fileDesc>
      <titleStmt>
        <title>bank sample</title>
      </titleStmt>
    </fileDesc>
  </tbxHeader>
  <text>
    <body>
      <conceptEntry id="c1">
        <descrip type="characteristic">essential:liquidity</descrip>
        <langSec xml:lang="en">
          <termSec id="t1">
            <term>bank</term>
          </termSec>
          <termSec id="t2">
            <term>riverbank</term>
          </termSec>
        </langSec>
      </conceptEntry>
      <conceptEntry id="c2">
        <descrip type="genericRelation">c1</descrip>
        <descrip type="characteristic">delimiting:adjacency</descrip>
        <descrip type="characteristic">non-essential:shape</descrip>
        <langSec xml:lang="en">
          <termSec id="t3">
            <term>bank</term>
          </termSec>
        </langSec>
      </conceptEntry>
      <conceptEntry id="c3">
        <descrip type="superordinateConcept">c1</descrip>
        <langSec xml:lang="en">
          <termSec id="t4">
            <term>central bank</term>
          </termSec>
        </langSec>
      </conceptEntry>
    </body>
  </text>
</tbx>
)";

// minimal well-formed document with `entries` spliced into <body>
std::string wrap(const std::string& entries) {
    std::string doc =
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<tbx style=\"dca\" type=\"TBX-Basic\" xml:lang=\"en\" "
        "xmlns=\"urn:iso:std:iso:30042:ed-2\">\n"
        "<tbxHeader><fileDesc><titleStmt><title>t</title></titleStmt></fileDesc></tbxHeader>\n"
        "<text><body>";
    doc += entries;
    doc += "</body></text>\n</tbx>\n";
    return doc;
}

const char* kEntryC1 =
    "<conceptEntry id=\"c1\"><langSec xml:lang=\"en\">"
    "<termSec id=\"t1\"><term>bank</term></termSec></langSec></conceptEntry>";

template <typename Fn>
Error capture(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e;
    }
    FAIL("expected a termstore::Error");
    return Error(ErrorCode::not_found, "unreachable");
}

std::map<std::string, std::uint64_t> loss_counts(const LossReport& report) {
    std::map<std::string, std::uint64_t> counts;
    for (const LossEntry& entry : report.entries) counts[entry.kind] = entry.count;
    return counts;
}

} // namespace

TEST_CASE("export emits the frozen layout") {
    TbxExport exported = export_tbx(full_fixture(), "bank sample");
    CHECK(exported.xml == kFixtureTbx);
    // deterministic: same content, same bytes
    CHECK(export_tbx(full_fixture(), "bank sample").xml == exported.xml);
}

TEST_CASE("export accounts for everything the dialect cannot carry") {
    TbxExport exported = export_tbx(full_fixture(), "bank sample");
    const std::vector<LossEntry> expected{
        {"Characteristic", 1, "characteristic delineates no concept"},
        {"Collection", 1, "entity type not representable in the TBX dialect"},
        {"ConnectedTo", 1, "association not representable in the TBX dialect"},
        {"ConsistsOf", 1, "association not representable in the TBX dialect"},
        {"Evokes", 1, "association not representable in the TBX dialect"},
        {"FilledBy", 1, "association not representable in the TBX dialect"},
        {"Frame", 1, "entity type not representable in the TBX dialect"},
        {"FrameElement", 1, "entity type not representable in the TBX dialect"},
        {"Group", 1, "association not representable in the TBX dialect"},
        {"HasElement", 1, "association not representable in the TBX dialect"},
        {"IsA", 1, "association not representable in the TBX dialect"},
        {"OccursIn", 1, "association not representable in the TBX dialect"},
        {"PartOfCollection", 1, "association not representable in the TBX dialect"},
        {"TextSource", 1, "entity type not representable in the TBX dialect"},
    };
    CHECK(exported.loss.entries == expected);

    CHECK(export_tbx(bank_fixture(), "x").loss.empty());
}

TEST_CASE("an empty termbase exports as a header-only document") {
    TbxExport exported = export_tbx(new_termbase(), "empty");
    CHECK(exported.loss.empty());
    CHECK(exported.xml.find("<body>\n    </body>") != std::string::npos);
    CHECK(store_bytes(import_tbx(exported.xml)) == store_bytes(new_termbase()));
}

TEST_CASE("export refuses invalid content") {
    SUBCASE("hard violations always refuse") {
        ERInstance tb = bank_fixture();
        tb.remove_link("Denoted", "c2", "t3");
        Error e = capture([&] { export_tbx(tb, "x"); });
        CHECK(e.code() == ErrorCode::validation_failed);
        CHECK(std::string(e.what()) ==
              "export refused: 2 validation violations (first: below-min: Concept 'c2' has 0 "
              "Denoted links as denoting-concept (minimum 1))");
        CHECK_THROWS_AS(export_tbx(tb, "x", true), Error); // force does not bypass hard ones
    }
    SUBCASE("conditional violations refuse unless forced") {
        ERInstance tb = bank_fixture();
        add_characteristic(tb, "empty-kind", "type");
        Error e = capture([&] { export_tbx(tb, "x"); });
        CHECK(e.code() == ErrorCode::validation_failed);
        CHECK(std::string(e.what()) ==
              "export refused: 1 conditional violations (first: conditional: Characteristic "
              "'empty-kind' is a type characteristic but groups no members (minimum 1)); pass "
              "force to export anyway");

        TbxExport forced = export_tbx(tb, "x", true);
        CHECK(loss_counts(forced.loss) ==
              std::map<std::string, std::uint64_t>{{"Characteristic", 1}});
    }
}

TEST_CASE("forced exports of cyclic hierarchies survive a round trip") {
    ERInstance tb = bank_fixture();
    set_superordinate(tb, "c2", "c1");
    tb.add_link("Hierarchical", "c2", "c1");
    REQUIRE(validate_termbase(tb).any_conditional());

    TbxExport forced = export_tbx(tb, "cycle", true);
    ERInstance back = import_tbx(forced.xml);
    CHECK(store_bytes(back) == store_bytes(tb));
    CHECK(validate_termbase(back).any_conditional());
}

TEST_CASE("round trip: lossless corpus") {
    std::mt19937 rng(8080);
    for (int round = 0; round < 200; ++round) {
        ERInstance tb = random_termbase(rng, false, 30);
        TbxExport exported = export_tbx(tb, "corpus");
        CHECK(exported.loss.empty());
        CHECK(store_bytes(import_tbx(exported.xml)) == store_bytes(tb));
    }
}

TEST_CASE("round trip: full corpus drops exactly the census") {
    std::mt19937 rng(9090);
    for (int round = 0; round < 120; ++round) {
        ERInstance tb = random_termbase(rng, true);
        TbxExport exported = export_tbx(tb, "corpus");
        CHECK(loss_counts(exported.loss) == loss_census(tb));

        // what survives is the onomasiological projection without Group links
        // and without characteristics that delineate nothing
        Projection onoma = view(tb, Approach::onomasiological);
        ERInstance::EntityMap entities = onoma.instance.entities();
        ERInstance::LinkSet links;
        std::set<std::string> delineated;
        for (const Link& link : onoma.instance.links()) {
            if (link.association == "Delineated") delineated.insert(link.to);
            if (link.association != "Group") links.insert(link);
        }
        auto& characteristics = entities.at("Characteristic");
        for (auto it = characteristics.begin(); it != characteristics.end();) {
            it = delineated.count(it->first) == 0 ? characteristics.erase(it) : std::next(it);
        }
        ERInstance expected =
            ERInstance::from_parts(tb.schema_ptr(), std::move(entities), std::move(links));
        CHECK(store_bytes(import_tbx(exported.xml)) == store_bytes(expected));
    }
}

TEST_CASE("import reads the dialect back") {
    ERInstance tb = import_tbx(kFixtureTbx);
    CHECK(export_tbx(tb, "bank sample").xml == kFixtureTbx);

    SUBCASE("escapes and entities decode") {
        ERInstance spicy = new_termbase();
        add_concept(spicy, "c1");
        add_term(spicy, "t1", "a&b <c>", "en", std::optional<std::string>("say \"hi\""));
        denote(spicy, "c1", "t1");
        TbxExport exported = export_tbx(spicy, "има <&> \"quotes\"");
        CHECK(exported.xml.find("<term>a&amp;b &lt;c&gt;</term>") != std::string::npos);
        CHECK(store_bytes(import_tbx(exported.xml)) == store_bytes(spicy));

        ERInstance decoded = import_tbx(wrap(
            "<conceptEntry id=\"c1\"><langSec xml:lang=\"en\"><termSec id=\"t1\">"
            "<term>a&#x26;b &#38;&lt;&gt;&quot;&apos;</term></termSec></langSec></conceptEntry>"));
        CHECK(decoded.find_entity("Term", "t1")->attrs.at("designation") == "a&b &<>\"'");
    }
    SUBCASE("child order inside an entry does not matter") {
        ERInstance canonical = import_tbx(wrap(
            "<conceptEntry id=\"c1\"><langSec xml:lang=\"en\"><termSec id=\"t1\">"
            "<term>bank</term></termSec></langSec></conceptEntry>"
            "<conceptEntry id=\"c2\">"
            "<descrip type=\"superordinateConcept\">c1</descrip>"
            "<descrip type=\"genericRelation\">c1</descrip>"
            "<descrip type=\"characteristic\">essential:ch1</descrip>"
            "<langSec xml:lang=\"en\"><termSec id=\"t2\"><term>levee</term>"
            "<descrip type=\"definition\">d</descrip></termSec></langSec></conceptEntry>"));
        ERInstance shuffled = import_tbx(wrap(
            "<conceptEntry id=\"c2\">"
            "<langSec xml:lang=\"en\"><termSec id=\"t2\"><term>levee</term>"
            "<descrip type=\"definition\">d</descrip></termSec></langSec>"
            "<descrip type=\"characteristic\">essential:ch1</descrip>"
            "<descrip type=\"genericRelation\">c1</descrip>"
            "<descrip type=\"superordinateConcept\">c1</descrip>"
            "</conceptEntry>"
            "<conceptEntry id=\"c1\"><langSec xml:lang=\"en\"><termSec id=\"t1\">"
            "<term>bank</term></termSec></langSec></conceptEntry>"));
        CHECK(store_bytes(shuffled) == store_bytes(canonical));
    }
    SUBCASE("insignificant whitespace and comments are tolerated") {
        std::string doc = wrap(std::string("\n  <!-- a comment -->\n  ") + kEntryC1 + "\n  ");
        CHECK(store_bytes(import_tbx(doc)) == store_bytes(import_tbx(wrap(kEntryC1))));
    }
}

TEST_CASE("import rejects what the dialect forbids") {
    auto rejects = [](const std::string& doc, ErrorCode code, const std::string& message) {
        try {
            import_tbx(doc);
            FAIL_CHECK("expected rejection: " << message);
        } catch (const Error& e) {
            CHECK(e.code() == code);
            CHECK(std::string(e.what()) == message);
        }
    };
    auto parse_rejects = [&rejects](const std::string& doc, const std::string& message) {
        rejects(doc, ErrorCode::parse_error, message);
    };

    SUBCASE("malformed XML") {
        Error e = capture([] { import_tbx("<tbx><unclosed>"); });
        CHECK(e.code() == ErrorCode::parse_error);
        CHECK(std::string(e.what()).substr(0, 8) == "XML line");
    }
    SUBCASE("wrong document element") {
        parse_rejects("<termbase></termbase>",
                      "TBX: document element is <termbase>, expected <tbx>");
    }
    SUBCASE("envelope attributes") {
        std::string doc = wrap(kEntryC1);
        std::string bad = doc;
        bad.replace(bad.find("urn:iso:std:iso:30042:ed-2"), 26, "urn:example:not-tbx-at-all");
        parse_rejects(bad, "TBX: unsupported namespace 'urn:example:not-tbx-at-all'");

        bad = doc;
        bad.replace(bad.find("style=\"dca\""), 11, "style=\"dcs\"");
        parse_rejects(bad, "TBX: unsupported dialect (expected style=\"dca\" type=\"TBX-Basic\")");

        bad = doc;
        bad.replace(bad.find(" type=\"TBX-Basic\""), 17, "");
        parse_rejects(bad, "TBX: missing attribute 'type' on <tbx>");
    }
    SUBCASE("envelope shape") {
        parse_rejects(
            "<tbx style=\"dca\" type=\"TBX-Basic\" xml:lang=\"en\" "
            "xmlns=\"urn:iso:std:iso:30042:ed-2\"><text><body></body></text></tbx>",
            "TBX: <tbx> must contain <tbxHeader> followed by <text>");
        std::string doc = wrap(kEntryC1);
        doc.replace(doc.find("<tbxHeader><fileDesc>"), 21, "<tbxHeader><fileDesc/><fileDesc>");
        parse_rejects(doc, "TBX: <tbxHeader> must contain exactly one <fileDesc>");
    }
    SUBCASE("body content") {
        parse_rejects(wrap("<langSec xml:lang=\"en\"/>"),
                      "TBX: unexpected element <langSec> in <body>");
        parse_rejects(wrap(std::string("stray text") + kEntryC1),
                      "TBX: unexpected character data in <body>");
    }
    SUBCASE("descrip types") {
        parse_rejects(wrap("<conceptEntry id=\"c1\"><descrip type=\"note\">n</descrip>"
                           "<langSec xml:lang=\"en\"><termSec id=\"t1\"><term>x</term></termSec>"
                           "</langSec></conceptEntry>"),
                      "TBX: unknown descrip type 'note' in <conceptEntry>");
        parse_rejects(wrap("<conceptEntry id=\"c1\"><langSec xml:lang=\"en\">"
                           "<termSec id=\"t1\"><term>x</term>"
                           "<descrip type=\"characteristic\">essential:y</descrip>"
                           "</termSec></langSec></conceptEntry>"),
                      "TBX: unknown descrip type 'characteristic' in <termSec>");
    }
    SUBCASE("characteristic values") {
        auto entry = [](const std::string& value) {
            return std::string("<conceptEntry id=\"c1\"><descrip type=\"characteristic\">") +
                   value +
                   "</descrip><langSec xml:lang=\"en\"><termSec id=\"t1\"><term>x</term>"
                   "</termSec></langSec></conceptEntry>";
        };
        parse_rejects(wrap(entry("essential")),
                      "TBX: characteristic descrip 'essential' is not VARIETY:NAME");
        parse_rejects(wrap(entry(":name")),
                      "TBX: characteristic descrip ':name' is not VARIETY:NAME");
        parse_rejects(wrap(entry("essential:")),
                      "TBX: characteristic descrip 'essential:' is not VARIETY:NAME");
        parse_rejects(wrap(entry("weird:x")), "TBX: unknown characteristic variety 'weird'");
    }
    SUBCASE("variety conflicts name both entries") {
        std::string doc = wrap(
            "<conceptEntry id=\"c1\"><descrip type=\"characteristic\">essential:x</descrip>"
            "<langSec xml:lang=\"en\"><termSec id=\"t1\"><term>a</term></termSec></langSec>"
            "</conceptEntry>"
            "<conceptEntry id=\"c2\"><descrip type=\"characteristic\">delimiting:x</descrip>"
            "<langSec xml:lang=\"en\"><termSec id=\"t2\"><term>b</term></termSec></langSec>"
            "</conceptEntry>");
        rejects(doc, ErrorCode::conflict,
                "characteristic 'x' has variety 'essential' in conceptEntry 'c1' but variety "
                "'delimiting' in conceptEntry 'c2'");
        // the same variety twice is deduplication, not a conflict
        std::string ok = doc;
        ok.replace(ok.find("delimiting:x"), 12, "essential:x");
        CHECK(import_tbx(ok).entities().at("Characteristic").size() == 1);
    }
    SUBCASE("relation targets must be in the document") {
        parse_rejects(wrap("<conceptEntry id=\"c1\">"
                           "<descrip type=\"superordinateConcept\">z9</descrip>"
                           "<langSec xml:lang=\"en\"><termSec id=\"t1\"><term>x</term></termSec>"
                           "</langSec></conceptEntry>"),
                      "TBX: superordinateConcept target 'z9' of conceptEntry 'c1' is not in the "
                      "document");
        parse_rejects(wrap("<conceptEntry id=\"c1\">"
                           "<descrip type=\"genericRelation\">z9</descrip>"
                           "<langSec xml:lang=\"en\"><termSec id=\"t1\"><term>x</term></termSec>"
                           "</langSec></conceptEntry>"),
                      "TBX: genericRelation target 'z9' of conceptEntry 'c1' is not in the "
                      "document");
    }
    SUBCASE("multiplicities") {
        parse_rejects(wrap("<conceptEntry id=\"c1\"></conceptEntry>"),
                      "TBX: conceptEntry 'c1' has no langSec");
        parse_rejects(wrap("<conceptEntry id=\"c1\"><langSec xml:lang=\"en\"></langSec>"
                           "</conceptEntry>"),
                      "TBX: langSec 'en' in conceptEntry 'c1' has no termSec");
        parse_rejects(wrap("<conceptEntry id=\"c1\"><langSec xml:lang=\"en\">"
                           "<termSec id=\"t1\"></termSec></langSec></conceptEntry>"),
                      "TBX: termSec 't1' lacks a <term> element");
        parse_rejects(wrap("<conceptEntry id=\"c1\"><langSec xml:lang=\"en\">"
                           "<termSec id=\"t1\"><term>a</term><term>b</term></termSec></langSec>"
                           "</conceptEntry>"),
                      "TBX: termSec 't1' has more than one <term>");
        parse_rejects(wrap("<conceptEntry id=\"c1\"><langSec xml:lang=\"en\">"
                           "<termSec id=\"t1\"><term>a</term>"
                           "<descrip type=\"definition\">d1</descrip>"
                           "<descrip type=\"definition\">d2</descrip></termSec></langSec>"
                           "</conceptEntry>"),
                      "TBX: termSec 't1' has more than one definition");
        parse_rejects(wrap("<conceptEntry id=\"c1\">"
                           "<descrip type=\"superordinateConcept\">c1</descrip>"
                           "<descrip type=\"superordinateConcept\">c1</descrip>"
                           "<langSec xml:lang=\"en\"><termSec id=\"t1\"><term>x</term></termSec>"
                           "</langSec></conceptEntry>"),
                      "TBX: conceptEntry 'c1' has more than one superordinateConcept");
    }
    SUBCASE("ids and languages go through the usual gates") {
        std::string doc = wrap(kEntryC1);
        std::string bad = doc;
        bad.replace(bad.find("id=\"c1\""), 7, "id=\"c 1\"");
        rejects(bad, ErrorCode::invalid_identifier,
                "id 'c 1' does not match the identifier alphabet");

        bad = doc;
        bad.replace(bad.find("xml:lang=\"en\"><termSec"), 14, "xml:lang=\"12 en\">");
        Error e = capture([&] { import_tbx(bad); });
        CHECK(e.code() == ErrorCode::invalid_language);

        bad = wrap(std::string(kEntryC1) + kEntryC1);
        rejects(bad, ErrorCode::duplicate_id, "Concept 'c1' already exists");

        bad = wrap(
            "<conceptEntry id=\"c1\"><langSec xml:lang=\"en\">"
            "<termSec id=\"t1\"><term>a</term></termSec>"
            "<termSec id=\"t1\"><term>b</term></termSec></langSec></conceptEntry>");
        rejects(bad, ErrorCode::duplicate_id, "Term 't1' already exists");
    }
}
