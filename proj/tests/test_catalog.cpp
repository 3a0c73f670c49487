#include <catch2/catch.hpp>
#include <set>

#include "ddks/catalog.hpp"
#include "helpers.hpp"

using namespace ddks;

TEST_CASE("built-in catalog shape", "[catalog]") {
    auto cat = builtin_catalog();
    CHECK(cat.size() >= 25);
    std::set<std::string> labels;
    int order32 = 0, order64 = 0, order96 = 0, aux = 0;
    for (const auto& e : cat) {
        CHECK(labels.insert(e.label).second);
        FiniteGroup g = build_group(e.presentation);
        if (g.order() == 32 && !e.auxiliary) ++order32;
        if (g.order() == 64 && !e.auxiliary) ++order64;
        if (g.order() == 96 && !e.auxiliary) ++order96;
        if (e.auxiliary) ++aux;
    }
    CHECK(order32 == 2);
    CHECK(order64 == 16);
    CHECK(order96 == 9);
    CHECK(aux >= 3);
}

TEST_CASE("expected data spot checks", "[catalog]") {
    auto cat = builtin_catalog();
    const CatalogEntry* e266 = find_entry(cat, "G(64,266)");
    REQUIRE(e266);
    CHECK(e266->expected->aut_order == 23040);
    CHECK(e266->expected->prestructure_orbits == 60928);
    CHECK(e266->expected->structure_orbits == 23040);

    const CatalogEntry* e217 = find_entry(cat, "G(96,217)");
    REQUIRE(e217);
    CHECK(e217->expected->prestructure_orbits == 26880);
    CHECK(e217->expected->structure_orbits == 0);
    REQUIRE(e217->expected->quotient_targets.size() == 1);
    CHECK(e217->expected->quotient_targets[0].second == "G(32,50)");

    const CatalogEntry* q8 = find_entry(cat, "Q8");
    REQUIRE(q8);
    CHECK(q8->expected->cct);
    CHECK(q8->expected->prestructure_orbits == 0);

    // reference tables say exactly 11 entries of order <= 127 carry structures
    int positive = 0;
    for (const auto& e : cat)
        if (e.expected && e.expected->structure_orbits > 0 && e.presentation.group_order() <= 127) ++positive;
    CHECK(positive == 11);

    // the erratum note on G(96,224) pins the summand identity
    const CatalogEntry* e224 = find_entry(cat, "G(96,224)");
    REQUIRE(e224);
    CHECK(e224->expected->note.find("14694400 + 4480 = 14698880") != std::string::npos);
    CHECK(e224->expected->note.find("14688980") != std::string::npos);
}

TEST_CASE("every catalog presentation round-trips to an identical table", "[catalog]") {
    for (const auto& e : builtin_catalog()) {
        FiniteGroup g = build_group(e.presentation);
        FiniteGroup h = build_group(parse_presentation(emit_presentation(e.presentation)));
        REQUIRE(g.order() == h.order());
        bool same = true;
        for (std::uint32_t a = 0; a < g.order() && same; ++a)
            for (std::uint32_t b = 0; b < g.order() && same; ++b) same = g.mul(elem(a), elem(b)) == h.mul(elem(a), elem(b));
        INFO(e.label);
        CHECK(same);
    }
}

TEST_CASE("external tables ingest and validate", "[catalog]") {
    FiniteGroup s4 = testutil::build("S4");
    std::string table = emit_table(s4);
    FiniteGroup back = ingest_table(table, "S4-table");
    REQUIRE(back.order() == 24);
    CHECK(is_cct(back).status == CctStatus::NotCct);
    CHECK(is_isomorphic(back, s4).has_value());

    FiniteGroup z6 = testutil::z6();
    FiniteGroup z6back = ingest_table(emit_table(z6));
    CHECK(is_abelian(z6back));
    CHECK(screen_group(z6back).verdict == ScreenVerdict::NoPrestructuresAbelian);
}

TEST_CASE("corrupted tables are rejected with the failing triple", "[catalog]") {
    FiniteGroup q8 = testutil::build("Q8");
    std::string table = emit_table(q8);
    // swap two entries deep in the table to break associativity
    std::size_t pos = table.rfind("0");
    table[pos] = '1';
    try {
        ingest_table(table);
        FAIL("expected a rejection");
    } catch (const BuildError& e) {
        std::string msg = e.what();
        bool named = msg.find("non-associative triple") != std::string::npos ||
                     msg.find("permutation") != std::string::npos || msg.find("inverse") != std::string::npos ||
                     msg.find("identity") != std::string::npos;
        CHECK(named);
    }
    CHECK_THROWS_AS(ingest_table("order 2\n0 1\n"), ParseError);       // missing row
    CHECK_THROWS_AS(ingest_table("size 2\n0 1\n1 0\n"), ParseError);   // bad header
    CHECK_THROWS_AS(ingest_table("order 2\n0 1\n1 0\nnames a\n"), ParseError); // short names block
    FiniteGroup named = ingest_table("order 2\n0 1\n1 0\nnames e a\n");
    CHECK(named.order() == 2);
}

TEST_CASE("catalog run on a single label matches the monolithic order-96 table", "[catalog]") {
    CatalogFilter f;
    f.label = "G(96,201)";
    RunArtifact art = run_catalog(f);
    REQUIRE(art.entries.size() == 1);
    const EntryReport& e = art.entries[0];
    CHECK(e.expected_diff.empty());
    CHECK(e.prestructures->orbit_count == 8960);
    CHECK(e.structures->orbit_count == 0);
    CHECK_FALSE(e.screen_negative);
}

TEST_CASE("catalog run on the auxiliary order-8 groups is all negative screens", "[catalog]") {
    CatalogFilter f;
    f.order = 8;
    RunArtifact art = run_catalog(f);
    REQUIRE(art.entries.size() == 2);
    for (const auto& e : art.entries) {
        CHECK(e.screen_negative);
        CHECK(e.expected_diff.empty());
        CHECK(e.prestructures->total_count == 0);
    }
    CHECK(art.ok());
}

TEST_CASE("reports are deterministic once timing is stripped", "[catalog]") {
    CatalogFilter f;
    f.order = 32;
    auto strip = [](RunArtifact art) {
        nlohmann::json all = nlohmann::json::array();
        for (auto& e : art.entries) {
            nlohmann::json j = entry_report_json(e);
            j.erase("timing");
            all.push_back(j);
        }
        return all.dump(2);
    };
    SearchOptions one, two;
    one.worker_count = 1;
    two.worker_count = 2;
    CHECK(strip(run_catalog(f, one)) == strip(run_catalog(f, two)));
}

TEST_CASE("csv summary mirrors the table columns", "[catalog]") {
    CatalogFilter f;
    f.order = 32;
    RunArtifact art = run_catalog(f);
    std::string csv = run_to_csv(art);
    CHECK(csv.find("label,order,monolithic,prestructure_orbits,structure_orbits,structure_total,aut_order,matches") == 0);
    CHECK(csv.find("G(32,49),32,yes,4480,1920,2211840,1152,yes") != std::string::npos);
    CHECK(csv.find("G(32,50),32,yes,2688,1152,2211840,1920,yes") != std::string::npos);
}
