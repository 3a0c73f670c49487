#include <catch2/catch.hpp>
#include <random>

#include "ddks/braid.hpp"
#include "ddks/search.hpp"
#include "helpers.hpp"

using namespace ddks;

TEST_CASE("genus-2 schema has the 22 labeled relations", "[braid]") {
    RelationSchema sch = relation_schema(2);
    REQUIRE(sch.relators.size() == 22);
    std::vector<std::string> labels;
    for (const auto& r : sch.relators) labels.push_back(r.label);
    CHECK(labels[0] == "S1");
    CHECK(labels[1] == "S2");
    CHECK(labels[2] == "R1");
    CHECK(labels[11] == "R10");
    CHECK(labels[12] == "T1");
    CHECK(labels[21] == "T10");
}

TEST_CASE("R4 reads [r11, t21] = z^-1", "[braid]") {
    RelationSchema sch = relation_schema(2);
    const Relation* r4 = nullptr;
    for (const auto& r : sch.relators)
        if (r.label == "R4") r4 = &r;
    REQUIRE(r4);
    int r11 = slot_r1(2, 1) + 1, t21 = slot_t2(2, 1) + 1, z = slot_z(2) + 1;
    CHECK(r4->lhs.letters == std::vector<Letter>{{r11, 1}, {t21, 1}, {r11, -1}, {t21, -1}});
    CHECK(r4->rhs.letters == std::vector<Letter>{{z, -1}});
}

TEST_CASE("relator count is 2 + 2b(2b+1)", "[braid]") {
    CHECK(relation_schema(3).relators.size() == 44);
    CHECK(relation_schema(4).relators.size() == 74);
    CHECK_THROWS_AS(relation_schema(1), std::invalid_argument);
}

namespace {

// independent hand-coded genus-2 relation checks, mirroring the printed
// table verbatim with direct element arithmetic
std::vector<bool> manual_relations(const FiniteGroup& g, const std::vector<elem>& e) {
    auto mul = [&](elem a, elem b) { return g.mul(a, b); };
    auto inv = [&](elem a) { return g.inv(a); };
    auto com = [&](elem a, elem b) { return g.commutator(a, b); };
    elem r11 = e[0], t11 = e[1], r12 = e[2], t12 = e[3];
    elem r21 = e[4], t21 = e[5], r22 = e[6], t22 = e[7], z = e[8];
    elem zi = inv(z);
    std::vector<bool> ok;
    // S1, S2
    elem s1 = mul(mul(mul(mul(mul(com(inv(r12), inv(t12)), inv(t12)), com(inv(r11), inv(t11))), inv(t11)), t11), t12);
    ok.push_back(s1 == z);
    elem s2 = mul(mul(mul(mul(mul(com(inv(r21), t21), t21), com(inv(r22), t22)), t22), inv(t22)), inv(t21));
    ok.push_back(s2 == zi);
    // R1..R10
    ok.push_back(com(r11, r22) == 0);
    ok.push_back(com(r11, r21) == 0);
    ok.push_back(com(r11, t22) == 0);
    ok.push_back(com(r11, t21) == zi);
    ok.push_back(com(r11, z) == com(inv(r21), z));
    ok.push_back(com(r12, r22) == 0);
    ok.push_back(com(r12, r21) == mul(mul(mul(mul(mul(zi, r21), inv(r22)), z), r22), inv(r21)));
    ok.push_back(com(r12, t22) == zi);
    ok.push_back(com(r12, t21) == com(zi, t21));
    ok.push_back(com(r12, z) == com(inv(r22), z));
    // T1..T10
    ok.push_back(com(t11, r22) == 0);
    ok.push_back(com(t11, r21) == mul(mul(inv(t21), z), t21));
    ok.push_back(com(t11, t22) == 0);
    ok.push_back(com(t11, t21) == com(inv(t21), z));
    ok.push_back(com(t11, z) == com(inv(t21), z));
    ok.push_back(com(t12, r22) == mul(mul(inv(t22), z), t22));
    ok.push_back(com(t12, r21) == com(inv(t22), z));
    ok.push_back(com(t12, t22) == com(inv(t22), z));
    ok.push_back(com(t12, t21) ==
                 mul(mul(mul(mul(mul(mul(mul(mul(mul(inv(t22), z), t22), zi), t21), z), inv(t22)), zi), t22), inv(t21)));
    ok.push_back(com(t12, z) == com(inv(t22), z));
    return ok;
}

} // namespace

TEST_CASE("schema evaluation agrees with the hand-coded table on random tuples", "[braid]") {
    RelationSchema sch = relation_schema(2);
    std::mt19937 rng(12345);
    for (const char* label : {"G(32,49)", "S4"}) {
        FiniteGroup g = testutil::build(label);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<elem> e(9);
            for (auto& x : e) x = elem(rng() % g.order());
            std::vector<bool> manual = manual_relations(g, e);
            REQUIRE(manual.size() == sch.relators.size());
            for (std::size_t i = 0; i < sch.relators.size(); ++i) {
                bool schema_ok = g.eval_word(sch.relators[i].lhs, e) == g.eval_word(sch.relators[i].rhs, e);
                INFO(label << " trial " << trial << " relation " << sch.relators[i].label);
                REQUIRE(schema_ok == manual[i]);
            }
        }
    }
}

namespace {
// canonical structure representative of G(32,49):
// (x4, x3, x2, x1, x2 x4, x1 x3, x4, x3, x5)
StructureTuple known_structure(const FiniteGroup& g) {
    StructureTuple t;
    t.b = 2;
    t.entries = {g.element_from_exponents({0, 0, 0, 1, 0}), g.element_from_exponents({0, 0, 1, 0, 0}),
                 g.element_from_exponents({0, 1, 0, 0, 0}), g.element_from_exponents({1, 0, 0, 0, 0}),
                 g.element_from_exponents({0, 1, 0, 1, 0}), g.element_from_exponents({1, 0, 1, 0, 0}),
                 g.element_from_exponents({0, 0, 0, 1, 0}), g.element_from_exponents({0, 0, 1, 0, 0}),
                 g.element_from_exponents({0, 0, 0, 0, 1})};
    t.n = 2;
    return t;
}
} // namespace

TEST_CASE("a known structure of G(32,49) verifies; corrupting it fails", "[braid]") {
    FiniteGroup g = testutil::build("G(32,49)");
    StructureTuple t = known_structure(g);
    VerifyReport vr = verify_tuple(g, t, Require::Structure);
    CHECK(vr.pass);
    CHECK(vr.order_ok);
    CHECK(vr.generation_ok);
    CHECK(noncentrality_check(g, t));

    StructureTuple bad = t;
    bad.entries[0] = 0; // identity in the r11 slot
    VerifyReport vb = verify_tuple(g, bad, Require::Structure);
    CHECK_FALSE(vb.pass);
    bool r4_failed = false;
    for (const auto& rc : vb.relations) r4_failed = r4_failed || (rc.label == "R4" && !rc.pass);
    CHECK(r4_failed);
}

TEST_CASE("z of order one is rejected", "[braid]") {
    FiniteGroup g = testutil::build("G(32,49)");
    StructureTuple t = known_structure(g);
    t.entries[8] = 0;
    t.n = 1;
    VerifyReport vr = verify_tuple(g, t, Require::Prestructure);
    CHECK_FALSE(vr.order_ok);
    CHECK_FALSE(vr.pass);
}

TEST_CASE("abelian groups fail R4 with any nontrivial z", "[braid]") {
    FiniteGroup g = testutil::z2xz2();
    StructureTuple t;
    t.b = 2;
    t.entries.assign(9, elem(1));
    t.entries[8] = elem(2);
    t.n = g.order_of(elem(2));
    VerifyReport vr = verify_tuple(g, t, Require::Prestructure);
    bool r4 = true;
    for (const auto& rc : vr.relations)
        if (rc.label == "R4") r4 = rc.pass;
    CHECK_FALSE(r4);
    CHECK_FALSE(vr.pass);
}

TEST_CASE("malformed tuple lengths are rejected", "[braid]") {
    FiniteGroup g = testutil::build("G(32,49)");
    StructureTuple t;
    t.b = 2;
    t.entries.assign(7, elem(1));
    t.n = 2;
    CHECK_THROWS_AS(verify_tuple(g, t, Require::Structure), std::invalid_argument);
    CHECK_THROWS_AS(StructureTuple::of(g, 2, std::vector<elem>(5, elem(1))), std::invalid_argument);
    // prestructures are a genus-2 notion
    StructureTuple t3;
    t3.b = 3;
    t3.entries.assign(13, elem(1));
    t3.n = 2;
    CHECK_THROWS_AS(verify_tuple(g, t3, Require::Prestructure), std::invalid_argument);
}

TEST_CASE("verification is equivariant under automorphisms", "[braid]") {
    FiniteGroup g = testutil::build("G(32,49)");
    AutGroup aut = automorphism_group(g);
    StructureTuple t = known_structure(g);
    std::mt19937 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        const Perm& a = aut.elements[rng() % aut.elements.size()];
        StructureTuple img = t;
        for (auto& e : img.entries) e = a[e];
        CHECK(verify_tuple(g, img, Require::Structure).pass);
    }
}

TEST_CASE("no genus-3 structures exist in G(32,49): random 13-tuples all fail", "[braid]") {
    FiniteGroup g = testutil::build("G(32,49)");
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 300; ++trial) {
        StructureTuple t;
        t.b = 3;
        t.entries.resize(13);
        for (auto& e : t.entries) e = elem(rng() % g.order());
        t.n = g.order_of(t.entries.back());
        if (t.n < 2) t.n = 2; // force the order check to engage
        CHECK_FALSE(verify_tuple(g, t, Require::Structure).pass);
    }
}

TEST_CASE("slot naming", "[braid]") {
    CHECK(slot_name(2, 0) == "r11");
    CHECK(slot_name(2, 5) == "t21");
    CHECK(slot_name(2, 8) == "z");
    CHECK(slot_name(3, 12) == "z");
}
