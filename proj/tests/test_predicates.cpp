#include <catch2/catch.hpp>

#include "ddks/predicates.hpp"
#include "helpers.hpp"

using namespace ddks;

TEST_CASE("Q8 is CCT, the order-32 extra-specials are not", "[predicates]") {
    CHECK(is_cct(testutil::build("Q8")).status == CctStatus::Cct);

    FiniteGroup g = testutil::build("G(32,49)");
    CctResult r = is_cct(g);
    REQUIRE(r.status == CctStatus::NotCct);
    REQUIRE(r.witness.has_value());
    // the witness triple really violates transitivity
    Bits z = center(g).bits;
    auto [x, y, zz] = *r.witness;
    CHECK_FALSE(z.test(x));
    CHECK_FALSE(z.test(y));
    CHECK_FALSE(z.test(zz));
    CHECK(g.commutator(x, y) == 0);
    CHECK(g.commutator(y, zz) == 0);
    CHECK(g.commutator(x, zz) != 0);

    CHECK(is_cct(testutil::build("G(32,50)")).status == CctStatus::NotCct);
    CHECK(is_cct(testutil::build("S4")).status == CctStatus::NotCct);
}

TEST_CASE("abelian input yields the not-applicable marker", "[predicates]") {
    CHECK(is_cct(testutil::z6()).status == CctStatus::NotApplicable);
}

TEST_CASE("abelian normal subgroup of prime index forces CCT", "[predicates]") {
    // D4 contains a cyclic subgroup of index 2
    CHECK(is_cct(testutil::build("D4")).status == CctStatus::Cct);
}

TEST_CASE("small-order screening: three prime factors or p^4 give CCT or abelian", "[predicates]") {
    for (const auto& r : data::catalog_rows) {
        FiniteGroup g = testutil::build(r.label);
        std::uint32_t n = g.order();
        int factors = 0;
        std::uint32_t m = n;
        for (std::uint32_t d = 2; d <= m; ++d)
            while (m % d == 0) {
                ++factors;
                m /= d;
            }
        bool p4 = false;
        for (std::uint32_t p = 2; p * p * p * p <= n; ++p)
            if (p * p * p * p == n) p4 = true;
        if (factors <= 3 || p4) {
            INFO(r.label);
            CHECK(is_cct(g).status != CctStatus::NotCct);
        }
    }
}

TEST_CASE("every catalog group carrying prestructures is non-CCT", "[predicates]") {
    for (const auto& r : data::catalog_rows) {
        if (r.prestructure_orbits == 0) continue;
        INFO(r.label);
        CHECK(is_cct(testutil::build(r.label)).status == CctStatus::NotCct);
    }
}

TEST_CASE("monolithic flags", "[predicates]") {
    CHECK(is_monolithic(testutil::build("G(64,249)")));
    CHECK_FALSE(is_monolithic(testutil::build("G(64,264)")));
    // direct products are never monolithic
    CHECK_FALSE(is_monolithic(testutil::build("G(96,224)")));
    CHECK_FALSE(is_monolithic(testutil::z2xz2()));
}

TEST_CASE("extra-special recognition", "[predicates]") {
    CHECK(is_extraspecial(testutil::build("G(32,49)")));
    CHECK(is_extraspecial(testutil::build("G(32,50)")));
    CHECK(is_extraspecial(testutil::build("Q8")));
    CHECK(is_extraspecial(testutil::build("D4")));
    CHECK_FALSE(is_extraspecial(testutil::build("G(64,199)"))); // |Z| = 4
    CHECK_FALSE(is_extraspecial(testutil::z6()));
    CHECK_FALSE(is_extraspecial(testutil::z2xz2())); // abelian p-group
    CHECK_FALSE(is_extraspecial(testutil::build("S4")));

    // for the extra-special entries: monolith = center = derived, order 2
    for (const char* label : {"G(32,49)", "G(32,50)"}) {
        FiniteGroup g = testutil::build(label);
        ElementSet z = center(g);
        CHECK(z.size() == 2);
        CHECK(monolith(g).bits == z.bits);
        CHECK(derived_subgroup(g).bits == z.bits);
    }
}

TEST_CASE("nilpotency classes", "[predicates]") {
    CHECK(nilpotency_class(testutil::build("G(32,49)")) == 2);
    CHECK(nilpotency_class(testutil::build("G(64,134)")) == 3);
    CHECK(nilpotency_class(testutil::build("G(96,201)")) == std::nullopt);
    CHECK(nilpotency_class(testutil::build("S4")) == std::nullopt);
    CHECK(nilpotency_class(testutil::z6()) == 1);
    CHECK(nilpotency_class(testutil::z2()) == 1);
}

TEST_CASE("profile consolidates the predicates", "[predicates]") {
    FiniteGroup g = testutil::build("G(96,202)");
    GroupProfile p = compute_profile(g, 192);
    CHECK_FALSE(p.is_abelian);
    CHECK(p.cct == CctStatus::NotCct);
    CHECK(p.is_monolithic);
    CHECK(p.monolith_order == 2);
    CHECK_FALSE(p.is_extraspecial);
    CHECK(p.nilpotency_str() == "non-nilpotent");
    CHECK(p.center_order == 2);
    CHECK(p.derived_order == 8);
    CHECK(p.aut_order == 192);
}
