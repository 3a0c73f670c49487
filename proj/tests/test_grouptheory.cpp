#include <algorithm>
#include <catch2/catch.hpp>
#include <random>
#include <set>

#include "ddks/grouptheory.hpp"
#include "helpers.hpp"

using namespace ddks;

TEST_CASE("centers match the reference generators", "[grouptheory]") {
    FiniteGroup g49 = testutil::build("G(32,49)");
    ElementSet z = center(g49);
    CHECK(z.size() == 2);
    CHECK(z.bits == subgroup_closure(g49, {g49.generator(5)}).bits);

    FiniteGroup g249 = testutil::build("G(64,249)");
    ElementSet z249 = center(g249);
    CHECK(z249.size() == 4);
    CHECK(z249.bits == subgroup_closure(g249, {g249.generator(5)}).bits);

    FiniteGroup a = testutil::z6();
    CHECK(center(a).size() == a.order());
}

TEST_CASE("centralizers", "[grouptheory]") {
    FiniteGroup g = testutil::build("G(32,49)");
    CHECK(centralizer(g, elem(0)).size() == g.order());
    CHECK(centralizer(g, center(g).bits).size() == g.order());
    CHECK_THROWS_AS(centralizer(g, Bits(g.order())), std::invalid_argument);
    // subgroup property, checked independently
    ElementSet c = centralizer(g, g.generator(1));
    CHECK(is_subgroup_set(g, c.bits));
}

TEST_CASE("subgroup closure finds Q8 inside G(96,201)", "[grouptheory]") {
    FiniteGroup g = testutil::build("G(96,201)");
    ElementSet k = subgroup_closure(g, {g.generator(4), g.generator(5), g.generator(6)});
    REQUIRE(k.size() == 8);
    SubgroupGroup sub = subgroup_as_group(g, k.bits);
    CHECK(is_isomorphic(sub.group, testutil::build("Q8")).has_value());
    CHECK(subgroup_closure(g, {}).size() == 1);
}

TEST_CASE("derived subgroups match the reference", "[grouptheory]") {
    FiniteGroup g199 = testutil::build("G(64,199)");
    ElementSet d = derived_subgroup(g199);
    CHECK(d.size() == 2);
    CHECK(d.bits.test(g199.generator(5)));

    FiniteGroup g204 = testutil::build("G(96,204)");
    ElementSet d204 = derived_subgroup(g204);
    REQUIRE(d204.size() == 32);
    SubgroupGroup sub = subgroup_as_group(g204, d204.bits);
    CHECK(is_isomorphic(sub.group, testutil::build("G(32,49)")).has_value());

    CHECK(derived_subgroup(testutil::z6()).size() == 1);
}

TEST_CASE("conjugacy classes of G(32,49) by brute force", "[grouptheory]") {
    FiniteGroup g = testutil::build("G(32,49)");
    auto classes = conjugacy_classes(g);
    int singletons = 0, pairs = 0;
    for (const auto& cls : classes) {
        if (cls.size() == 1) ++singletons;
        if (cls.size() == 2) ++pairs;
        // verify each class is really a conjugation orbit
        std::set<elem> members(cls.begin(), cls.end());
        for (elem a : cls)
            for (std::uint32_t x = 0; x < g.order(); ++x) CHECK(members.count(g.conjugate(elem(x), a)) == 1);
    }
    CHECK(singletons == 2); // = |Z|
    CHECK(pairs == 15);     // the 30 non-central elements in classes of size 2
    CHECK(classes.size() == 17);
}

TEST_CASE("normal subgroups", "[grouptheory]") {
    FiniteGroup g = testutil::build("G(64,199)");
    ElementSet n1 = subgroup_closure(g, {g.generator(6)});
    ElementSet n2 = subgroup_closure(g, {g.mul(g.generator(5), g.generator(6))});
    auto normals = normal_subgroups(g);
    auto contains = [&](const ElementSet& s) {
        return std::any_of(normals.begin(), normals.end(), [&](const ElementSet& t) { return t.bits == s.bits; });
    };
    CHECK(n1.bits != n2.bits);
    CHECK(contains(n1));
    CHECK(contains(n2));
    CHECK(normals.front().size() == 1);
    CHECK(normals.back().size() == g.order());
    for (const auto& n : normals) {
        CHECK(is_subgroup_set(g, n.bits));
        CHECK(is_normal_set(g, n.bits));
    }
}

TEST_CASE("Q8 has exactly six normal subgroups, found independently", "[grouptheory]") {
    FiniteGroup q8 = testutil::build("Q8");
    // brute force: closures of all element pairs, then a normality filter
    std::set<Bits> subs;
    for (std::uint32_t a = 0; a < q8.order(); ++a)
        for (std::uint32_t b = 0; b < q8.order(); ++b) subs.insert(subgroup_closure(q8, {elem(a), elem(b)}).bits);
    std::size_t normal_count = 0;
    for (const auto& s : subs)
        if (is_normal_set(q8, s)) ++normal_count;
    CHECK(normal_count == 6);
    CHECK(normal_subgroups(q8).size() == 6);
}

TEST_CASE("monolith", "[grouptheory]") {
    FiniteGroup g49 = testutil::build("G(32,49)");
    ElementSet m = monolith(g49);
    CHECK(m.size() == 2);
    CHECK(m.bits.test(g49.generator(5)));
    CHECK(is_monolithic(g49));

    CHECK_FALSE(is_monolithic(testutil::build("G(64,199)")));
    // a simple group is its own monolith
    CHECK(monolith(testutil::z2()).size() == 2);

    // containment in every nontrivial normal subgroup
    for (const char* label : {"G(32,49)", "G(96,202)", "S4"}) {
        FiniteGroup g = testutil::build(label);
        ElementSet mg = monolith(g);
        for (const auto& n : normal_subgroups(g))
            if (n.size() > 1) CHECK(mg.bits.subset_of(n.bits));
    }
}

TEST_CASE("monolith of a monolithic group with nontrivial center has prime order", "[grouptheory]") {
    for (const auto& r : data::catalog_rows) {
        FiniteGroup g = testutil::build(r.label);
        if (!is_monolithic(g) || center(g).size() == 1) continue;
        std::uint32_t m = monolith(g).size();
        INFO(r.label);
        bool prime = m >= 2;
        for (std::uint32_t d = 2; d * d <= m; ++d)
            if (m % d == 0) prime = false;
        CHECK(prime);
    }
}

TEST_CASE("quotients reach their reference targets", "[grouptheory]") {
    FiniteGroup g224 = testutil::build("G(96,224)");
    QuotientMap q = quotient(g224, subgroup_closure(g224, {g224.generator(6)}));
    REQUIRE(q.target.order() == 32);
    CHECK(is_isomorphic(q.target, testutil::build("G(32,49)")).has_value());

    FiniteGroup g201 = testutil::build("G(64,201)");
    QuotientMap q2 = quotient(g201, subgroup_closure(g201, {g201.mul(g201.generator(5), g201.generator(6))}));
    CHECK(is_isomorphic(q2.target, testutil::build("G(32,50)")).has_value());

    // G/{1} is a copy of G
    QuotientMap q3 = quotient(g201, subgroup_closure(g201, {}));
    CHECK(is_isomorphic(q3.target, g201).has_value());

    // the projection is a homomorphism, exhaustively
    for (std::uint32_t a = 0; a < g224.order(); ++a)
        for (std::uint32_t b = 0; b < g224.order(); ++b)
            REQUIRE(q.proj[g224.mul(elem(a), elem(b))] == q.target.mul(q.proj[a], q.proj[b]));
}

TEST_CASE("quotient rejects bad kernels", "[grouptheory]") {
    FiniteGroup s4 = testutil::build("S4");
    // <x1> is a non-normal order-2 subgroup of S4
    ElementSet t = subgroup_closure(s4, {s4.generator(1)});
    CHECK_THROWS_WITH(quotient(s4, t), Catch::Contains("not normal"));
    Bits notsub(s4.order());
    notsub.set(0);
    notsub.set(s4.generator(2));
    CHECK_THROWS_WITH(quotient(s4, ElementSet(notsub)), Catch::Contains("not a subgroup"));
}

TEST_CASE("isomorphism testing", "[grouptheory]") {
    FiniteGroup g200 = testutil::build("G(64,200)");
    QuotientMap q = quotient(g200, subgroup_closure(g200, {g200.generator(6)}));
    FiniteGroup g50 = testutil::build("G(32,50)");
    auto iso = is_isomorphic(q.target, g50);
    REQUIRE(iso.has_value());
    // the returned map is a bijective homomorphism
    std::set<elem> image(iso->begin(), iso->end());
    CHECK(image.size() == g50.order());
    for (std::uint32_t a = 0; a < q.target.order(); ++a)
        for (std::uint32_t b = 0; b < q.target.order(); ++b)
            REQUIRE((*iso)[q.target.mul(elem(a), elem(b))] == g50.mul((*iso)[a], (*iso)[b]));

    FiniteGroup g49 = testutil::build("G(32,49)");
    CHECK_FALSE(is_isomorphic(g49, g50).has_value());
    // independent reason: the order-2 element counts differ
    auto count_invol = [](const FiniteGroup& g) {
        int c = 0;
        for (std::uint32_t a = 0; a < g.order(); ++a) c += g.order_of(elem(a)) == 2;
        return c;
    };
    CHECK(count_invol(g49) != count_invol(g50));

    CHECK(is_isomorphic(g49, g49).has_value());
    CHECK_FALSE(is_isomorphic(g49, testutil::build("G(64,199)")).has_value());
}

TEST_CASE("automorphism groups of small groups", "[grouptheory]") {
    CHECK(automorphism_group(testutil::z2()).order() == 1);
    AutGroup aq8 = automorphism_group(testutil::build("Q8"));
    CHECK(aq8.order() == 24);
    AutGroup ad4 = automorphism_group(testutil::build("D4"));
    CHECK(ad4.order() == 8);

    // every listed element is an automorphism; the list is closed under
    // composition (full check at this size)
    FiniteGroup q8 = testutil::build("Q8");
    std::set<Perm> all(aq8.elements.begin(), aq8.elements.end());
    for (const auto& p : aq8.elements) {
        CHECK(p[0] == 0);
        for (std::uint32_t a = 0; a < q8.order(); ++a)
            for (std::uint32_t b = 0; b < q8.order(); ++b) REQUIRE(p[q8.mul(elem(a), elem(b))] == q8.mul(p[a], p[b]));
        for (const auto& q : aq8.elements) {
            Perm c(q8.order());
            for (std::uint32_t x = 0; x < q8.order(); ++x) c[x] = p[q[x]];
            CHECK(all.count(c) == 1);
        }
    }

    // the generator sublist generates the whole list
    std::set<Perm> closure;
    Perm id(q8.order());
    for (std::uint32_t i = 0; i < q8.order(); ++i) id[i] = elem(i);
    closure.insert(id);
    std::vector<Perm> work{id};
    for (std::size_t i = 0; i < work.size(); ++i)
        for (const auto& gen : aq8.generators) {
            Perm c(q8.order());
            for (std::uint32_t x = 0; x < q8.order(); ++x) c[x] = work[i][gen[x]];
            if (closure.insert(c).second) work.push_back(c);
        }
    CHECK(closure.size() == aq8.order());
}

TEST_CASE("automorphism group of G(32,49) has order 1152", "[grouptheory]") {
    FiniteGroup g = testutil::build("G(32,49)");
    AutGroup aut = automorphism_group(g);
    CHECK(aut.order() == 1152);
    // sampled closure check
    std::mt19937 rng(7);
    for (int t = 0; t < 50; ++t) {
        const Perm& p = aut.elements[rng() % aut.elements.size()];
        const Perm& q = aut.elements[rng() % aut.elements.size()];
        Perm c(g.order());
        for (std::uint32_t x = 0; x < g.order(); ++x) c[x] = p[q[x]];
        CHECK(std::binary_search(aut.elements.begin(), aut.elements.end(), c));
    }
}

TEST_CASE("automorphism order cap", "[grouptheory]") {
    CHECK_THROWS_AS(automorphism_group(testutil::z2pow8()), std::invalid_argument);
}
