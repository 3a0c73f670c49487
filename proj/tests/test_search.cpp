#include <catch2/catch.hpp>

#include "ddks/search.hpp"
#include "helpers.hpp"
#include "naive_oracle.hpp"

using namespace ddks;

namespace {

std::uint64_t hist_weight(const SearchReport& r, std::uint64_t aut_order) {
    std::uint64_t w = 0;
    for (auto& [stab, cnt] : r.orbit_stabilizer_histogram) {
        REQUIRE(aut_order % stab == 0);
        w += cnt * (aut_order / stab);
    }
    return w;
}

} // namespace

TEST_CASE("naive nested-loop oracle agrees with the factorized engine on G(32,49)", "[search][oracle]") {
    FiniteGroup g = testutil::build("G(32,49)");
    testutil::NaiveCounts naive = testutil::naive_count(g, true);
    CHECK(naive.prestructures == 5160960); // frozen from the oracle itself
    CHECK(naive.structures == 2211840);

    AutGroup aut = automorphism_group(g);
    ExactSearchResult res = exact_search(g, aut, {});
    CHECK(res.prestructures.total_count == naive.prestructures);
    CHECK(res.structures.total_count == naive.structures);
    CHECK(prestructure_total_only(g) == naive.prestructures);
}

TEST_CASE("order-32 counts match the reference tables", "[search]") {
    FiniteGroup g49 = testutil::build("G(32,49)");
    AutGroup a49 = automorphism_group(g49);
    ExactSearchResult r49 = exact_search(g49, a49, {});
    CHECK(r49.prestructures.orbit_count == 4480);
    CHECK(r49.structures.orbit_count == 1920);
    CHECK(r49.structures.total_count == 2211840);
    CHECK(r49.prestructures.n_values_seen == std::set<int>{2});
    CHECK(r49.prestructures.z_always_central);
    CHECK(r49.prestructures.k_centralizer_always_center);

    FiniteGroup g50 = testutil::build("G(32,50)");
    AutGroup a50 = automorphism_group(g50);
    ExactSearchResult r50 = exact_search(g50, a50, {});
    CHECK(r50.prestructures.orbit_count == 2688);
    CHECK(r50.structures.orbit_count == 1152);
    CHECK(r50.structures.total_count == 2211840);

    // orbit identity on every report produced here
    CHECK(hist_weight(r49.prestructures, a49.order()) == r49.prestructures.total_count);
    CHECK(hist_weight(r49.structures, a49.order()) == r49.structures.total_count);
    CHECK(hist_weight(r50.prestructures, a50.order()) == r50.prestructures.total_count);
    CHECK(hist_weight(r50.structures, a50.order()) == r50.structures.total_count);
}

TEST_CASE("Burnside lemma cross-check on both order-32 groups", "[search]") {
    for (const char* label : {"G(32,49)", "G(32,50)"}) {
        FiniteGroup g = testutil::build(label);
        AutGroup aut = automorphism_group(g);
        ExactSearchResult res = exact_search(g, aut, {});
        INFO(label);
        CHECK(burnside_prestructure_orbits(g, aut) == res.prestructures.orbit_count);
    }
}

TEST_CASE("CCT and abelian groups carry nothing", "[search]") {
    FiniteGroup q8 = testutil::build("Q8");
    AutGroup aq8 = automorphism_group(q8);
    ExactSearchResult r = exact_search(q8, aq8, {});
    CHECK(r.prestructures.total_count == 0);
    CHECK(r.structures.total_count == 0);

    FiniteGroup a = testutil::z6();
    AutGroup aa = automorphism_group(a);
    CHECK(exact_search(a, aa, {}).prestructures.total_count == 0);
}

TEST_CASE("order-96 monolithic case runs exactly", "[search]") {
    FiniteGroup g = testutil::build("G(96,202)");
    AutGroup aut = automorphism_group(g);
    ExactSearchResult res = exact_search(g, aut, {});
    CHECK(aut.order() == 192);
    CHECK(res.prestructures.orbit_count == 26880);
    CHECK(res.structures.orbit_count == 0);
    CHECK(res.prestructures.n_values_seen == std::set<int>{2});
}

TEST_CASE("n filter restricts the z orders", "[search]") {
    FiniteGroup g = testutil::build("G(32,49)");
    AutGroup aut = automorphism_group(g);
    SearchOptions opts;
    opts.n_filter = 2;
    CHECK(exact_search(g, aut, opts).prestructures.orbit_count == 4480);
    opts.n_filter = 4;
    CHECK(exact_search(g, aut, opts).prestructures.total_count == 0);
}

TEST_CASE("reports are identical for any worker count", "[search]") {
    FiniteGroup g = testutil::build("G(32,49)");
    AutGroup aut = automorphism_group(g);
    SearchOptions one, four;
    one.worker_count = 1;
    one.emit_representatives = true;
    four.worker_count = 4;
    four.emit_representatives = true;
    ExactSearchResult a = exact_search(g, aut, one);
    ExactSearchResult b = exact_search(g, aut, four);
    CHECK(a.prestructures.total_count == b.prestructures.total_count);
    CHECK(a.prestructures.orbit_count == b.prestructures.orbit_count);
    CHECK(a.prestructures.orbit_stabilizer_histogram == b.prestructures.orbit_stabilizer_histogram);
    REQUIRE(a.structures.representatives.has_value());
    REQUIRE(b.structures.representatives.has_value());
    REQUIRE(a.structures.representatives->size() == b.structures.representatives->size());
    for (std::size_t i = 0; i < a.structures.representatives->size(); ++i)
        REQUIRE((*a.structures.representatives)[i].entries == (*b.structures.representatives)[i].entries);
}

TEST_CASE("exact mode refuses orders above the cap", "[search]") {
    FiniteGroup big = testutil::z2pow8();
    AutGroup fake;
    CHECK_THROWS_AS(exact_search(big, fake, {}), std::invalid_argument);
    CHECK_THROWS_AS(prestructure_total_only(big), std::invalid_argument);
}

TEST_CASE("emitted representatives are canonical, verified, and closed under the checks", "[search]") {
    FiniteGroup g = testutil::build("G(32,50)");
    AutGroup aut = automorphism_group(g);
    SearchOptions opts;
    opts.emit_representatives = true;
    ExactSearchResult res = exact_search(g, aut, opts);
    REQUIRE(res.prestructures.representatives->size() == res.prestructures.orbit_count);
    REQUIRE(res.structures.representatives->size() == res.structures.orbit_count);

    // every structure representative also passes the prestructure check, and
    // the independent verifier accepts a sample of both kinds
    std::mt19937 rng(5);
    for (int t = 0; t < 60; ++t) {
        const auto& sp = (*res.structures.representatives)[rng() % res.structures.representatives->size()];
        CHECK(verify_tuple(g, sp, Require::Structure).pass);
        CHECK(verify_tuple(g, sp, Require::Prestructure).pass);
        const auto& pp = (*res.prestructures.representatives)[rng() % res.prestructures.representatives->size()];
        CHECK(verify_tuple(g, pp, Require::Prestructure).pass);
        CHECK(noncentrality_check(g, pp));
    }

    // reduce_mod_aut on the emitted structure representatives reproduces the
    // staged orbit data
    OrbitData od = reduce_mod_aut(g, *res.structures.representatives, aut);
    CHECK(od.orbit_count == res.structures.orbit_count);
    CHECK(od.total_weight == res.structures.total_count);
    CHECK(od.stabilizer_histogram == res.structures.orbit_stabilizer_histogram);
}

TEST_CASE("staged orbit data matches the unstaged reduction where stabilizers are nontrivial", "[search]") {
    // every prestructure orbit of G(64,134) has a stabilizer of order 2, so
    // this exercises the stabilizer accounting end to end
    FiniteGroup g = testutil::build("G(64,134)");
    AutGroup aut = automorphism_group(g);
    SearchOptions opts;
    opts.emit_representatives = true;
    ExactSearchResult res = exact_search(g, aut, opts);
    REQUIRE(res.prestructures.orbit_count == 40320);
    REQUIRE(res.prestructures.orbit_stabilizer_histogram == std::map<std::uint64_t, std::uint64_t>{{2, 40320}});
    OrbitData od = reduce_mod_aut(g, *res.prestructures.representatives, aut);
    CHECK(od.orbit_count == res.prestructures.orbit_count);
    CHECK(od.total_weight == res.prestructures.total_count);
    CHECK(od.stabilizer_histogram == res.prestructures.orbit_stabilizer_histogram);
}

TEST_CASE("reduce_mod_aut basics", "[search]") {
    FiniteGroup g = testutil::build("G(32,49)");
    AutGroup aut = automorphism_group(g);
    SearchOptions opts;
    opts.emit_representatives = true;
    ExactSearchResult res = exact_search(g, aut, opts);
    // a single tuple is one orbit whose weight is |Aut| / |stab|
    std::vector<StructureTuple> one{res.structures.representatives->front()};
    OrbitData od = reduce_mod_aut(g, one, aut);
    CHECK(od.orbit_count == 1);
    CHECK(od.total_weight * od.stabilizer_histogram.begin()->first == aut.order());
    AutGroup empty;
    CHECK_THROWS_AS(reduce_mod_aut(g, one, empty), std::invalid_argument);
}

TEST_CASE("extension obstruction: K spans G(32,49) and its centralizer is the center", "[search]") {
    FiniteGroup g = testutil::build("G(32,49)");
    AutGroup aut = automorphism_group(g);
    SearchOptions opts;
    opts.emit_representatives = true;
    ExactSearchResult res = exact_search(g, aut, opts);
    std::mt19937 rng(77);
    for (int t = 0; t < 40; ++t) {
        const auto& rep = (*res.prestructures.representatives)[rng() % res.prestructures.representatives->size()];
        ObstructionResult ob = extension_obstruction(g, rep);
        CHECK(ob.centralizer_equals_center);
        CHECK(ob.k.size() == 32);
    }
}

TEST_CASE("screen verdicts", "[search]") {
    CHECK(screen_group(testutil::z6()).verdict == ScreenVerdict::NoPrestructuresAbelian);
    CHECK(screen_group(testutil::build("Q8")).verdict == ScreenVerdict::NoPrestructuresCct);
    CHECK(screen_group(testutil::build("G(32,49)")).verdict == ScreenVerdict::SearchRequiredMonolithic);
    CHECK(screen_group(testutil::build("G(64,199)")).verdict == ScreenVerdict::SearchRequiredWithQuotients);
    // S4 is monolithic and non-CCT, so it must be searched; the search then
    // comes back empty
    CHECK(screen_group(testutil::build("S4")).verdict == ScreenVerdict::SearchRequiredMonolithic);
    CHECK(prestructure_total_only(testutil::build("S4")) == 0);
}

TEST_CASE("order 72: no order-32 quotients, negative by the quotient screen", "[search]") {
    FiniteGroup g = testutil::z3xs4();
    REQUIRE(g.order() == 72);
    ScreenResult sr = screen_group(g);
    CHECK(sr.verdict == ScreenVerdict::NoPrestructuresQuotientScreen);
    // and indeed the direct count is zero
    CHECK(prestructure_total_only(g) == 0);
}
