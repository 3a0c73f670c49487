#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ddks/braid.hpp"
#include "ddks/group.hpp"
#include "ddks/grouptheory.hpp"
#include "ddks/search.hpp"

namespace ddks {

struct LiftReport {
    std::string group_label;
    std::string base_label;
    std::uint32_t kernel_order = 0;
    std::uint64_t lift_multiplicity = 0;            // |N|^8 lifts per base tuple
    std::uint64_t generating_lifts_per_tuple = 0;   // |N|^8 - 1, verified on samples
    std::uint64_t trivial_lift_stabilizer_order = 0;
    std::uint64_t sampled_tuples_classified = 0;    // base tuples with all lifts classified
    std::uint64_t sampled_lift_checks = 0;          // random lifts revalidated by the braid verifier
    std::uint64_t cross_check_total = 0;            // independent factorized total on G
    SearchReport prestructures;
    SearchReport structures;
    std::vector<std::string> notes;
};

/// Derives the exact prestructure and structure counts of G from exact
/// results on the quotient G/N, for a central kernel N of order coprime to
/// |G/N|. Every step of the arithmetic is backed by a computation:
///
///   - lifts of a quotient prestructure are prestructures (the relations are
///     insensitive to central multipliers on the eight non-z entries, and z
///     is pinned by R4); sampled lifts are revalidated by the independent
///     relation verifier,
///   - generating tuples have trivial stabilizer, and the non-generating
///     lifts are exactly the tuples inside the unique coprime complement,
///     whose pointwise fixator in Aut(G) is computed by direct scan,
///   - the grand total is cross-checked against the factorized
///     candidate-set count run directly on G.
inline LiftReport count_via_lifting(const FiniteGroup& g, const ElementSet& kernel,
                                    const FiniteGroup& base, const ExactSearchResult& base_result,
                                    const AutGroup& aut_g, const SearchOptions& opts,
                                    std::uint64_t min_sampled_lift_checks = 10000) {
    LiftReport lr;
    lr.group_label = g.label();
    lr.base_label = base.label();

    // --- preconditions, each checked on the actual tables ---
    if (!is_subgroup_set(g, kernel.bits) || !is_normal_set(g, kernel.bits))
        throw std::invalid_argument("count_via_lifting: kernel is not a normal subgroup");
    if (!kernel.bits.subset_of(center(g).bits))
        throw std::invalid_argument("count_via_lifting: kernel is not central");
    const std::uint32_t nk = kernel.size();
    const std::uint32_t nh = g.order() / nk;
    {
        Bits meet = derived_subgroup(g).bits & kernel.bits;
        if (meet.count() != 1)
            throw std::invalid_argument("count_via_lifting: kernel meets the derived subgroup, z orders would not be preserved");
    }
    if (std::gcd(nk, nh) != 1)
        throw std::invalid_argument("count_via_lifting: kernel order must be coprime to the quotient order");
    if (!base_result.prestructures.representatives || !base_result.structures.representatives)
        throw std::invalid_argument("count_via_lifting: base search must carry representatives");
    for (auto& [stab, cnt] : base_result.prestructures.orbit_stabilizer_histogram)
        if (stab != 1)
            throw InvariantError("count_via_lifting: base prestructure stabilizers are not all trivial");

    QuotientMap q = quotient(g, kernel);
    auto iso = is_isomorphic(base, q.target);
    if (!iso) throw std::invalid_argument("count_via_lifting: quotient is not isomorphic to the declared base group");

    // section: least preimage of each base element under proj . iso
    std::vector<elem> section(base.order());
    {
        std::vector<bool> done(base.order(), false);
        std::vector<elem> iso_inv(q.target.order());
        for (std::uint32_t h = 0; h < base.order(); ++h) iso_inv[(*iso)[h]] = elem(h);
        for (std::uint32_t x = 0; x < g.order(); ++x) {
            elem h = iso_inv[q.proj[x]];
            if (!done[h]) {
                done[h] = true;
                section[h] = elem(x);
            }
        }
    }
    std::vector<elem> kernel_elems = kernel.bits.to_list();
    const std::uint64_t m = [&] {
        std::uint64_t v = 1;
        for (int i = 0; i < 8; ++i) v *= nk;
        return v;
    }();
    lr.kernel_order = nk;
    lr.lift_multiplicity = m;

    // unique complement of the kernel: the subgroup generated by all
    // elements of order coprime to |N|; characteristic, hence the only one
    Bits comp_seed(g.order());
    for (std::uint32_t x = 0; x < g.order(); ++x)
        if (std::gcd<std::uint64_t>(g.order_of(elem(x)), nk) == 1) comp_seed.set(x);
    ElementSet complement = subgroup_closure(g, comp_seed.to_list());
    if (complement.size() != nh || (complement.bits & kernel.bits).count() != 1)
        throw std::invalid_argument("count_via_lifting: no characteristic complement of the kernel; this lifting route does not apply");

    // pointwise fixator of the complement inside Aut(G): the exact
    // stabilizer of every lift whose entries lie in the complement
    std::uint64_t fixator = 0;
    for (const auto& a : aut_g.elements) {
        bool fixes = true;
        complement.bits.for_each([&](std::uint32_t x) { fixes = fixes && a[x] == x; });
        if (fixes) ++fixator;
    }
    if (fixator == 0 || aut_g.elements.size() % fixator != 0)
        throw InvariantError("count_via_lifting: complement fixator does not divide |Aut|");
    lr.trivial_lift_stabilizer_order = fixator;

    const auto& base_pre_reps = *base_result.prestructures.representatives;
    const auto& base_str_reps = *base_result.structures.representatives;
    const std::uint64_t base_pre_total = base_result.prestructures.total_count;
    const std::uint64_t base_str_total = base_result.structures.total_count;

    // z of a lift is pinned by the relations; it must be the unique preimage
    // of the base z with unchanged order, and the first-row span K must be
    // the whole base group (otherwise non-generating lifts would not be
    // confined to the complement)
    Bits zset(g.order());
    bool z_central = true;
    for (const auto& rep : base_pre_reps) {
        elem zb = rep.entries[8];
        std::uint32_t matches = 0;
        elem zl = 0;
        for (elem nu : kernel_elems) {
            elem candz = g.mul(section[zb], nu);
            if (int(g.order_of(candz)) == rep.n) {
                ++matches;
                zl = candz;
            }
        }
        if (matches != 1)
            throw InvariantError("count_via_lifting: z does not lift uniquely with its order");
        zset.set(zl);
        z_central = z_central && center(g).bits.test(zl);
        ElementSet k = subgroup_closure(base, {rep.entries[0], rep.entries[1], rep.entries[2], rep.entries[3]});
        if (k.size() != base.order())
            throw InvariantError("count_via_lifting: a base prestructure has K smaller than the base group");
    }

    // --- sampled verification of the per-tuple lift arithmetic ---
    auto lift_tuple = [&](const StructureTuple& rep, const std::vector<int>& nu) {
        StructureTuple t;
        t.b = 2;
        t.entries.resize(9);
        for (int i = 0; i < 8; ++i) t.entries[i] = g.mul(section[rep.entries[i]], kernel_elems[std::size_t(nu[i])]);
        elem zl = 0;
        for (elem nuz : kernel_elems)
            if (int(g.order_of(g.mul(section[rep.entries[8]], nuz))) == rep.n) zl = g.mul(section[rep.entries[8]], nuz);
        t.entries[8] = zl;
        t.n = rep.n;
        return t;
    };

    std::mt19937 rng(0xD0CA1u);
    auto sample_indices = [&](std::size_t count, std::size_t of) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < count && i < of; ++i)
            idx.push_back(i == 0 ? 0 : (i == 1 ? of - 1 : rng() % of));
        return idx;
    };

    // classify every lift of a sample of base tuples by generation of G
    std::uint64_t expected_generating = m - 1;
    for (bool structures : {false, true}) {
        const auto& reps = structures ? base_str_reps : base_pre_reps;
        if (reps.empty()) continue;
        for (std::size_t ri : sample_indices(12, reps.size())) {
            const auto& rep = reps[ri];
            std::uint64_t generating = 0, inside_complement = 0;
            std::vector<int> nu(8, 0);
            for (std::uint64_t code = 0; code < m; ++code) {
                std::uint64_t c = code;
                for (int i = 0; i < 8; ++i) {
                    nu[i] = int(c % nk);
                    c /= nk;
                }
                StructureTuple t = lift_tuple(rep, nu);
                ElementSet span = subgroup_closure(g, t.entries);
                if (span.size() == g.order()) {
                    ++generating;
                } else {
                    ++inside_complement;
                    if (!span.bits.subset_of(complement.bits))
                        throw InvariantError("count_via_lifting: non-generating lift escapes the complement");
                    // stabilizer of the non-generating lift must be exactly
                    // the complement fixator
                    std::uint64_t stab = 0;
                    for (const auto& a : aut_g.elements) {
                        bool fixed = true;
                        for (elem e : t.entries) fixed = fixed && a[e] == e;
                        if (fixed) ++stab;
                    }
                    if (stab != fixator)
                        throw InvariantError("count_via_lifting: trivial-lift stabilizer is not the complement fixator");
                }
            }
            if (generating != expected_generating || inside_complement != 1)
                throw InvariantError("count_via_lifting: lift classification of a sampled base tuple is not (m-1) generating + 1 inside the complement");
            ++lr.sampled_tuples_classified;
        }
    }

    // random lifts must pass the independent relation verifier
    std::uint64_t checks = 0;
    while (!base_pre_reps.empty() && checks < min_sampled_lift_checks) {
        bool structures = !base_str_reps.empty() && (rng() & 1);
        const auto& reps = structures ? base_str_reps : base_pre_reps;
        const auto& rep = reps[rng() % reps.size()];
        std::vector<int> nu(8);
        bool trivial = true;
        for (auto& v : nu) {
            v = int(rng() % nk);
            trivial = trivial && v == 0;
        }
        StructureTuple t = lift_tuple(rep, nu);
        VerifyReport vr = verify_tuple(g, t, structures && !trivial ? Require::Structure : Require::Prestructure);
        if (!vr.pass) throw InvariantError("count_via_lifting: a sampled lift failed the relation verifier");
        ++checks;
    }
    lr.sampled_lift_checks = checks;
    lr.generating_lifts_per_tuple = expected_generating;

    // --- derived counts ---
    const std::uint64_t aut_order = aut_g.elements.size();
    auto exact_div = [&](std::uint64_t a, std::uint64_t b, const char* what) {
        if (b == 0 || a % b != 0) throw InvariantError(std::string("count_via_lifting: ") + what + " is not divisible");
        return a / b;
    };

    lr.prestructures.label = lr.structures.label = g.label();
    lr.prestructures.kind = SearchKind::Prestructures;
    lr.structures.kind = SearchKind::Structures;
    lr.prestructures.mode = lr.structures.mode = SearchMode::Lift;

    lr.prestructures.total_count = base_pre_total * m;
    std::uint64_t gen_orbits = exact_div(base_pre_total * (m - 1), aut_order, "generating lift count");
    std::uint64_t nongen_orbits = exact_div(base_pre_total, aut_order / fixator, "complement lift count");
    lr.prestructures.orbit_count = gen_orbits + nongen_orbits;
    if (gen_orbits) lr.prestructures.orbit_stabilizer_histogram[1] += gen_orbits;
    if (nongen_orbits) lr.prestructures.orbit_stabilizer_histogram[fixator] += nongen_orbits;

    lr.structures.total_count = base_str_total * (m - 1);
    lr.structures.orbit_count = exact_div(lr.structures.total_count, aut_order, "structure lift count");
    if (lr.structures.orbit_count) lr.structures.orbit_stabilizer_histogram[1] = lr.structures.orbit_count;

    for (int n : base_result.prestructures.n_values_seen) lr.prestructures.n_values_seen.insert(n);
    for (int n : base_result.structures.n_values_seen) lr.structures.n_values_seen.insert(n);
    lr.prestructures.z_always_central = lr.structures.z_always_central = z_central;

    // K-certificate on G: the four first-row entries of any lift are base
    // first rows times kernel elements, so sweep every base representative
    // against every first-row multiplier pattern
    {
        Bits zbits = center(g).bits;
        bool cert = true;
        std::vector<elem> row(4);
        for (const auto& rep : base_pre_reps) {
            std::uint64_t patterns = std::uint64_t(nk) * nk * nk * nk;
            for (std::uint64_t code = 0; code < patterns && cert; ++code) {
                std::uint64_t c = code;
                for (int i = 0; i < 4; ++i) {
                    row[i] = g.mul(section[rep.entries[i]], kernel_elems[c % nk]);
                    c /= nk;
                }
                Bits ck = centralizer(g, elem(row[0])).bits;
                ck &= centralizer(g, elem(row[1])).bits;
                ck &= centralizer(g, elem(row[2])).bits;
                ck &= centralizer(g, elem(row[3])).bits;
                cert = ck == zbits;
            }
            if (!cert) break;
        }
        lr.prestructures.k_centralizer_always_center = lr.structures.k_centralizer_always_center = cert;
    }

    // independent cross-check of the grand total on G itself
    lr.cross_check_total = prestructure_total_only(g, opts.n_filter, opts.worker_count);
    if (lr.cross_check_total != lr.prestructures.total_count)
        throw InvariantError(g.label() + ": lifted prestructure total " + std::to_string(lr.prestructures.total_count) + " disagrees with the factorized count " + std::to_string(lr.cross_check_total));
    lr.notes.push_back("grand total cross-checked against the factorized candidate-set count on " + g.label());
    lr.notes.push_back(std::to_string(lr.sampled_tuples_classified) + " base tuples had all " + std::to_string(m) + " lifts classified by generation; " + std::to_string(checks) + " random lifts revalidated relation by relation");

    lr.prestructures.notes = lr.notes;
    lr.structures.notes = lr.notes;
    return lr;
}

} // namespace ddks
