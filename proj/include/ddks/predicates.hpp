#pragma once

#include <optional>
#include <string>

#include "ddks/group.hpp"
#include "ddks/grouptheory.hpp"

namespace ddks {

enum class CctStatus { NotApplicable, Cct, NotCct };

/// Witness for a CCT failure: non-central x, y, z with [x,y] = [y,z] = 1 but
/// [x,z] != 1.
struct CctWitness {
    elem x, y, z;
};

struct CctResult {
    CctStatus status = CctStatus::NotApplicable;
    std::optional<CctWitness> witness; // present iff NotCct
    bool is_cct() const { return status == CctStatus::Cct; }
};

/// Commutativity is transitive on non-central elements iff every non-central
/// element has an abelian centralizer; that is the test run here. Abelian
/// input yields NotApplicable so catalog sweeps can run unconditionally.
inline CctResult is_cct(const FiniteGroup& g) {
    if (is_abelian(g)) return {CctStatus::NotApplicable, std::nullopt};
    Bits z = center(g).bits;
    for (std::uint32_t y = 0; y < g.order(); ++y) {
        if (z.test(y)) continue;
        auto c = centralizer(g, elem(y)).bits.to_list();
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j)
                if (g.mul(c[i], c[j]) != g.mul(c[j], c[i])) {
                    // a, b commute with y but not with each other; both are
                    // automatically non-central
                    return {CctStatus::NotCct, CctWitness{c[i], elem(y), c[j]}};
                }
    }
    return {CctStatus::Cct, std::nullopt};
}

/// Extra-special p-group test: |G| a power of the prime p, Z(G) of order p,
/// and G/Z(G) a nontrivial elementary abelian p-group.
inline bool is_extraspecial(const FiniteGroup& g) {
    std::uint32_t n = g.order();
    if (n < 8) return false;
    std::uint32_t p = 2;
    while (n % p != 0) ++p;
    std::uint32_t m = n;
    while (m % p == 0) m /= p;
    if (m != 1) return false; // not a p-group
    Bits z = center(g).bits;
    if (z.count() != p) return false;
    for (std::uint32_t a = 0; a < g.order(); ++a) {
        if (!z.test(g.pow(elem(a), p))) return false;
        for (std::uint32_t b = a + 1; b < g.order(); ++b)
            if (!z.test(g.commutator(elem(a), elem(b)))) return false;
    }
    return true;
}

/// Length of the lower central series down to {1}; nullopt when the series
/// stabilizes above the trivial subgroup.
inline std::optional<int> nilpotency_class(const FiniteGroup& g) {
    Bits cur(g.order());
    for (std::uint32_t a = 0; a < g.order(); ++a) cur.set(a);
    int cls = 0;
    while (cur.count() > 1) {
        Bits vals(g.order());
        cur.for_each([&](std::uint32_t x) {
            for (std::uint32_t a = 0; a < g.order(); ++a) vals.set(g.commutator(elem(x), elem(a)));
        });
        Bits next = subgroup_closure(g, vals.to_list()).bits;
        if (next == cur) return std::nullopt;
        cur = std::move(next);
        ++cls;
    }
    return cls;
}

/// Screening profile consolidating the predicates.
struct GroupProfile {
    bool is_abelian = false;
    CctStatus cct = CctStatus::NotApplicable;
    bool is_monolithic = false;
    std::uint32_t monolith_order = 0;
    bool is_extraspecial = false;
    std::optional<int> nilpotency; // nullopt = non-nilpotent
    std::uint32_t center_order = 0;
    std::uint32_t derived_order = 0;
    std::optional<std::uint64_t> aut_order;

    std::string nilpotency_str() const {
        return nilpotency ? std::to_string(*nilpotency) : std::string("non-nilpotent");
    }
};

inline GroupProfile compute_profile(const FiniteGroup& g, std::optional<std::uint64_t> aut_order = std::nullopt) {
    GroupProfile p;
    p.is_abelian = is_abelian(g);
    p.cct = is_cct(g).status;
    ElementSet mon = monolith(g);
    p.is_monolithic = mon.size() > 1;
    p.monolith_order = p.is_monolithic ? mon.size() : 0;
    p.is_extraspecial = is_extraspecial(g);
    p.nilpotency = nilpotency_class(g);
    p.center_order = center(g).size();
    p.derived_order = derived_subgroup(g).size();
    p.aut_order = aut_order;
    return p;
}

} // namespace ddks
