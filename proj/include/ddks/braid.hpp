#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ddks/group.hpp"
#include "ddks/grouptheory.hpp"
#include "ddks/word.hpp"

namespace ddks {

// Generator slot layout for genus b, matching the tuple order
//   (r_11, t_11, ..., r_1b, t_1b, r_21, t_21, ..., r_2b, t_2b, z).
// Slots are 0-based; words over the slots use 1-based letters so that Word
// and FiniteGroup::eval_word can be reused unchanged.

inline int slot_r1(int b, int j) { (void)b; return 2 * (j - 1); }
inline int slot_t1(int b, int j) { (void)b; return 2 * (j - 1) + 1; }
inline int slot_r2(int b, int j) { return 2 * b + 2 * (j - 1); }
inline int slot_t2(int b, int j) { return 2 * b + 2 * (j - 1) + 1; }
inline int slot_z(int b) { return 4 * b; }

inline std::string slot_name(int b, int slot) {
    if (slot == slot_z(b)) return "z";
    int row = slot < 2 * b ? 1 : 2;
    int off = slot - (row == 1 ? 0 : 2 * b);
    return std::string(off % 2 == 0 ? "r" : "t") + std::to_string(row) + std::to_string(off / 2 + 1);
}

/// A relation LHS = RHS over the 4b+1 tuple slots.
struct Relation {
    std::string label;
    Word lhs, rhs;
};

struct RelationSchema {
    int b = 2;
    std::vector<Relation> relators; // S1, S2, R..., T...
};

namespace detail {

inline void append_gen(Word& w, int slot, int exp) { w.letters.push_back({slot + 1, exp}); }

// [a^ea, b^eb] spelled out literally as a^ea b^eb a^-ea b^-eb
inline void append_comm(Word& w, int sa, int ea, int sb, int eb) {
    append_gen(w, sa, ea);
    append_gen(w, sb, eb);
    append_gen(w, sa, -ea);
    append_gen(w, sb, -eb);
}

} // namespace detail

/// The defining relation schema of the genus-b two-strand pure surface braid
/// group, in commutator form. Specializing b = 2 yields exactly the 22
/// relations S1, S2, R1..R10, T1..T10.
inline RelationSchema relation_schema(int b) {
    using namespace detail;
    if (b < 2) throw std::invalid_argument("relation_schema: genus must be >= 2");
    RelationSchema sch;
    sch.b = b;
    const int z = slot_z(b);

    {
        // [r_1b^-1, t_1b^-1] t_1b^-1 ... [r_11^-1, t_11^-1] t_11^-1 (t_11 ... t_1b) = z
        Relation s1;
        s1.label = "S1";
        for (int j = b; j >= 1; --j) {
            append_comm(s1.lhs, slot_r1(b, j), -1, slot_t1(b, j), -1);
            append_gen(s1.lhs, slot_t1(b, j), -1);
        }
        for (int j = 1; j <= b; ++j) append_gen(s1.lhs, slot_t1(b, j), 1);
        append_gen(s1.rhs, z, 1);
        sch.relators.push_back(std::move(s1));
    }
    {
        // [r_21^-1, t_21] t_21 ... [r_2b^-1, t_2b] t_2b (t_2b^-1 ... t_21^-1) = z^-1
        Relation s2;
        s2.label = "S2";
        for (int j = 1; j <= b; ++j) {
            append_comm(s2.lhs, slot_r2(b, j), -1, slot_t2(b, j), 1);
            append_gen(s2.lhs, slot_t2(b, j), 1);
        }
        for (int j = b; j >= 1; --j) append_gen(s2.lhs, slot_t2(b, j), -1);
        append_gen(s2.rhs, z, -1);
        sch.relators.push_back(std::move(s2));
    }

    int rn = 0;
    for (int j = 1; j <= b; ++j) {
        for (int k = b; k >= 1; --k) {
            Relation r;
            r.label = "R" + std::to_string(++rn);
            append_comm(r.lhs, slot_r1(b, j), 1, slot_r2(b, k), 1);
            if (j > k) {
                // z^-1 r_2k r_2j^-1 z r_2j r_2k^-1
                append_gen(r.rhs, z, -1);
                append_gen(r.rhs, slot_r2(b, k), 1);
                append_gen(r.rhs, slot_r2(b, j), -1);
                append_gen(r.rhs, z, 1);
                append_gen(r.rhs, slot_r2(b, j), 1);
                append_gen(r.rhs, slot_r2(b, k), -1);
            }
            sch.relators.push_back(std::move(r));
        }
        for (int k = b; k >= 1; --k) {
            Relation r;
            r.label = "R" + std::to_string(++rn);
            append_comm(r.lhs, slot_r1(b, j), 1, slot_t2(b, k), 1);
            if (j == k) {
                append_gen(r.rhs, z, -1);
            } else if (j > k) {
                append_comm(r.rhs, z, -1, slot_t2(b, k), 1);
            }
            sch.relators.push_back(std::move(r));
        }
        Relation r;
        r.label = "R" + std::to_string(++rn);
        append_comm(r.lhs, slot_r1(b, j), 1, z, 1);
        append_comm(r.rhs, slot_r2(b, j), -1, z, 1);
        sch.relators.push_back(std::move(r));
    }

    int tn = 0;
    for (int j = 1; j <= b; ++j) {
        for (int k = b; k >= 1; --k) {
            Relation t;
            t.label = "T" + std::to_string(++tn);
            append_comm(t.lhs, slot_t1(b, j), 1, slot_r2(b, k), 1);
            if (j == k) {
                // t_2j^-1 z t_2j
                append_gen(t.rhs, slot_t2(b, j), -1);
                append_gen(t.rhs, z, 1);
                append_gen(t.rhs, slot_t2(b, j), 1);
            } else if (j > k) {
                append_comm(t.rhs, slot_t2(b, j), -1, z, 1);
            }
            sch.relators.push_back(std::move(t));
        }
        for (int k = b; k >= 1; --k) {
            Relation t;
            t.label = "T" + std::to_string(++tn);
            append_comm(t.lhs, slot_t1(b, j), 1, slot_t2(b, k), 1);
            if (j == k) {
                append_comm(t.rhs, slot_t2(b, j), -1, z, 1);
            } else if (j > k) {
                // t_2j^-1 z t_2j z^-1 t_2k z t_2j^-1 z^-1 t_2j t_2k^-1
                append_gen(t.rhs, slot_t2(b, j), -1);
                append_gen(t.rhs, z, 1);
                append_gen(t.rhs, slot_t2(b, j), 1);
                append_gen(t.rhs, z, -1);
                append_gen(t.rhs, slot_t2(b, k), 1);
                append_gen(t.rhs, z, 1);
                append_gen(t.rhs, slot_t2(b, j), -1);
                append_gen(t.rhs, z, -1);
                append_gen(t.rhs, slot_t2(b, j), 1);
                append_gen(t.rhs, slot_t2(b, k), -1);
            }
            sch.relators.push_back(std::move(t));
        }
        Relation t;
        t.label = "T" + std::to_string(++tn);
        append_comm(t.lhs, slot_t1(b, j), 1, z, 1);
        append_comm(t.rhs, slot_t2(b, j), -1, z, 1);
        sch.relators.push_back(std::move(t));
    }

    return sch;
}

/// An ordered (4b+1)-tuple of elements of a specific group, candidate
/// prestructure or structure. n is the order of the final entry z.
struct StructureTuple {
    int b = 2;
    std::vector<elem> entries; // length 4b+1, tuple order as above
    int n = 0;

    static StructureTuple of(const FiniteGroup& g, int b, std::vector<elem> entries) {
        StructureTuple t;
        t.b = b;
        t.entries = std::move(entries);
        if (int(t.entries.size()) != 4 * b + 1)
            throw std::invalid_argument("tuple must have 4b+1 entries");
        t.n = g.order_of(t.entries.back());
        return t;
    }
};

enum class Require { Prestructure, Structure };

struct RelationCheck {
    std::string label;
    elem lhs_value, rhs_value;
    bool pass;
};

struct VerifyReport {
    std::vector<RelationCheck> relations;
    bool order_ok = false;      // o(z) == n >= 2
    bool generation_ok = false; // structures only
    bool generation_checked = false;
    bool pass = false;
};

/// Ground-truth verifier: evaluates every relator of the schema literally on
/// the tuple via element arithmetic. Prestructure mode (genus 2 only) skips
/// the two surface relations and the generation requirement.
inline VerifyReport verify_tuple(const FiniteGroup& g, const StructureTuple& t, Require require) {
    if (int(t.entries.size()) != 4 * t.b + 1)
        throw std::invalid_argument("verify_tuple: tuple has " + std::to_string(t.entries.size()) + " entries, expected " + std::to_string(4 * t.b + 1));
    if (require == Require::Prestructure && t.b != 2)
        throw std::invalid_argument("verify_tuple: prestructures are a genus-2 notion");
    for (elem e : t.entries) g.check_index(e, "verify_tuple");

    RelationSchema sch = relation_schema(t.b);
    VerifyReport rep;
    rep.order_ok = t.n >= 2 && g.order_of(t.entries.back()) == t.n;
    bool all_rel = true;
    for (const auto& rel : sch.relators) {
        if (require == Require::Prestructure && (rel.label == "S1" || rel.label == "S2")) continue;
        elem l = g.eval_word(rel.lhs, t.entries);
        elem r = g.eval_word(rel.rhs, t.entries);
        bool ok = l == r;
        all_rel = all_rel && ok;
        rep.relations.push_back({rel.label, l, r, ok});
    }
    rep.pass = all_rel && rep.order_ok;
    if (require == Require::Structure) {
        rep.generation_checked = true;
        rep.generation_ok = subgroup_closure(g, t.entries).size() == g.order();
        rep.pass = rep.pass && rep.generation_ok;
    }
    return rep;
}

/// All entries other than z must be non-central; the relations already force
/// this, so a false return signals an internal inconsistency.
inline bool noncentrality_check(const FiniteGroup& g, const StructureTuple& t) {
    Bits z = center(g).bits;
    for (std::size_t i = 0; i + 1 < t.entries.size(); ++i)
        if (z.test(t.entries[i])) return false;
    return true;
}

} // namespace ddks
