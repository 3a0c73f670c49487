#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "ddks/bits.hpp"
#include "ddks/group.hpp"

namespace ddks {

using elem = FiniteGroup::elem;
using Perm = std::vector<elem>; // length-N permutation of element indices

inline bool is_subgroup_set(const FiniteGroup& g, const Bits& s) {
    if (!s.test(0)) return false;
    bool ok = true;
    s.for_each([&](std::uint32_t a) {
        if (!ok) return;
        if (!s.test(g.inv(elem(a)))) ok = false;
        s.for_each([&](std::uint32_t b) {
            if (ok && !s.test(g.mul(elem(a), elem(b)))) ok = false;
        });
    });
    return ok;
}

inline bool is_normal_set(const FiniteGroup& g, const Bits& s) {
    for (std::uint32_t a = 0; a < g.order(); ++a) {
        bool ok = true;
        s.for_each([&](std::uint32_t x) {
            if (ok && !s.test(g.conjugate(elem(a), elem(x)))) ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

inline ElementSet center(const FiniteGroup& g) {
    Bits z(g.order());
    for (std::uint32_t a = 0; a < g.order(); ++a) {
        bool central = true;
        for (std::uint32_t b = 0; central && b < g.order(); ++b)
            central = g.mul(elem(a), elem(b)) == g.mul(elem(b), elem(a));
        if (central) z.set(a);
    }
    return ElementSet(std::move(z), true, true);
}

inline ElementSet centralizer(const FiniteGroup& g, elem a) {
    g.check_index(a, "centralizer");
    Bits c(g.order());
    for (std::uint32_t x = 0; x < g.order(); ++x)
        if (g.mul(elem(x), a) == g.mul(a, elem(x))) c.set(x);
    return ElementSet(std::move(c), true, false);
}

inline ElementSet centralizer(const FiniteGroup& g, const Bits& s) {
    if (s.empty()) throw std::invalid_argument("centralizer: empty set");
    Bits c(g.order());
    for (std::uint32_t x = 0; x < g.order(); ++x) {
        bool commutes = true;
        s.for_each([&](std::uint32_t a) {
            if (commutes && g.mul(elem(x), elem(a)) != g.mul(elem(a), elem(x))) commutes = false;
        });
        if (commutes) c.set(x);
    }
    return ElementSet(std::move(c), true, false);
}

inline ElementSet subgroup_closure(const FiniteGroup& g, std::span<const elem> gens) {
    Bits s(g.order());
    s.set(0);
    std::vector<elem> work{0};
    for (elem x : gens) {
        g.check_index(x, "subgroup_closure");
        if (!s.test(x)) {
            s.set(x);
            work.push_back(x);
        }
    }
    std::vector<elem> gen_list(gens.begin(), gens.end());
    for (std::size_t i = 0; i < work.size(); ++i)
        for (elem x : gen_list) {
            elem p = g.mul(work[i], x);
            if (!s.test(p)) {
                s.set(p);
                work.push_back(p);
            }
        }
    return ElementSet(std::move(s), true, false);
}

inline ElementSet subgroup_closure(const FiniteGroup& g, std::initializer_list<elem> gens) {
    return subgroup_closure(g, std::span<const elem>(gens.begin(), gens.size()));
}

inline ElementSet derived_subgroup(const FiniteGroup& g) {
    Bits vals(g.order());
    for (std::uint32_t a = 0; a < g.order(); ++a)
        for (std::uint32_t b = 0; b < g.order(); ++b) vals.set(g.commutator(elem(a), elem(b)));
    ElementSet d = subgroup_closure(g, vals.to_list());
    d.is_normal = true;
    return d;
}

inline bool is_abelian(const FiniteGroup& g) {
    for (std::uint32_t a = 0; a < g.order(); ++a)
        for (std::uint32_t b = a + 1; b < g.order(); ++b)
            if (g.mul(elem(a), elem(b)) != g.mul(elem(b), elem(a))) return false;
    return true;
}

/// Orbits of the conjugation action, each sorted, ordered by least element.
inline std::vector<std::vector<elem>> conjugacy_classes(const FiniteGroup& g) {
    std::vector<std::vector<elem>> classes;
    Bits seen(g.order());
    for (std::uint32_t a = 0; a < g.order(); ++a) {
        if (seen.test(a)) continue;
        Bits orbit(g.order());
        for (std::uint32_t x = 0; x < g.order(); ++x) orbit.set(g.conjugate(elem(x), elem(a)));
        seen |= orbit;
        classes.push_back(orbit.to_list());
    }
    return classes;
}

/// All normal subgroups, computed by closing the normal closures of single
/// conjugacy classes under pairwise join. Includes {1} and G.
inline std::vector<ElementSet> normal_subgroups(const FiniteGroup& g) {
    if (g.order() > 512) throw std::invalid_argument("normal_subgroups: order above 512");
    auto classes = conjugacy_classes(g);
    std::set<Bits> found;
    std::vector<Bits> work;
    for (const auto& cls : classes) {
        Bits s = subgroup_closure(g, cls).bits;
        if (found.insert(s).second) work.push_back(s);
    }
    for (std::size_t i = 0; i < work.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            Bits u = work[i] | work[j];
            Bits joined = subgroup_closure(g, u.to_list()).bits;
            if (found.insert(joined).second) work.push_back(joined);
        }
    std::vector<ElementSet> out;
    for (const auto& s : found) out.emplace_back(s, true, true);
    std::sort(out.begin(), out.end(), [](const ElementSet& a, const ElementSet& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.bits < b.bits;
    });
    return out;
}

/// Intersection of all nontrivial normal subgroups; G is monolithic iff the
/// result is nontrivial. For a simple group this is G itself.
inline ElementSet monolith(const FiniteGroup& g) {
    Bits m(g.order());
    for (std::uint32_t a = 0; a < g.order(); ++a) m.set(a);
    for (const auto& n : normal_subgroups(g))
        if (n.size() > 1) m &= n.bits;
    return ElementSet(std::move(m), true, true);
}

inline bool is_monolithic(const FiniteGroup& g) { return monolith(g).size() > 1; }

struct QuotientMap {
    FiniteGroup target;
    std::vector<elem> proj; // length |G|, surjective homomorphism
};

/// Quotient of g by a normal subgroup. Cosets are indexed by their least
/// element in increasing order, so the identity coset is element 0.
inline QuotientMap quotient(const FiniteGroup& g, const ElementSet& n) {
    if (!is_subgroup_set(g, n.bits)) throw std::invalid_argument("quotient: set is not a subgroup");
    if (!is_normal_set(g, n.bits)) throw std::invalid_argument("quotient: subgroup is not normal");
    const std::uint32_t N = g.order();
    std::vector<std::int32_t> coset_of(N, -1);
    std::vector<elem> reps;
    for (std::uint32_t a = 0; a < N; ++a) {
        if (coset_of[a] >= 0) continue;
        std::int32_t id = std::int32_t(reps.size());
        reps.push_back(elem(a));
        n.bits.for_each([&](std::uint32_t x) { coset_of[g.mul(elem(a), elem(x))] = id; });
    }
    const std::uint32_t M = std::uint32_t(reps.size());
    std::vector<elem> table(std::size_t(M) * M);
    for (std::uint32_t i = 0; i < M; ++i)
        for (std::uint32_t j = 0; j < M; ++j)
            table[std::size_t(i) * M + j] = elem(coset_of[g.mul(reps[i], reps[j])]);
    QuotientMap q;
    q.target = group_from_table(g.label() + "/N" + std::to_string(n.size()), M, std::move(table));
    q.proj.resize(N);
    for (std::uint32_t a = 0; a < N; ++a) q.proj[a] = elem(coset_of[a]);
    return q;
}

struct SubgroupGroup {
    FiniteGroup group;
    std::vector<elem> to_parent; // subgroup index -> parent index
};

/// Materializes a subgroup as a standalone group (elements reindexed in
/// increasing parent order; identity stays at 0).
inline SubgroupGroup subgroup_as_group(const FiniteGroup& g, const Bits& s, const std::string& label = "") {
    if (!is_subgroup_set(g, s)) throw std::invalid_argument("subgroup_as_group: set is not a subgroup");
    SubgroupGroup out;
    out.to_parent = s.to_list();
    std::vector<std::uint32_t> idx(g.order(), 0);
    for (std::size_t i = 0; i < out.to_parent.size(); ++i) idx[out.to_parent[i]] = std::uint32_t(i);
    const std::uint32_t M = std::uint32_t(out.to_parent.size());
    std::vector<elem> table(std::size_t(M) * M);
    for (std::uint32_t i = 0; i < M; ++i)
        for (std::uint32_t j = 0; j < M; ++j)
            table[std::size_t(i) * M + j] = elem(idx[g.mul(out.to_parent[i], out.to_parent[j])]);
    out.group = group_from_table(label.empty() ? g.label() + ".sub" + std::to_string(M) : label, M, std::move(table));
    return out;
}

// ---------------------------------------------------------------------------
// isomorphisms and automorphisms
// ---------------------------------------------------------------------------

namespace detail {

/// Invariant fingerprint of an element, constant on Aut-orbits: element
/// order, conjugacy class size, centrality, derived-subgroup membership and
/// the order of the image in the abelianization.
using Fingerprint = std::tuple<int, int, int, int, int>;

inline std::vector<Fingerprint> element_fingerprints(const FiniteGroup& g) {
    Bits z = center(g).bits;
    Bits d = derived_subgroup(g).bits;
    std::vector<int> class_size(g.order(), 0);
    for (const auto& cls : conjugacy_classes(g))
        for (elem a : cls) class_size[a] = int(cls.size());
    std::vector<Fingerprint> fp(g.order());
    for (std::uint32_t a = 0; a < g.order(); ++a) {
        int ab_order = 1;
        elem x = elem(a);
        while (!d.test(x)) {
            x = g.mul(x, elem(a));
            ++ab_order;
        }
        fp[a] = {g.order_of(elem(a)), class_size[a], z.test(a) ? 1 : 0, d.test(a) ? 1 : 0, ab_order};
    }
    return fp;
}

/// Backtracking search for injective homomorphisms G -> H mapping the frame
/// generators to fingerprint-compatible images. The partial map is grown by
/// closing the Cayley graph; any collision prunes the branch, so accepted
/// leaves are bijective homomorphisms defined on all of G.
class HomSearch {
public:
    HomSearch(const FiniteGroup& g, const FiniteGroup& h) : g_(g), h_(h) {
        fp_g_ = element_fingerprints(g);
        auto fp_h = h_.order() == g_.order() ? element_fingerprints(h) : std::vector<Fingerprint>{};
        candidates_by_fp_.clear();
        for (std::uint32_t a = 0; a < fp_h.size(); ++a) candidates_by_fp_[fp_h[a]].push_back(elem(a));

        // frame: greedy generating sequence, fewest-candidates-first
        Bits closed = subgroup_closure(g_, {}).bits;
        while (closed.count() < g_.order()) {
            elem best = 0;
            std::size_t best_cand = SIZE_MAX;
            for (std::uint32_t a = 0; a < g_.order(); ++a) {
                if (closed.test(a)) continue;
                auto it = candidates_by_fp_.find(fp_g_[a]);
                std::size_t c = it == candidates_by_fp_.end() ? 0 : it->second.size();
                if (c < best_cand) {
                    best_cand = c;
                    best = elem(a);
                }
            }
            frame_.push_back(best);
            std::vector<elem> gens(frame_);
            closed = subgroup_closure(g_, gens).bits;
        }
    }

    /// Runs the search; stops after the first hit unless all is set.
    std::vector<Perm> run(bool all) {
        results_.clear();
        if (g_.order() != h_.order()) return {};
        all_ = all;
        State st;
        st.img.assign(g_.order(), -1);
        st.img[0] = 0;
        st.elems = {0};
        st.used = Bits(h_.order());
        st.used.set(0);
        descend(st, 0);
        return std::move(results_);
    }

    const std::vector<elem>& frame() const { return frame_; }

private:
    struct State {
        std::vector<std::int32_t> img;
        std::vector<elem> elems;
        std::vector<std::pair<elem, elem>> gens;
        Bits used;
    };

    bool extend(State& st, elem g_gen, elem h_gen) {
        st.gens.push_back({g_gen, h_gen});
        if (st.img[g_gen] == -1) {
            if (st.used.test(h_gen)) return false;
            st.img[g_gen] = h_gen;
            st.used.set(h_gen);
            st.elems.push_back(g_gen);
        } else if (st.img[g_gen] != std::int32_t(h_gen)) {
            return false;
        }
        for (std::size_t i = 0; i < st.elems.size(); ++i) {
            for (const auto& [gg, hh] : st.gens) {
                elem b = g_.mul(st.elems[i], gg);
                elem v = h_.mul(elem(st.img[st.elems[i]]), hh);
                if (st.img[b] == -1) {
                    if (st.used.test(v)) return false;
                    st.img[b] = v;
                    st.used.set(v);
                    st.elems.push_back(b);
                } else if (st.img[b] != std::int32_t(v)) {
                    return false;
                }
            }
        }
        return true;
    }

    void descend(const State& st, std::size_t level) {
        if (!all_ && !results_.empty()) return;
        if (level == frame_.size()) {
            Perm p(g_.order());
            for (std::uint32_t a = 0; a < g_.order(); ++a) p[a] = elem(st.img[a]);
            results_.push_back(std::move(p));
            return;
        }
        elem gen = frame_[level];
        if (st.img[gen] != -1) {
            // already determined by earlier closures
            State next = st;
            if (extend(next, gen, elem(st.img[gen]))) descend(next, level + 1);
            return;
        }
        auto it = candidates_by_fp_.find(fp_g_[gen]);
        if (it == candidates_by_fp_.end()) return;
        for (elem cand : it->second) {
            if (!all_ && !results_.empty()) return;
            if (st.used.test(cand)) continue;
            State next = st;
            if (extend(next, gen, cand)) descend(next, level + 1);
        }
    }

    const FiniteGroup& g_;
    const FiniteGroup& h_;
    std::vector<Fingerprint> fp_g_;
    std::map<Fingerprint, std::vector<elem>> candidates_by_fp_;
    std::vector<elem> frame_;
    std::vector<Perm> results_;
    bool all_ = false;
};

} // namespace detail

/// Bijective homomorphism G -> H if one exists. Cheap invariant screening
/// first, then backtracking over images of a generating sequence.
inline std::optional<Perm> is_isomorphic(const FiniteGroup& g, const FiniteGroup& h) {
    if (g.order() != h.order()) return std::nullopt;
    {
        auto fg = detail::element_fingerprints(g);
        auto fh = detail::element_fingerprints(h);
        std::sort(fg.begin(), fg.end());
        std::sort(fh.begin(), fh.end());
        if (fg != fh) return std::nullopt;
    }
    detail::HomSearch hs(g, h);
    auto res = hs.run(false);
    if (res.empty()) return std::nullopt;
    return res.front();
}

struct AutGroup {
    std::vector<Perm> elements;   // complete, sorted lexicographically
    std::vector<Perm> generators; // a generating sublist
    std::uint64_t order() const { return elements.size(); }
};

/// The full automorphism group, by backtracking over images of a generating
/// sequence with fingerprint pruning; each accepted map is a bijective
/// homomorphism on all of G by construction of the search.
inline AutGroup automorphism_group(const FiniteGroup& g, std::uint32_t cap = 128) {
    if (g.order() > cap)
        throw std::invalid_argument("automorphism_group: order " + std::to_string(g.order()) + " exceeds the cap of " + std::to_string(cap));
    detail::HomSearch hs(g, g);
    AutGroup aut;
    aut.elements = hs.run(true);
    std::sort(aut.elements.begin(), aut.elements.end());

    // greedy generating sublist with an incremental closure
    struct PermHash {
        std::size_t operator()(const Perm& p) const {
            std::size_t h = 1469598103934665603ull;
            for (elem e : p) h = (h ^ e) * 1099511628211ull;
            return h;
        }
    };
    std::unordered_set<Perm, PermHash> closed;
    std::vector<Perm> work;
    Perm id(g.order());
    for (std::uint32_t a = 0; a < g.order(); ++a) id[a] = elem(a);
    closed.insert(id);
    work.push_back(id);
    auto compose = [&](const Perm& a, const Perm& b) {
        Perm c(g.order());
        for (std::uint32_t x = 0; x < g.order(); ++x) c[x] = a[b[x]];
        return c;
    };
    for (const auto& p : aut.elements) {
        if (closed.count(p)) continue;
        aut.generators.push_back(p);
        if (closed.insert(p).second) work.push_back(p);
        for (std::size_t i = 0; i < work.size(); ++i)
            for (const auto& q : aut.generators) {
                Perm c = compose(work[i], q);
                if (closed.insert(c).second) work.push_back(std::move(c));
                c = compose(q, work[i]);
                if (closed.insert(c).second) work.push_back(std::move(c));
            }
        if (closed.size() == aut.elements.size()) break;
    }
    return aut;
}

} // namespace ddks
