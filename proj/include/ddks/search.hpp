#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "ddks/braid.hpp"
#include "ddks/group.hpp"
#include "ddks/grouptheory.hpp"
#include "ddks/predicates.hpp"

namespace ddks {

/// An internal consistency check failed; callers map this to exit code 3.
struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SearchKind { Prestructures, Structures };
enum class SearchMode { Exact, Lift };

inline const char* kind_name(SearchKind k) { return k == SearchKind::Prestructures ? "prestructures" : "structures"; }

struct SearchOptions {
    SearchKind kind = SearchKind::Prestructures;
    std::optional<int> n_filter;
    SearchMode mode = SearchMode::Exact;
    int worker_count = 0; // 0 = hardware concurrency
    bool emit_representatives = false;
    std::uint32_t exact_order_cap = 128;
};

struct SearchReport {
    std::string label;
    SearchKind kind = SearchKind::Prestructures;
    SearchMode mode = SearchMode::Exact;
    std::uint64_t total_count = 0;
    std::uint64_t orbit_count = 0;
    std::map<std::uint64_t, std::uint64_t> orbit_stabilizer_histogram;
    std::set<int> n_values_seen;
    bool z_always_central = true;
    bool k_centralizer_always_center = true;
    std::optional<std::vector<StructureTuple>> representatives;
    double elapsed_seconds = 0.0;
    std::vector<std::string> notes;
};

struct ExactStats {
    std::uint64_t candidate_prefixes = 0; // (z, second-row) tuples with all four candidate sets nonempty
    std::uint64_t prefix_orbits = 0;
    std::uint64_t completions_enumerated = 0;
};

struct ExactSearchResult {
    SearchReport prestructures;
    SearchReport structures;
    ExactStats stats;
};

namespace detail {

inline int resolve_workers(int requested) {
    if (requested > 0) return requested;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : int(hc);
}

template <typename F>
inline void run_chunks(int workers, std::size_t count, F&& f) {
    workers = std::min<std::size_t>(std::size_t(std::max(workers, 1)), count == 0 ? 1 : count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= count) break;
                f(i);
            }
        });
    for (auto& t : pool) t.join();
}

/// Exact-mode engine. The relation table factorizes over the first row:
/// given z and the second row (r21, t21, r22, t22), the constraints R1-R5
/// touch only r11, T1-T5 only t11, R6-R10 only r12 and T6-T10 only t12, so
/// each first-row entry ranges over an independent candidate set and the
/// prestructure count for the prefix is the product of the four sizes.
/// Candidate sets are intersections of precomputed commutator-fiber bitsets
/// solve[y][w] = { x : [x, y] = w }.
class Engine {
public:
    static constexpr int MAXW = 2; // enough for the order cap of 128

    explicit Engine(const FiniteGroup& g) : g_(g), n_(g.order()), words_((g.order() + 63) / 64) {
        if (words_ > MAXW) throw std::invalid_argument("exact search: group order exceeds 128");
        comm_.resize(std::size_t(n_) * n_);
        for (std::uint32_t a = 0; a < n_; ++a)
            for (std::uint32_t b = 0; b < n_; ++b) comm_[std::size_t(a) * n_ + b] = g.commutator(elem(a), elem(b));
        solve_.assign(std::size_t(n_) * n_ * words_, 0);
        for (std::uint32_t x = 0; x < n_; ++x)
            for (std::uint32_t y = 0; y < n_; ++y) {
                std::uint16_t w = comm_[std::size_t(x) * n_ + y];
                solve_[(std::size_t(y) * n_ + w) * words_ + (x >> 6)] |= std::uint64_t(1) << (x & 63);
            }
        center_bits_ = center(g_).bits;
        derived_bits_ = derived_subgroup(g_).bits;
        center_words_.fill(0);
        for (std::uint32_t a = 0; a < n_; ++a)
            if (center_bits_.test(a)) center_words_[a >> 6] |= std::uint64_t(1) << (a & 63);
        for (std::uint32_t a = 0; a < n_; ++a)
            if (!center_bits_.test(a)) nc_.push_back(elem(a));
        nc_index_.assign(n_, std::uint16_t(0xFFFF));
        for (std::size_t i = 0; i < nc_.size(); ++i) nc_index_[nc_[i]] = std::uint16_t(i);
    }

    const FiniteGroup& group() const { return g_; }
    const Bits& center_bits() const { return center_bits_; }

    std::vector<elem> z_candidates(std::optional<int> n_filter) const {
        std::vector<elem> zc;
        for (std::uint32_t a = 0; a < n_; ++a) {
            if (!derived_bits_.test(a)) continue;
            int o = g_.order_of(elem(a));
            if (o < 2) continue;
            if (n_filter && o != *n_filter) continue;
            zc.push_back(elem(a));
        }
        return zc;
    }

    /// Sum of candidate-set size products over every (z, second-row) prefix;
    /// this is the total prestructure count, with no orbit machinery at all.
    std::uint64_t prestructure_total(std::optional<int> n_filter, int workers) const {
        std::uint64_t grand = 0;
        for (elem z : z_candidates(n_filter)) grand += slice_total(z, workers, nullptr, 0);
        return grand;
    }

    // ----- full staged search -------------------------------------------

    ExactSearchResult run(const AutGroup& aut, const SearchOptions& opts) const {
        auto t0 = std::chrono::steady_clock::now();
        ExactSearchResult res;
        res.prestructures.label = res.structures.label = g_.label();
        res.prestructures.kind = SearchKind::Prestructures;
        res.structures.kind = SearchKind::Structures;
        if (opts.emit_representatives) {
            res.prestructures.representatives.emplace();
            res.structures.representatives.emplace();
        }

        const int workers = resolve_workers(opts.worker_count);
        ElementSet mon = monolith(g_);
        const bool monolithic = mon.size() > 1;

        // partition the z candidates into Aut-orbits and search one slice per
        // orbit; counts from the other orbit members follow by equivariance
        std::vector<elem> zc = z_candidates(opts.n_filter);
        std::vector<bool> seen(n_, false);
        std::uint64_t factorized_grand = 0;
        std::uint64_t orbit_weighted_grand = 0;

        for (elem z0 : zc) {
            if (seen[z0]) continue;
            std::vector<elem> orbit;
            std::vector<const Perm*> stab;
            for (const auto& a : aut.elements) {
                if (a[z0] == z0) stab.push_back(&a);
                if (!seen[a[z0]]) {
                    seen[a[z0]] = true;
                    orbit.push_back(a[z0]);
                }
            }
            const std::uint64_t weight = orbit.size();
            if (aut.elements.size() != weight * stab.size())
                throw InvariantError("orbit-stabilizer mismatch on z candidates");

            SliceOutcome sl = run_slice(z0, stab, aut, opts, workers);
            res.stats.candidate_prefixes += weight * sl.candidate_prefixes;
            res.stats.prefix_orbits += sl.prefix_orbits;
            res.stats.completions_enumerated += sl.completions;
            factorized_grand += weight * sl.factorized_total;
            orbit_weighted_grand += sl.orbit_weighted_total;

            if (sl.pre_orbits > 0) {
                if (monolithic && !mon.bits.test(z0))
                    throw InvariantError(g_.label() + ": prestructure found with z outside the monolith of a monolithic group");
                int o = g_.order_of(z0);
                res.prestructures.n_values_seen.insert(o);
                if (sl.str_orbits > 0) res.structures.n_values_seen.insert(o);
                res.prestructures.z_always_central = res.prestructures.z_always_central && center_bits_.test(z0);
                res.prestructures.k_centralizer_always_center = res.prestructures.k_centralizer_always_center && sl.k_cert;
            }
            res.prestructures.orbit_count += sl.pre_orbits;
            res.prestructures.total_count += sl.pre_total;
            res.structures.orbit_count += sl.str_orbits;
            res.structures.total_count += sl.str_total;
            for (auto& [k, v] : sl.pre_hist) res.prestructures.orbit_stabilizer_histogram[k] += v;
            for (auto& [k, v] : sl.str_hist) res.structures.orbit_stabilizer_histogram[k] += v;
            if (opts.emit_representatives) {
                for (auto& r : sl.pre_reps) res.prestructures.representatives->push_back(std::move(r));
                for (auto& r : sl.str_reps) res.structures.representatives->push_back(std::move(r));
            }
        }

        // the factorized total and the orbit-weighted total are computed by
        // independent passes and must agree exactly
        if (factorized_grand != orbit_weighted_grand || factorized_grand != res.prestructures.total_count)
            throw InvariantError(g_.label() + ": factorized total " + std::to_string(factorized_grand) + " != orbit-weighted total " + std::to_string(res.prestructures.total_count));

        res.structures.z_always_central = res.prestructures.z_always_central;
        res.structures.k_centralizer_always_center = res.prestructures.k_centralizer_always_center;

        if (opts.emit_representatives) {
            canonicalize_reps(*res.prestructures.representatives, aut);
            canonicalize_reps(*res.structures.representatives, aut);
        }

        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        res.prestructures.elapsed_seconds = res.structures.elapsed_seconds = dt;
        return res;
    }

    /// Orbit count by the Burnside lemma: the mean over all automorphisms of
    /// the number of prestructures fixed elementwise. Independent of the
    /// staged orbit accounting; used as a cross-check.
    std::uint64_t burnside_prestructure_orbits(const AutGroup& aut, std::optional<int> n_filter) const {
        std::uint64_t sum = 0;
        std::vector<elem> zc = z_candidates(n_filter);
        for (const auto& a : aut.elements) {
            std::array<std::uint64_t, MAXW> fixw{};
            std::vector<elem> fix_nc;
            for (std::uint32_t x = 0; x < n_; ++x)
                if (a[x] == x) {
                    fixw[x >> 6] |= std::uint64_t(1) << (x & 63);
                    if (!center_bits_.test(x)) fix_nc.push_back(elem(x));
                }
            for (elem z : zc) {
                if (a[z] != z) continue;
                sum += slice_total_restricted(z, fix_nc, fixw);
            }
        }
        if (sum % aut.elements.size() != 0)
            throw InvariantError(g_.label() + ": Burnside sum not divisible by |Aut|");
        return sum / aut.elements.size();
    }

private:
    // ----- bitset helpers on flat words -----------------------------------

    const std::uint64_t* solve_row(std::uint32_t y, std::uint32_t w) const {
        return solve_.data() + (std::size_t(y) * n_ + w) * words_;
    }
    const std::uint64_t* cz_row(std::uint32_t y) const { return solve_row(y, 0); }

    static std::uint32_t popcount_words(const std::uint64_t* a, int W) {
        std::uint32_t c = 0;
        for (int i = 0; i < W; ++i) c += std::uint32_t(std::popcount(a[i]));
        return c;
    }

    struct Cand {
        std::array<std::uint64_t, MAXW> w[4];
        std::uint32_t cnt[4];
        std::uint64_t product() const { return std::uint64_t(cnt[0]) * cnt[1] * cnt[2] * cnt[3]; }
    };

    // candidate sets for (r11, t11, r12, t12) at a fixed prefix
    bool candidates(elem z, elem t21, elem t22, elem r21, elem r22, Cand& out) const {
        const int W = words_;
        const elem zinv = g_.inv(z);
        const elem it21 = g_.inv(t21), it22 = g_.inv(t22), ir21 = g_.inv(r21), ir22 = g_.inv(r22);
        const elem c_t21 = g_.mul(g_.mul(it21, z), t21);
        const elem c_t22 = g_.mul(g_.mul(it22, z), t22);
        const elem w_t21 = comm_at(it21, z);
        const elem w_t22 = comm_at(it22, z);
        const elem r7 = g_.mul(g_.mul(g_.mul(zinv, r21), g_.mul(g_.mul(ir22, z), r22)), ir21);
        const elem t9 = g_.mul(g_.mul(g_.mul(c_t22, g_.mul(g_.mul(zinv, t21), z)), g_.inv(c_t22)), it21);

        const std::uint64_t* c1[5] = {cz_row(r22), cz_row(r21), cz_row(t22), solve_row(t21, zinv), solve_row(z, comm_at(ir21, z))};
        const std::uint64_t* c2[5] = {cz_row(r22), solve_row(r21, c_t21), cz_row(t22), solve_row(t21, w_t21), solve_row(z, w_t21)};
        const std::uint64_t* c3[5] = {cz_row(r22), solve_row(r21, r7), solve_row(t22, zinv), solve_row(t21, comm_at(zinv, t21)), solve_row(z, comm_at(ir22, z))};
        const std::uint64_t* c4[5] = {solve_row(r22, c_t22), solve_row(r21, w_t22), solve_row(t22, w_t22), solve_row(t21, t9), solve_row(z, w_t22)};
        const std::uint64_t** rows[4] = {c1, c2, c3, c4};
        for (int s = 0; s < 4; ++s) {
            std::uint32_t cnt = 0;
            for (int i = 0; i < W; ++i) {
                std::uint64_t v = rows[s][0][i] & rows[s][1][i] & rows[s][2][i] & rows[s][3][i] & rows[s][4][i];
                out.w[s][i] = v;
                cnt += std::uint32_t(std::popcount(v));
            }
            out.cnt[s] = cnt;
            if (cnt == 0) return false;
        }
        return true;
    }

    elem comm_at(elem a, elem b) const { return comm_[std::size_t(a) * n_ + b]; }

    // ----- phase A: factorized totals and the valid-prefix bitmap ---------

    // One slice = one fixed z. Loops the second row over non-central
    // elements with partial intersections hoisted to the outer loops, so the
    // innermost step is a handful of word ANDs. When `bitmap` is given, valid
    // prefixes are marked; blocks are word-padded per t21 so workers write
    // disjoint words.
    std::uint64_t slice_total(elem z, int workers, std::vector<std::uint64_t>* bitmap, std::size_t block_words) const {
        const std::size_t nc = nc_.size();
        std::vector<std::uint64_t> partial(nc, 0);
        run_chunks(workers, nc, [&](std::size_t i1) {
            partial[i1] = t21_block(z, i1, bitmap ? bitmap->data() + i1 * block_words : nullptr);
        });
        std::uint64_t total = 0;
        for (auto v : partial) total += v;
        return total;
    }

    std::uint64_t t21_block(elem z, std::size_t i1, std::uint64_t* block) const {
        const int W = words_;
        const std::size_t nc = nc_.size();
        const elem zinv = g_.inv(z);
        const elem t21 = nc_[i1];
        const elem it21 = g_.inv(t21);

        const std::uint64_t* s_t21_zinv = solve_row(t21, zinv); // R4
        if (popcount_words(s_t21_zinv, W) == 0) return 0;
        const elem c_t21 = g_.mul(g_.mul(it21, z), t21);
        const elem w_t21 = comm_at(it21, z);
        std::array<std::uint64_t, MAXW> p2a{}; // T4 & T5 parts of C2
        {
            const std::uint64_t* a = solve_row(t21, w_t21);
            const std::uint64_t* b = solve_row(z, w_t21);
            std::uint32_t c = 0;
            for (int i = 0; i < W; ++i) c += std::uint32_t(std::popcount(p2a[i] = a[i] & b[i]));
            if (c == 0) return 0;
        }
        const std::uint64_t* s3a = solve_row(t21, comm_at(zinv, t21)); // R9
        if (popcount_words(s3a, W) == 0) return 0;

        std::uint64_t total = 0;
        std::array<std::uint64_t, MAXW> q1, p2b, s3b, p4, c1a, c2a, c4a, v1, v2, v3, v4;
        for (std::size_t i2 = 0; i2 < nc; ++i2) {
            const elem t22 = nc_[i2];
            const elem it22 = g_.inv(t22);
            const std::uint64_t* czt22 = cz_row(t22);
            {
                std::uint32_t c = 0, d = 0, e = 0;
                const std::uint64_t* st22z = solve_row(t22, zinv); // R8
                for (int i = 0; i < W; ++i) {
                    c += std::uint32_t(std::popcount(q1[i] = s_t21_zinv[i] & czt22[i]));
                    d += std::uint32_t(std::popcount(p2b[i] = p2a[i] & czt22[i]));
                    e += std::uint32_t(std::popcount(s3b[i] = s3a[i] & st22z[i]));
                }
                if (c == 0 || d == 0 || e == 0) continue;
            }
            const elem c_t22 = g_.mul(g_.mul(it22, z), t22);
            const elem w_t22 = comm_at(it22, z);
            const elem t9 = g_.mul(g_.mul(g_.mul(c_t22, g_.mul(g_.mul(zinv, t21), z)), g_.inv(c_t22)), it21);
            {
                const std::uint64_t* a = solve_row(t22, w_t22);
                const std::uint64_t* b = solve_row(z, w_t22);
                const std::uint64_t* c = solve_row(t21, t9);
                std::uint32_t cc = 0;
                for (int i = 0; i < W; ++i) cc += std::uint32_t(std::popcount(p4[i] = a[i] & b[i] & c[i]));
                if (cc == 0) continue;
            }
            for (std::size_t i3 = 0; i3 < nc; ++i3) {
                const elem r21 = nc_[i3];
                const elem ir21 = g_.inv(r21);
                const std::uint64_t* czr21 = cz_row(r21);
                {
                    const std::uint64_t* s5 = solve_row(z, comm_at(ir21, z));
                    const std::uint64_t* st2 = solve_row(r21, c_t21);
                    const std::uint64_t* st7 = solve_row(r21, w_t22);
                    std::uint32_t a = 0, b = 0, c = 0;
                    for (int i = 0; i < W; ++i) {
                        a += std::uint32_t(std::popcount(c1a[i] = q1[i] & czr21[i] & s5[i]));
                        b += std::uint32_t(std::popcount(c2a[i] = p2b[i] & st2[i]));
                        c += std::uint32_t(std::popcount(c4a[i] = p4[i] & st7[i]));
                    }
                    if (a == 0 || b == 0 || c == 0) continue;
                }
                const elem a7 = g_.mul(zinv, r21);
                for (std::size_t i4 = 0; i4 < nc; ++i4) {
                    const elem r22 = nc_[i4];
                    const std::uint64_t* czr22 = cz_row(r22);
                    std::uint32_t n1 = 0, n2 = 0;
                    for (int i = 0; i < W; ++i) {
                        n1 += std::uint32_t(std::popcount(v1[i] = c1a[i] & czr22[i]));
                        n2 += std::uint32_t(std::popcount(v2[i] = c2a[i] & czr22[i]));
                    }
                    if (n1 == 0 || n2 == 0) continue;
                    const elem ir22 = g_.inv(r22);
                    const elem r7 = g_.mul(g_.mul(a7, g_.mul(g_.mul(ir22, z), r22)), ir21);
                    const std::uint64_t* sr7 = solve_row(r21, r7);
                    const std::uint64_t* s10 = solve_row(z, comm_at(ir22, z));
                    const std::uint64_t* st6 = solve_row(r22, c_t22);
                    std::uint32_t n3 = 0, n4 = 0;
                    for (int i = 0; i < W; ++i) {
                        n3 += std::uint32_t(std::popcount(v3[i] = s3b[i] & czr22[i] & sr7[i] & s10[i]));
                        n4 += std::uint32_t(std::popcount(v4[i] = c4a[i] & st6[i]));
                    }
                    if (n3 == 0 || n4 == 0) continue;
                    total += std::uint64_t(n1) * n2 * n3 * n4;
                    if (block) {
                        std::size_t bit = (i2 * nc + i3) * nc + i4;
                        block[bit >> 6] |= std::uint64_t(1) << (bit & 63);
                    }
                }
            }
        }
        return total;
    }

    // phase A restricted to the fixed subgroup of an automorphism (Burnside)
    std::uint64_t slice_total_restricted(elem z, const std::vector<elem>& fix_nc, const std::array<std::uint64_t, MAXW>& fixw) const {
        const int W = words_;
        std::uint64_t total = 0;
        Cand cand;
        for (elem t21 : fix_nc)
            for (elem t22 : fix_nc)
                for (elem r21 : fix_nc)
                    for (elem r22 : fix_nc) {
                        if (!candidates(z, t21, t22, r21, r22, cand)) continue;
                        std::uint64_t prod = 1;
                        for (int s = 0; s < 4 && prod; ++s) {
                            std::uint32_t c = 0;
                            for (int i = 0; i < W; ++i) c += std::uint32_t(std::popcount(cand.w[s][i] & fixw[i]));
                            prod *= c;
                        }
                        total += prod;
                    }
        return total;
    }

    // ----- phases B and C: orbit reduction and completion checks ----------

    struct SliceOutcome {
        std::uint64_t factorized_total = 0;
        std::uint64_t orbit_weighted_total = 0;
        std::uint64_t candidate_prefixes = 0;
        std::uint64_t prefix_orbits = 0;
        std::uint64_t completions = 0;
        std::uint64_t pre_orbits = 0, pre_total = 0;
        std::uint64_t str_orbits = 0, str_total = 0;
        std::map<std::uint64_t, std::uint64_t> pre_hist, str_hist;
        bool k_cert = true;
        std::vector<StructureTuple> pre_reps, str_reps;
    };

    struct PrefixOrbit {
        elem t21, t22, r21, r22;
        std::uint32_t stab;
    };

    SliceOutcome run_slice(elem z0, const std::vector<const Perm*>& zstab, const AutGroup& aut,
                           const SearchOptions& opts, int workers) const {
        SliceOutcome out;
        const std::size_t nc = nc_.size();
        const std::size_t block_words = (nc * nc * nc + 63) / 64;
        std::vector<std::uint64_t> bitmap(nc * block_words, 0);

        out.factorized_total = slice_total(z0, workers, &bitmap, block_words);

        // walk the valid-prefix bitmap; each seed is the least member of its
        // orbit under the z-stabilizer, generate the orbit and clear it
        std::vector<PrefixOrbit> reps;
        for (std::size_t i1 = 0; i1 < nc; ++i1) {
            std::uint64_t* block = bitmap.data() + i1 * block_words;
            for (std::size_t wi = 0; wi < block_words; ++wi) {
                while (block[wi]) {
                    std::size_t bit = wi * 64 + std::size_t(std::countr_zero(block[wi]));
                    std::size_t rest = bit;
                    const std::size_t i4 = rest % nc;
                    rest /= nc;
                    const std::size_t i3 = rest % nc;
                    rest /= nc;
                    const std::size_t i2 = rest;
                    const elem q[4] = {nc_[i1], nc_[i2], nc_[i3], nc_[i4]};
                    std::uint32_t stab = 0, cleared = 0;
                    for (const Perm* a : zstab) {
                        const Perm& p = *a;
                        std::uint16_t j1 = nc_index_[p[q[0]]], j2 = nc_index_[p[q[1]]], j3 = nc_index_[p[q[2]]], j4 = nc_index_[p[q[3]]];
                        if (j1 == i1 && j2 == i2 && j3 == i3 && j4 == i4) ++stab;
                        std::size_t b2 = (std::size_t(j2) * nc + j3) * nc + j4;
                        std::uint64_t& word = bitmap[std::size_t(j1) * block_words + (b2 >> 6)];
                        std::uint64_t mask = std::uint64_t(1) << (b2 & 63);
                        if (word & mask) {
                            word &= ~mask;
                            ++cleared;
                        }
                    }
                    if (std::uint64_t(cleared) * stab != zstab.size())
                        throw InvariantError(g_.label() + ": prefix orbit size mismatch");
                    out.candidate_prefixes += cleared;
                    reps.push_back({q[0], q[1], q[2], q[3], stab});
                }
            }
        }
        out.prefix_orbits = reps.size();

        // process representatives in parallel, one accumulator per chunk
        const std::size_t chunk = std::max<std::size_t>(1, reps.size() / (std::size_t(workers) * 8 + 1));
        const std::size_t nchunks = reps.empty() ? 0 : (reps.size() + chunk - 1) / chunk;
        std::vector<SliceOutcome> parts(nchunks);
        run_chunks(workers, nchunks, [&](std::size_t ci) {
            process_reps(z0, zstab, aut, opts, reps, ci * chunk, std::min(reps.size(), (ci + 1) * chunk), parts[ci]);
        });
        for (auto& p : parts) {
            out.orbit_weighted_total += p.orbit_weighted_total;
            out.completions += p.completions;
            out.pre_orbits += p.pre_orbits;
            out.pre_total += p.pre_total;
            out.str_orbits += p.str_orbits;
            out.str_total += p.str_total;
            for (auto& [k, v] : p.pre_hist) out.pre_hist[k] += v;
            for (auto& [k, v] : p.str_hist) out.str_hist[k] += v;
            out.k_cert = out.k_cert && p.k_cert;
            for (auto& r : p.pre_reps) out.pre_reps.push_back(std::move(r));
            for (auto& r : p.str_reps) out.str_reps.push_back(std::move(r));
        }
        if (out.orbit_weighted_total != std::uint64_t(aut.elements.size() / zstab.size()) * out.factorized_total)
            throw InvariantError(g_.label() + ": slice orbit-weighted total disagrees with the factorized total");
        if (out.pre_total != out.orbit_weighted_total)
            throw InvariantError(g_.label() + ": completion accounting disagrees with the factorized total");
        return out;
    }

    void process_reps(elem z0, const std::vector<const Perm*>& zstab, const AutGroup& aut,
                      const SearchOptions& opts, const std::vector<PrefixOrbit>& reps,
                      std::size_t lo, std::size_t hi, SliceOutcome& acc) const {
        const int W = words_;
        const std::uint64_t aut_order = aut.elements.size();
        const elem zinv = g_.inv(z0);
        Cand cand;
        std::vector<elem> l[4];
        std::vector<const Perm*> prefix_stab;

        for (std::size_t ri = lo; ri < hi; ++ri) {
            const PrefixOrbit& po = reps[ri];
            if (!candidates(z0, po.t21, po.t22, po.r21, po.r22, cand))
                throw InvariantError(g_.label() + ": marked prefix lost its candidates");
            acc.orbit_weighted_total += (aut_order / po.stab) * cand.product();

            for (int s = 0; s < 4; ++s) {
                l[s].clear();
                for (int i = 0; i < W; ++i) {
                    std::uint64_t v = cand.w[s][i];
                    while (v) {
                        l[s].push_back(elem(i * 64 + std::countr_zero(v)));
                        v &= v - 1;
                    }
                }
            }
            prefix_stab.clear();
            if (po.stab > 1) {
                for (const Perm* a : zstab) {
                    const Perm& p = *a;
                    if (p[po.t21] == po.t21 && p[po.t22] == po.t22 && p[po.r21] == po.r21 && p[po.r22] == po.r22)
                        prefix_stab.push_back(a);
                }
                if (prefix_stab.size() != po.stab) throw InvariantError(g_.label() + ": prefix stabilizer recount mismatch");
            }

            // closure of the prefix, extended per completion for the
            // generation check
            ElementSet h0 = subgroup_closure(g_, {z0, po.t21, po.t22, po.r21, po.r22});
            const bool prefix_generates = h0.size() == n_;

            std::unordered_set<std::uint64_t> visited;
            auto pack = [](elem a, elem b, elem c, elem d) {
                return std::uint64_t(a) | (std::uint64_t(b) << 16) | (std::uint64_t(c) << 32) | (std::uint64_t(d) << 48);
            };

            for (elem r11 : l[0])
                for (elem t11 : l[1])
                    for (elem r12 : l[2])
                        for (elem t12 : l[3]) {
                            std::uint32_t full_stab = 1;
                            if (po.stab > 1) {
                                if (visited.count(pack(r11, t11, r12, t12))) continue;
                                full_stab = 0;
                                for (const Perm* a : prefix_stab) {
                                    const Perm& p = *a;
                                    elem m1 = p[r11], m2 = p[t11], m3 = p[r12], m4 = p[t12];
                                    visited.insert(pack(m1, m2, m3, m4));
                                    if (m1 == r11 && m2 == t11 && m3 == r12 && m4 == t12) ++full_stab;
                                }
                            }
                            ++acc.completions;
                            if (aut_order % full_stab != 0)
                                throw InvariantError(g_.label() + ": tuple stabilizer does not divide |Aut|");
                            acc.pre_orbits += 1;
                            acc.pre_total += aut_order / full_stab;
                            acc.pre_hist[full_stab] += 1;

                            // C_G(K) for K = <r11, t11, r12, t12> is the
                            // intersection of the four centralizers
                            bool kc = true;
                            for (int i = 0; i < W && kc; ++i) {
                                std::uint64_t c = cz_row(r11)[i] & cz_row(t11)[i] & cz_row(r12)[i] & cz_row(t12)[i];
                                kc = c == center_words_[i];
                            }
                            acc.k_cert = acc.k_cert && kc;

                            bool is_structure = false;
                            // S1: [r12^-1, t12^-1] t12^-1 [r11^-1, t11^-1] t11^-1 (t11 t12) = z
                            elem s1 = g_.mul(comm_at(g_.inv(r12), g_.inv(t12)), g_.inv(t12));
                            s1 = g_.mul(s1, comm_at(g_.inv(r11), g_.inv(t11)));
                            s1 = g_.mul(g_.mul(g_.mul(s1, g_.inv(t11)), t11), t12);
                            if (s1 == z0) {
                                // S2: [r21^-1, t21] t21 [r22^-1, t22] t22 (t22^-1 t21^-1) = z^-1
                                elem s2 = g_.mul(comm_at(g_.inv(po.r21), po.t21), po.t21);
                                s2 = g_.mul(s2, comm_at(g_.inv(po.r22), po.t22));
                                s2 = g_.mul(g_.mul(g_.mul(s2, po.t22), g_.inv(po.t22)), g_.inv(po.t21));
                                if (s2 == zinv) {
                                    bool gen = prefix_generates;
                                    if (!gen) {
                                        Bits cl = h0.bits;
                                        std::array<elem, 9> gens{r11, t11, r12, t12, po.r21, po.t21, po.r22, po.t22, z0};
                                        std::vector<elem> work = cl.to_list();
                                        for (elem x : {r11, t11, r12, t12})
                                            if (!cl.test(x)) {
                                                cl.set(x);
                                                work.push_back(x);
                                            }
                                        for (std::size_t i = 0; i < work.size() && cl.count() < n_; ++i)
                                            for (elem x : gens) {
                                                elem pr = g_.mul(work[i], x);
                                                if (!cl.test(pr)) {
                                                    cl.set(pr);
                                                    work.push_back(pr);
                                                }
                                            }
                                        gen = cl.count() == n_;
                                    }
                                    if (gen) {
                                        is_structure = true;
                                        acc.str_orbits += 1;
                                        acc.str_total += aut_order / full_stab;
                                        acc.str_hist[full_stab] += 1;
                                    }
                                }
                            }
                            if (opts.emit_representatives) {
                                StructureTuple t;
                                t.b = 2;
                                t.entries = {r11, t11, r12, t12, po.r21, po.t21, po.r22, po.t22, z0};
                                t.n = g_.order_of(z0);
                                acc.pre_reps.push_back(t);
                                if (is_structure) acc.str_reps.push_back(std::move(t));
                            }
                        }
        }
    }

    // replace each representative by the least tuple of its orbit, sort
    void canonicalize_reps(std::vector<StructureTuple>& reps, const AutGroup& aut) const {
        for (auto& t : reps) {
            std::vector<elem> best = t.entries;
            std::vector<elem> img(t.entries.size());
            for (const auto& a : aut.elements) {
                for (std::size_t i = 0; i < t.entries.size(); ++i) img[i] = a[t.entries[i]];
                if (img < best) best = img;
            }
            t.entries = std::move(best);
        }
        std::sort(reps.begin(), reps.end(), [](const StructureTuple& a, const StructureTuple& b) { return a.entries < b.entries; });
    }

    const FiniteGroup& g_;
    const std::uint32_t n_;
    const int words_;
    std::vector<std::uint16_t> comm_;
    std::vector<std::uint64_t> solve_;
    Bits center_bits_, derived_bits_;
    std::array<std::uint64_t, MAXW> center_words_;
    std::vector<elem> nc_;
    std::vector<std::uint16_t> nc_index_;
};

} // namespace detail

/// Exact staged search; returns both the prestructure and the structure
/// report so one pass serves both kinds.
inline ExactSearchResult exact_search(const FiniteGroup& g, const AutGroup& aut, const SearchOptions& opts) {
    if (g.order() > opts.exact_order_cap)
        throw std::invalid_argument(g.label() + ": order " + std::to_string(g.order()) + " exceeds the exact-mode cap of " + std::to_string(opts.exact_order_cap) + " (use lift mode)");
    {
        bool has_id = false;
        for (const auto& a : aut.elements) {
            bool id = true;
            for (std::uint32_t x = 0; x < g.order() && id; ++x) id = a[x] == x;
            if ((has_id = id)) break;
        }
        if (!has_id) throw std::invalid_argument(g.label() + ": automorphism list lacks the identity; pass a complete AutGroup");
    }
    detail::Engine engine(g);
    return engine.run(aut, opts);
}

inline SearchReport enumerate_prestructures(const FiniteGroup& g, const AutGroup& aut, SearchOptions opts) {
    opts.kind = SearchKind::Prestructures;
    return exact_search(g, aut, opts).prestructures;
}

inline SearchReport enumerate_structures(const FiniteGroup& g, const AutGroup& aut, SearchOptions opts) {
    opts.kind = SearchKind::Structures;
    return exact_search(g, aut, opts).structures;
}

/// Total prestructure count by the factorized candidate-set sums alone; no
/// automorphism data needed. Used for existence screens and cross-checks.
inline std::uint64_t prestructure_total_only(const FiniteGroup& g, std::optional<int> n_filter = std::nullopt, int workers = 0) {
    if (g.order() > 128) throw std::invalid_argument("prestructure_total_only: order above 128");
    detail::Engine engine(g);
    return engine.prestructure_total(n_filter, detail::resolve_workers(workers));
}

inline std::uint64_t burnside_prestructure_orbits(const FiniteGroup& g, const AutGroup& aut, std::optional<int> n_filter = std::nullopt) {
    detail::Engine engine(g);
    return engine.burnside_prestructure_orbits(aut, n_filter);
}

// ---------------------------------------------------------------------------
// orbit reduction for explicit tuple lists
// ---------------------------------------------------------------------------

struct OrbitData {
    std::uint64_t orbit_count = 0;
    std::uint64_t total_weight = 0; // sum of |Aut| / |stab| over orbits
    std::map<std::uint64_t, std::uint64_t> stabilizer_histogram;
    std::vector<StructureTuple> representatives; // least tuple per orbit, sorted
};

/// Partitions explicit tuples into orbits under the entrywise Aut action.
inline OrbitData reduce_mod_aut(const FiniteGroup& g, const std::vector<StructureTuple>& tuples, const AutGroup& aut) {
    if (aut.elements.empty()) throw std::invalid_argument("reduce_mod_aut: automorphism list is empty");
    {
        bool has_id = false;
        for (const auto& a : aut.elements) {
            bool id = true;
            for (std::uint32_t x = 0; x < g.order() && id; ++x) id = a[x] == x;
            if (id) {
                has_id = true;
                break;
            }
        }
        if (!has_id) throw std::invalid_argument("reduce_mod_aut: automorphism list lacks the identity");
    }
    std::map<std::vector<elem>, std::pair<std::uint64_t, int>> orbits; // canonical -> (stab, n)
    for (const auto& t : tuples) {
        std::vector<elem> best = t.entries;
        std::uint64_t stab = 0;
        std::vector<elem> img(t.entries.size());
        for (const auto& a : aut.elements) {
            bool fixed = true;
            for (std::size_t i = 0; i < t.entries.size(); ++i) {
                img[i] = a[t.entries[i]];
                fixed = fixed && img[i] == t.entries[i];
            }
            if (fixed) ++stab;
            if (img < best) best = img;
        }
        orbits.emplace(std::move(best), std::make_pair(stab, t.n));
    }
    OrbitData od;
    od.orbit_count = orbits.size();
    for (const auto& [rep, info] : orbits) {
        od.stabilizer_histogram[info.first] += 1;
        od.total_weight += aut.elements.size() / info.first;
        StructureTuple t;
        t.b = int(rep.size() - 1) / 4;
        t.entries = rep;
        t.n = info.second;
        od.representatives.push_back(std::move(t));
    }
    return od;
}

// ---------------------------------------------------------------------------
// extension obstruction and group screening
// ---------------------------------------------------------------------------

struct ObstructionResult {
    bool centralizer_equals_center = false; // true: no extension to genus >= 3
    ElementSet k;                           // <r11, t11, r12, t12>
    ElementSet k_centralizer;
};

/// For K generated by the first four entries, C_G(K) = Z(G) forbids
/// extending the prestructure to any genus b >= 3.
inline ObstructionResult extension_obstruction(const FiniteGroup& g, const StructureTuple& t) {
    if (t.entries.size() < 4) throw std::invalid_argument("extension_obstruction: malformed tuple");
    ObstructionResult r;
    r.k = subgroup_closure(g, {t.entries[0], t.entries[1], t.entries[2], t.entries[3]});
    r.k_centralizer = centralizer(g, r.k.bits);
    r.centralizer_equals_center = r.k_centralizer.bits == center(g).bits;
    return r;
}

enum class ScreenVerdict {
    NoPrestructuresAbelian,
    NoPrestructuresCct,
    NoPrestructuresQuotientScreen,
    SearchRequiredMonolithic,
    SearchRequiredWithQuotients,
};

struct ScreenResult {
    ScreenVerdict verdict;
    bool search_required() const {
        return verdict == ScreenVerdict::SearchRequiredMonolithic || verdict == ScreenVerdict::SearchRequiredWithQuotients;
    }
    std::vector<std::string> detail;
};

/// Decision tree applied before any search: abelian groups and CCT groups
/// carry no prestructures; a non-monolithic group can only carry
/// prestructures lifted from a proper quotient that carries some, so if no
/// quotient does the answer is negative without searching.
inline ScreenResult screen_group(const FiniteGroup& g) {
    ScreenResult r{ScreenVerdict::SearchRequiredMonolithic, {}};
    if (is_abelian(g)) {
        r.verdict = ScreenVerdict::NoPrestructuresAbelian;
        r.detail.push_back("abelian group; z would have to be a nontrivial commutator");
        return r;
    }
    if (is_cct(g).is_cct()) {
        r.verdict = ScreenVerdict::NoPrestructuresCct;
        r.detail.push_back("CCT group: commuting is transitive on non-central elements");
        return r;
    }
    if (is_monolithic(g)) {
        r.verdict = ScreenVerdict::SearchRequiredMonolithic;
        r.detail.push_back("monolithic; any prestructure has z in the monolith (order " + std::to_string(monolith(g).size()) + ")");
        return r;
    }
    // non-monolithic: look for proper quotients carrying prestructures
    bool any = false;
    for (const auto& nsub : normal_subgroups(g)) {
        if (nsub.size() <= 1 || nsub.size() >= g.order()) continue;
        QuotientMap q = quotient(g, nsub);
        ScreenResult sub = screen_group(q.target);
        bool carries = false;
        if (sub.search_required()) carries = prestructure_total_only(q.target) > 0;
        if (carries) {
            any = true;
            std::string what = is_extraspecial(q.target) ? "extra-special quotient" : "quotient";
            r.detail.push_back(what + " of order " + std::to_string(q.target.order()) + " carries prestructures (kernel order " + std::to_string(nsub.size()) + ")");
        }
    }
    if (!any) {
        r.verdict = ScreenVerdict::NoPrestructuresQuotientScreen;
        r.detail.push_back("non-monolithic and no proper quotient carries prestructures");
    } else {
        r.verdict = ScreenVerdict::SearchRequiredWithQuotients;
    }
    return r;
}

} // namespace ddks
