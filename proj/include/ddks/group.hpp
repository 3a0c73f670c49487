#pragma once

#include <cstdint>
#include <cstdlib>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "ddks/bits.hpp"
#include "ddks/presentation.hpp"
#include "ddks/word.hpp"

namespace ddks {

struct BuildError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Build-time order cap; DDKS_MAX_ORDER overrides the default of 512.
inline std::uint32_t default_order_cap() {
    if (const char* s = std::getenv("DDKS_MAX_ORDER")) {
        long v = std::strtol(s, nullptr, 10);
        if (v > 0) return std::uint32_t(v);
    }
    return 512;
}

/// A fully materialized finite group: a validated multiplication table over
/// element indices 0..N-1 with identity at index 0.
///
/// Groups built from a PcPresentation also carry element normal forms
/// (exponent vectors, indexed in lexicographic order so the identity is
/// element 0) and remember their source presentation. Groups built from an
/// external table or as quotients have no normal forms.
class FiniteGroup {
public:
    using elem = std::uint16_t;

    FiniteGroup() = default;

    std::uint32_t order() const { return n_; }
    const std::string& label() const { return label_; }
    void set_label(std::string s) { label_ = std::move(s); }

    elem identity() const { return 0; }
    elem mul(elem a, elem b) const { return mul_[std::size_t(a) * n_ + b]; }
    elem inv(elem a) const { return inv_[a]; }
    elem conjugate(elem a, elem b) const { return mul(mul(a, b), inv(a)); } // a b a^-1
    elem commutator(elem a, elem b) const { return mul(mul(a, b), mul(inv(a), inv(b))); }
    std::uint16_t order_of(elem a) const { return order_[a]; }

    elem pow(elem a, long long e) const {
        if (e < 0) {
            a = inv(a);
            e = -e;
        }
        e %= order_of(a) == 0 ? 1 : order_of(a);
        elem r = 0;
        while (e-- > 0) r = mul(r, a);
        return r;
    }

    void check_index(std::uint32_t a, const char* what) const {
        if (a >= n_) throw std::out_of_range(std::string(what) + ": element index " + std::to_string(a) + " out of range 0.." + std::to_string(n_ - 1));
    }

    /// Substitutes assignment[g-1] for generator g and folds with mul.
    elem eval_word(const Word& w, const std::vector<elem>& assignment) const {
        elem r = 0;
        for (const auto& l : w.letters) {
            if (l.gen < 1 || std::size_t(l.gen) > assignment.size())
                throw std::out_of_range("eval_word: word references generator x" + std::to_string(l.gen) + " outside the assignment");
            check_index(assignment[l.gen - 1], "eval_word");
            r = mul(r, pow(assignment[l.gen - 1], l.exp));
        }
        return r;
    }

    // --- presentation-backed data (empty for table/quotient groups) ---

    const PcPresentation* presentation() const { return source_.get(); }
    std::shared_ptr<const PcPresentation> presentation_ptr() const { return source_; }
    int num_generators() const { return source_ ? source_->k : 0; }

    /// The element realizing presentation generator x_i (1-based).
    elem generator(int i) const {
        if (!source_) throw std::logic_error("group has no presentation generators");
        return gen_elem_.at(std::size_t(i - 1));
    }
    std::vector<elem> generator_elems() const { return gen_elem_; }

    /// Exponent vector of an element; empty when the group has no presentation.
    const std::vector<std::uint8_t>& normal_form(elem a) const { return nf_[a]; }
    bool has_normal_forms() const { return !nf_.empty(); }

    /// Element with the given exponent vector.
    elem element_from_exponents(const std::vector<int>& exps) const {
        if (!source_ || int(exps.size()) != source_->k)
            throw std::invalid_argument("exponent vector length must equal the generator count");
        std::uint32_t r = 0;
        for (int i = 0; i < source_->k; ++i) {
            int p = source_->rel_orders[i];
            int e = ((exps[i] % p) + p) % p;
            r = r * p + std::uint32_t(e);
        }
        return elem(r);
    }

    std::string element_str(elem a) const {
        if (!has_normal_forms()) return std::to_string(a);
        std::string s;
        for (std::size_t i = 0; i < nf_[a].size(); ++i) {
            if (i) s += ',';
            s += std::to_string(int(nf_[a][i]));
        }
        return s;
    }

private:
    std::uint32_t n_ = 0;
    std::vector<elem> mul_, inv_;
    std::vector<std::uint16_t> order_;
    std::vector<std::vector<std::uint8_t>> nf_;
    std::vector<elem> gen_elem_;
    std::string label_;
    std::shared_ptr<const PcPresentation> source_;

    friend FiniteGroup build_group(const PcPresentation&, std::uint32_t);
    friend FiniteGroup group_from_table(const std::string&, std::uint32_t, std::vector<elem>);
};

namespace detail {

/// Normal-form construction for a pc presentation, working from the deepest
/// generator up: the tail subgroup H_g = <x_g, ..., x_k> is built as a cyclic
/// extension of H_{g+1} by x_g, whose conjugation action on H_{g+1} is read
/// off the commutator relations ([x_g, x_j] = w  means  x_g x_j x_g^-1 = w x_j).
/// Elements of H_g are pairs (e, h) = x_g^e * h, flattened as e*|H| + h, which
/// is exactly the lexicographic indexing of exponent vectors.
///
/// Each step checks that the action extends to an automorphism phi of H_{g+1}
/// compatible with the power relation (phi fixes x_g^{p_g} and phi^{p_g} is
/// conjugation by it); a violation is reported as an inconsistency.
class StepBuilder {
public:
    explicit StepBuilder(const PcPresentation& pres) : pres_(pres), k_(pres.k) {
        n_ = 1;
        mul_ = {0};
        inv_ = {0};
        for (int g = k_; g >= 1; --g) extend_by(g);
    }

    std::uint32_t order() const { return n_; }
    std::vector<FiniteGroup::elem> take_table() { return std::move(mul_); }

    std::vector<std::uint8_t> unrank(std::uint32_t r) const {
        std::vector<std::uint8_t> v(k_);
        for (int i = k_ - 1; i >= 0; --i) {
            int p = pres_.rel_orders[i];
            v[i] = std::uint8_t(r % p);
            r /= p;
        }
        return v;
    }

    std::uint32_t rank(const std::vector<std::uint8_t>& v) const {
        std::uint32_t r = 0;
        for (int i = 0; i < k_; ++i) r = r * pres_.rel_orders[i] + v[i];
        return r;
    }

private:
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[std::size_t(a) * n_ + b]; }

    // current group is on generators (g+1..k); absolute generator j maps to
    // the unit exponent vector, whose rank is the product of p_t for t > j
    std::uint32_t gen_elem(int j) const {
        std::uint32_t r = 1;
        for (int t = j + 1; t <= k_; ++t) r *= std::uint32_t(pres_.rel_orders[t - 1]);
        return r;
    }

    std::uint32_t eval(const Word& w) const {
        std::uint32_t r = 0;
        for (const auto& l : w.letters) {
            std::uint32_t x = gen_elem(l.gen);
            if (l.exp < 0) x = inv_[x];
            int reps = l.exp > 0 ? l.exp : -l.exp;
            for (int t = 0; t < reps; ++t) r = mul(r, x);
        }
        return r;
    }

    void extend_by(int g) {
        const std::uint32_t m = n_;
        const int p = pres_.rel_orders[g - 1];
        const std::string gn = "x" + std::to_string(g);

        // conjugation action of x_g on the generators of the tail subgroup
        std::vector<std::uint32_t> phi_gen(std::size_t(k_) + 1, 0);
        for (int j = g + 1; j <= k_; ++j) {
            const Word* w = pres_.comm_word(g, j);
            std::uint32_t img = gen_elem(j);
            if (w) img = mul(eval(*w), img);
            phi_gen[j] = img;
        }

        // extend multiplicatively along normal forms and verify it is an
        // automorphism of the tail subgroup
        std::vector<std::uint32_t> phi(m), phi_inv(m);
        for (std::uint32_t h = 0; h < m; ++h) {
            std::uint32_t r = 0, rest = h;
            std::vector<int> exps(k_ - g);
            for (int j = k_; j > g; --j) {
                exps[j - g - 1] = int(rest % pres_.rel_orders[j - 1]);
                rest /= pres_.rel_orders[j - 1];
            }
            for (int j = g + 1; j <= k_; ++j)
                for (int t = 0; t < exps[j - g - 1]; ++t) r = mul(r, phi_gen[j]);
            phi[h] = r;
        }
        {
            std::vector<bool> seen(m, false);
            for (std::uint32_t h = 0; h < m; ++h) {
                if (seen[phi[h]])
                    throw BuildError(pres_.name + ": inconsistent presentation, the action of " + gn + " is not a bijection");
                seen[phi[h]] = true;
                phi_inv[phi[h]] = h;
            }
            for (std::uint32_t a = 0; a < m; ++a)
                for (std::uint32_t b = 0; b < m; ++b)
                    if (phi[mul(a, b)] != mul(phi[a], phi[b]))
                        throw BuildError(pres_.name + ": inconsistent presentation, the commutator relations of " + gn + " do not define an automorphism of <x" + std::to_string(g + 1) + ", ...>");
        }

        const Word* pw = pres_.power_word(g);
        std::uint32_t phat = pw ? eval(*pw) : 0;
        if (phi[phat] != phat)
            throw BuildError(pres_.name + ": inconsistent presentation, " + gn + " does not fix its own power word");
        {
            // phi^p must be conjugation by x_g^p = phat
            for (std::uint32_t h = 0; h < m; ++h) {
                std::uint32_t r = h;
                for (int t = 0; t < p; ++t) r = phi[r];
                if (r != mul(mul(phat, h), inv_[phat]))
                    throw BuildError(pres_.name + ": inconsistent presentation, relation " + gn + "^" + std::to_string(p) + " = " + (pw ? pw->str() : "1") + " is incompatible with the action of " + gn);
            }
        }

        // powers of phi^-1 for shifting the h-part past x_g^e
        std::vector<std::vector<std::uint32_t>> phi_inv_pow(p);
        phi_inv_pow[0].resize(m);
        for (std::uint32_t h = 0; h < m; ++h) phi_inv_pow[0][h] = h;
        for (int e = 1; e < p; ++e) {
            phi_inv_pow[e].resize(m);
            for (std::uint32_t h = 0; h < m; ++h) phi_inv_pow[e][h] = phi_inv[phi_inv_pow[e - 1][h]];
        }

        // (e1, h1) * (e2, h2) = x_g^{e1+e2} * phi^{-e2}(h1) * h2, folding
        // x_g^p into phat
        const std::uint32_t n2 = std::uint32_t(p) * m;
        std::vector<FiniteGroup::elem> mul2(std::size_t(n2) * n2);
        for (int e1 = 0; e1 < p; ++e1)
            for (std::uint32_t h1 = 0; h1 < m; ++h1) {
                std::uint32_t a = std::uint32_t(e1) * m + h1;
                for (int e2 = 0; e2 < p; ++e2) {
                    std::uint32_t shifted = phi_inv_pow[e2][h1];
                    for (std::uint32_t h2 = 0; h2 < m; ++h2) {
                        std::uint32_t b = std::uint32_t(e2) * m + h2;
                        int e = e1 + e2;
                        std::uint32_t hp = mul(shifted, h2);
                        if (e >= p) {
                            e -= p;
                            hp = mul(phat, hp);
                        }
                        mul2[std::size_t(a) * n2 + b] = FiniteGroup::elem(std::uint32_t(e) * m + hp);
                    }
                }
            }

        n_ = n2;
        mul_ = std::move(mul2);
        inv_.assign(n_, 0);
        for (std::uint32_t a = 0; a < n_; ++a)
            for (std::uint32_t b = 0; b < n_; ++b)
                if (mul(a, b) == 0) {
                    inv_[a] = b;
                    break;
                }
    }

    const PcPresentation& pres_;
    int k_;
    std::uint32_t n_;
    std::vector<FiniteGroup::elem> mul_;
    std::vector<std::uint32_t> inv_;
};

inline void validate_table(const std::string& label, std::uint32_t n, const std::vector<FiniteGroup::elem>& mul) {
    auto at = [&](std::uint32_t a, std::uint32_t b) { return mul[std::size_t(a) * n + b]; };
    for (std::uint32_t a = 0; a < n; ++a) {
        if (at(0, a) != a || at(a, 0) != a)
            throw BuildError(label + ": index 0 is not a two-sided identity at element " + std::to_string(a));
    }
    for (std::uint32_t a = 0; a < n; ++a) {
        Bits seen(n);
        bool has_inv = false;
        for (std::uint32_t b = 0; b < n; ++b) {
            std::uint32_t ab = at(a, b);
            if (ab >= n) throw BuildError(label + ": table value out of range");
            if (seen.test(ab)) throw BuildError(label + ": row " + std::to_string(a) + " is not a permutation");
            seen.set(ab);
            if (ab == 0) has_inv = true;
        }
        if (!has_inv) throw BuildError(label + ": element " + std::to_string(a) + " has no inverse");
    }
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b) {
            std::uint32_t ab = at(a, b);
            for (std::uint32_t c = 0; c < n; ++c)
                if (at(ab, c) != at(a, at(b, c)))
                    throw BuildError(label + ": non-associative triple (" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) + ")");
        }
}

} // namespace detail

/// Materializes a validated FiniteGroup from an explicit table.
/// Throws BuildError naming the first violated axiom.
inline FiniteGroup group_from_table(const std::string& label, std::uint32_t n, std::vector<FiniteGroup::elem> mul) {
    if (n == 0 || mul.size() != std::size_t(n) * n) throw BuildError(label + ": table has wrong shape");
    detail::validate_table(label, n, mul);
    FiniteGroup g;
    g.n_ = n;
    g.label_ = label;
    g.mul_ = std::move(mul);
    g.inv_.assign(n, 0);
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b)
            if (g.mul(FiniteGroup::elem(a), FiniteGroup::elem(b)) == 0) {
                g.inv_[a] = FiniteGroup::elem(b);
                break;
            }
    g.order_.assign(n, 0);
    for (std::uint32_t a = 0; a < n; ++a) {
        FiniteGroup::elem x = FiniteGroup::elem(a);
        std::uint16_t m = 1;
        while (x != 0) {
            x = g.mul(x, FiniteGroup::elem(a));
            ++m;
        }
        g.order_[a] = m;
    }
    return g;
}

/// Builds the group presented by pres: collection into normal forms followed
/// by exhaustive validation of the group axioms and of every presentation
/// relation on the finished table.
inline FiniteGroup build_group(const PcPresentation& pres, std::uint32_t max_order = 0) {
    if (max_order == 0) max_order = default_order_cap();
    if (pres.group_order() > max_order)
        throw BuildError(pres.name + ": order " + std::to_string(pres.group_order()) + " exceeds the cap of " + std::to_string(max_order));
    for (const auto& [ij, w] : pres.comm_words)
        for (const auto& l : w.letters)
            if (l.gen <= ij.first)
                throw BuildError(pres.name + ": comm word for (x" + std::to_string(ij.first) + ", x" + std::to_string(ij.second) + ") references x" + std::to_string(l.gen) + ", which is not above the pair");
    for (const auto& [i, w] : pres.power_words)
        for (const auto& l : w.letters)
            if (l.gen <= i)
                throw BuildError(pres.name + ": power word for x" + std::to_string(i) + " references x" + std::to_string(l.gen));

    detail::StepBuilder col(pres);
    std::uint32_t n = col.order();

    FiniteGroup g = group_from_table(pres.name, n, col.take_table());
    g.source_ = std::make_shared<PcPresentation>(pres);
    g.nf_.resize(n);
    for (std::uint32_t a = 0; a < n; ++a) g.nf_[a] = col.unrank(a);
    g.gen_elem_.resize(pres.k);
    for (int i = 1; i <= pres.k; ++i) {
        std::vector<std::uint8_t> v(pres.k, 0);
        v[i - 1] = 1;
        g.gen_elem_[i - 1] = FiniteGroup::elem(col.rank(v));
    }

    // every defining relation must hold verbatim on the built table
    std::vector<FiniteGroup::elem> gens = g.gen_elem_;
    for (int i = 1; i <= pres.k; ++i) {
        FiniteGroup::elem lhs = g.pow(gens[i - 1], pres.rel_orders[i - 1]);
        const Word* pw = pres.power_word(i);
        FiniteGroup::elem rhs = pw ? g.eval_word(*pw, gens) : FiniteGroup::elem(0);
        if (lhs != rhs)
            throw BuildError(pres.name + ": relation x" + std::to_string(i) + "^" + std::to_string(pres.rel_orders[i - 1]) + " = " + (pw ? pw->str() : "1") + " fails on the built table");
    }
    for (int i = 1; i <= pres.k; ++i)
        for (int j = i + 1; j <= pres.k; ++j) {
            FiniteGroup::elem lhs = g.commutator(gens[i - 1], gens[j - 1]);
            const Word* cw = pres.comm_word(i, j);
            FiniteGroup::elem rhs = cw ? g.eval_word(*cw, gens) : FiniteGroup::elem(0);
            if (lhs != rhs)
                throw BuildError(pres.name + ": relation [x" + std::to_string(i) + ", x" + std::to_string(j) + "] = " + (cw ? cw->str() : "1") + " fails on the built table");
        }

    return g;
}

/// A subset of group elements. Producers set the subgroup/normal flags after
/// verifying them; consumers may re-check with the helpers in grouptheory.
struct ElementSet {
    Bits bits;
    bool is_subgroup = false;
    bool is_normal = false;

    ElementSet() = default;
    explicit ElementSet(Bits b, bool sub = false, bool normal = false)
        : bits(std::move(b)), is_subgroup(sub), is_normal(normal) {}

    std::uint32_t size() const { return bits.count(); }
    bool contains(std::uint32_t i) const { return bits.test(i); }
    bool operator==(const ElementSet& o) const { return bits == o.bits; }
};

} // namespace ddks
