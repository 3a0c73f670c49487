#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ddks/word.hpp"

namespace ddks {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

/// A power-commutator presentation.
///
/// Generators x_1..x_k with relative orders p_i >= 2, power relations
/// x_i^{p_i} = power_words[i] (identity when absent) and commutator
/// relations [x_i, x_j] = comm_words[{i,j}] for i < j (trivial when absent).
/// The commutator convention throughout is [x, y] = x y x^-1 y^-1.
struct PcPresentation {
    std::string name;
    int k = 0;
    std::vector<int> rel_orders;                    // size k, 1-based via rel_orders[i-1]
    std::map<int, Word> power_words;                // i -> word
    std::map<std::pair<int, int>, Word> comm_words; // (i,j), i<j -> word

    int order_of_gen(int i) const { return rel_orders[i - 1]; }

    long long group_order() const {
        long long n = 1;
        for (int p : rel_orders) n *= p;
        return n;
    }

    const Word* power_word(int i) const {
        auto it = power_words.find(i);
        return it == power_words.end() ? nullptr : &it->second;
    }
    const Word* comm_word(int i, int j) const {
        auto it = comm_words.find({i, j});
        return it == comm_words.end() ? nullptr : &it->second;
    }
};

namespace detail {

inline Word parse_word(std::string_view s, int k, int line) {
    Word w;
    std::istringstream iss{std::string(s)};
    std::string tok;
    bool any = false;
    while (iss >> tok) {
        any = true;
        if (tok == "1") {
            if (w.letters.empty()) continue;
            throw ParseError(line, "'1' may only appear as the whole word");
        }
        if (tok[0] != 'x') throw ParseError(line, "bad word token '" + tok + "'");
        std::size_t caret = tok.find('^');
        int gen = 0, exp = 1;
        try {
            gen = std::stoi(tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
            if (caret != std::string::npos) exp = std::stoi(tok.substr(caret + 1));
        } catch (const std::exception&) {
            throw ParseError(line, "bad word token '" + tok + "'");
        }
        if (gen < 1 || gen > k) throw ParseError(line, "generator index x" + std::to_string(gen) + " out of range 1.." + std::to_string(k));
        if (exp == 0) throw ParseError(line, "zero exponent in word token '" + tok + "'");
        w.letters.push_back({gen, exp});
    }
    if (!any) throw ParseError(line, "empty word (write '1' for the identity)");
    return w;
}

} // namespace detail

/// Parses a presentation file. Grammar (line-oriented, '#' starts a comment):
///
///     group "<label>"
///     gens <k>
///     order <i> <p_i>          one line per generator, all k required
///     pow <i> = <word>         optional; omitted means x_i^{p_i} = 1
///     comm <i> <j> = <word>    optional, requires i < j
///     end
inline PcPresentation parse_presentation(std::string_view text) {
    PcPresentation pres;
    bool have_group = false, have_gens = false, have_end = false;
    std::vector<bool> order_seen;

    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (have_end) throw ParseError(lineno, "content after 'end'");

        if (kw == "group") {
            std::string rest;
            std::getline(ls, rest);
            auto a = rest.find('"'), b = rest.rfind('"');
            if (a == std::string::npos || b <= a) throw ParseError(lineno, "expected group \"<label>\"");
            pres.name = rest.substr(a + 1, b - a - 1);
            have_group = true;
        } else if (kw == "gens") {
            if (!(ls >> pres.k) || pres.k < 1) throw ParseError(lineno, "expected gens <k> with k >= 1");
            pres.rel_orders.assign(pres.k, 0);
            order_seen.assign(pres.k, false);
            have_gens = true;
        } else if (kw == "order") {
            if (!have_gens) throw ParseError(lineno, "'order' before 'gens'");
            int i = 0, p = 0;
            if (!(ls >> i >> p)) throw ParseError(lineno, "expected order <i> <p_i>");
            if (i < 1 || i > pres.k) throw ParseError(lineno, "generator index out of range");
            if (order_seen[i - 1]) throw ParseError(lineno, "duplicate order for x" + std::to_string(i));
            if (p < 2) throw ParseError(lineno, "relative order must be >= 2");
            pres.rel_orders[i - 1] = p;
            order_seen[i - 1] = true;
        } else if (kw == "pow") {
            if (!have_gens) throw ParseError(lineno, "'pow' before 'gens'");
            int i = 0;
            std::string eq;
            if (!(ls >> i >> eq) || eq != "=") throw ParseError(lineno, "expected pow <i> = <word>");
            if (i < 1 || i > pres.k) throw ParseError(lineno, "generator index out of range");
            if (pres.power_words.count(i)) throw ParseError(lineno, "duplicate pow for x" + std::to_string(i));
            std::string rest;
            std::getline(ls, rest);
            Word w = detail::parse_word(rest, pres.k, lineno);
            if (!w.is_identity()) pres.power_words[i] = std::move(w);
        } else if (kw == "comm") {
            if (!have_gens) throw ParseError(lineno, "'comm' before 'gens'");
            int i = 0, j = 0;
            std::string eq;
            if (!(ls >> i >> j >> eq) || eq != "=") throw ParseError(lineno, "expected comm <i> <j> = <word>");
            if (i < 1 || i > pres.k || j < 1 || j > pres.k) throw ParseError(lineno, "generator index out of range");
            if (i >= j) throw ParseError(lineno, "commutator key must satisfy i < j");
            if (pres.comm_words.count({i, j})) throw ParseError(lineno, "duplicate comm for (x" + std::to_string(i) + ", x" + std::to_string(j) + ")");
            std::string rest;
            std::getline(ls, rest);
            Word w = detail::parse_word(rest, pres.k, lineno);
            if (!w.is_identity()) pres.comm_words[{i, j}] = std::move(w);
        } else if (kw == "end") {
            have_end = true;
        } else {
            throw ParseError(lineno, "unknown directive '" + kw + "'");
        }
    }
    if (!have_group) throw ParseError(lineno, "missing 'group' line");
    if (!have_gens) throw ParseError(lineno, "missing 'gens' line");
    if (!have_end) throw ParseError(lineno, "missing 'end'");
    for (int i = 1; i <= pres.k; ++i)
        if (!order_seen[i - 1]) throw ParseError(lineno, "missing rel_order for x" + std::to_string(i));
    return pres;
}

/// Inverse of parse_presentation; parse(emit(p)) reproduces p exactly.
inline std::string emit_presentation(const PcPresentation& pres) {
    std::ostringstream out;
    out << "group \"" << pres.name << "\"\n";
    out << "gens " << pres.k << "\n";
    for (int i = 1; i <= pres.k; ++i) out << "order " << i << ' ' << pres.rel_orders[i - 1] << "\n";
    for (const auto& [i, w] : pres.power_words) out << "pow " << i << " = " << w.str() << "\n";
    for (const auto& [ij, w] : pres.comm_words)
        out << "comm " << ij.first << ' ' << ij.second << " = " << w.str() << "\n";
    out << "end\n";
    return out.str();
}

} // namespace ddks
