#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ddks/catalog_data.hpp"
#include "ddks/group.hpp"
#include "ddks/grouptheory.hpp"
#include "ddks/lifting.hpp"
#include "ddks/predicates.hpp"
#include "ddks/presentation.hpp"
#include "ddks/search.hpp"

namespace ddks {

struct ExpectedMetrics {
    std::uint64_t aut_order = 0;
    bool monolithic = false;
    std::uint32_t monolith_order = 0;
    bool cct = false;
    bool extraspecial = false;
    std::optional<int> nilpotency; // nullopt = non-nilpotent
    std::uint32_t center_order = 0;
    std::string center_desc;
    std::uint32_t derived_order = 0;
    std::string derived_desc;
    std::uint64_t prestructure_orbits = 0;
    std::uint64_t structure_orbits = 0;
    std::uint64_t structure_total = 0;
    SearchMode mode = SearchMode::Exact;
    std::string lift_base, lift_kernel;
    std::vector<std::pair<std::string, std::string>> quotient_targets; // kernel word -> target label
    std::string note;
};

struct CatalogEntry {
    std::string label;
    PcPresentation presentation;
    bool auxiliary = false;
    std::optional<ExpectedMetrics> expected;
};

inline std::vector<CatalogEntry> builtin_catalog() {
    std::vector<CatalogEntry> out;
    for (const auto& row : data::catalog_rows) {
        CatalogEntry e;
        e.label = row.label;
        e.presentation = parse_presentation(row.presentation);
        e.auxiliary = row.auxiliary;
        ExpectedMetrics m;
        m.aut_order = std::uint64_t(row.aut_order);
        m.monolithic = row.monolithic;
        m.monolith_order = std::uint32_t(row.monolith_order);
        m.cct = row.cct;
        m.extraspecial = row.extraspecial;
        if (row.nilpotency_class >= 0) m.nilpotency = row.nilpotency_class;
        m.center_order = std::uint32_t(row.center_order);
        m.center_desc = row.center_desc;
        m.derived_order = std::uint32_t(row.derived_order);
        m.derived_desc = row.derived_desc;
        m.prestructure_orbits = std::uint64_t(row.prestructure_orbits);
        m.structure_orbits = std::uint64_t(row.structure_orbits);
        m.structure_total = std::uint64_t(row.structure_total);
        m.mode = std::string(row.search_mode) == "lift" ? SearchMode::Lift : SearchMode::Exact;
        m.lift_base = row.lift_base;
        m.lift_kernel = row.lift_kernel;
        m.note = row.note;
        std::string qt = row.quotient_targets;
        std::size_t pos = 0;
        while (pos < qt.size()) {
            std::size_t bar = qt.find('|', pos);
            std::string item = qt.substr(pos, bar == std::string::npos ? std::string::npos : bar - pos);
            std::size_t arrow = item.find("->");
            if (arrow != std::string::npos)
                m.quotient_targets.emplace_back(item.substr(0, arrow), item.substr(arrow + 2));
            pos = bar == std::string::npos ? qt.size() : bar + 1;
        }
        e.expected = std::move(m);
        out.push_back(std::move(e));
    }
    return out;
}

inline const CatalogEntry* find_entry(const std::vector<CatalogEntry>& cat, const std::string& label) {
    for (const auto& e : cat)
        if (e.label == label) return &e;
    return nullptr;
}

// ---------------------------------------------------------------------------
// external table ingestion
// ---------------------------------------------------------------------------

/// Parses the external-table format: line 1 "order N", then N rows of N
/// space-separated indices (row a lists the products a*b), then an optional
/// "names" block with one token per element. The table is validated in full;
/// the identity must sit at index 0.
inline FiniteGroup ingest_table(std::string_view text, const std::string& label = "external") {
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    auto next_line = [&](std::string& out) {
        while (std::getline(in, raw)) {
            ++lineno;
            if (auto p = raw.find('#'); p != std::string::npos) raw.erase(p);
            std::istringstream probe(raw);
            std::string tok;
            if (probe >> tok) {
                out = raw;
                return true;
            }
        }
        return false;
    };
    std::string line;
    if (!next_line(line)) throw ParseError(lineno, "empty table file");
    std::istringstream head(line);
    std::string kw;
    std::uint32_t n = 0;
    if (!(head >> kw >> n) || kw != "order" || n == 0) throw ParseError(lineno, "expected 'order N'");
    if (n > default_order_cap())
        throw BuildError(label + ": order " + std::to_string(n) + " exceeds the cap of " + std::to_string(default_order_cap()));
    std::vector<FiniteGroup::elem> table;
    table.reserve(std::size_t(n) * n);
    for (std::uint32_t r = 0; r < n; ++r) {
        if (!next_line(line)) throw ParseError(lineno, "table row " + std::to_string(r) + " missing");
        std::istringstream ls(line);
        long v;
        for (std::uint32_t c = 0; c < n; ++c) {
            if (!(ls >> v) || v < 0 || std::uint32_t(v) >= n)
                throw ParseError(lineno, "bad entry in table row " + std::to_string(r));
            table.push_back(FiniteGroup::elem(v));
        }
        std::string extra;
        if (ls >> extra) throw ParseError(lineno, "trailing content in table row " + std::to_string(r));
    }
    if (next_line(line)) {
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (tok != "names") throw ParseError(lineno, "expected optional 'names' block, found '" + tok + "'");
        std::size_t count = 0;
        while (ls >> tok) ++count;
        while (count < n && next_line(line)) {
            std::istringstream more(line);
            while (more >> tok) ++count;
        }
        if (count != n) throw ParseError(lineno, "names block must list exactly N names");
    }
    return group_from_table(label, n, std::move(table));
}

inline std::string emit_table(const FiniteGroup& g) {
    std::ostringstream out;
    out << "order " << g.order() << "\n";
    for (std::uint32_t a = 0; a < g.order(); ++a) {
        for (std::uint32_t b = 0; b < g.order(); ++b) {
            if (b) out << ' ';
            out << g.mul(elem(a), elem(b));
        }
        out << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// catalog run
// ---------------------------------------------------------------------------

struct EntryReport {
    std::string label;
    bool auxiliary = false;
    std::uint32_t order = 0;
    GroupProfile profile;
    std::vector<std::string> screen_detail;
    bool screen_negative = false;
    std::optional<SearchReport> prestructures;
    std::optional<SearchReport> structures;
    std::optional<LiftReport> lift;
    std::vector<std::string> expected_diff;
    std::vector<std::string> notes;
    std::string error; // nonempty when the entry failed outright
    double elapsed_seconds = 0.0;
};

struct RunArtifact {
    std::vector<EntryReport> entries;
    std::size_t mismatches = 0;
    std::size_t failures = 0;
    bool ok() const { return mismatches == 0 && failures == 0; }
};

struct CatalogFilter {
    std::optional<std::uint32_t> order;
    std::optional<std::string> label;
    bool include_auxiliary = true;
};

namespace detail {

/// Order profile (element order -> count) of an abelian product like
/// "Z2xZ4", for descriptor checking.
inline std::map<int, int> abelian_profile(const std::string& desc) {
    std::vector<int> factors;
    std::size_t pos = 0;
    while (pos < desc.size()) {
        if (desc[pos] != 'Z') throw std::invalid_argument("bad abelian descriptor " + desc);
        std::size_t end = desc.find('x', pos);
        factors.push_back(std::stoi(desc.substr(pos + 1, end == std::string::npos ? std::string::npos : end - pos - 1)));
        pos = end == std::string::npos ? desc.size() : end + 1;
    }
    std::map<int, int> profile;
    std::vector<int> idx(factors.size(), 0);
    while (true) {
        long long o = 1;
        for (std::size_t i = 0; i < factors.size(); ++i) o = std::lcm<long long>(o, factors[i] / std::gcd(idx[i], factors[i]));
        profile[int(o)] += 1;
        std::size_t i = 0;
        for (; i < factors.size(); ++i) {
            if (++idx[i] < factors[i]) break;
            idx[i] = 0;
        }
        if (i == factors.size()) break;
    }
    return profile;
}

inline bool subgroup_matches_descriptor(const FiniteGroup& g, const Bits& sub, const std::string& desc,
                                        const std::vector<CatalogEntry>& cat) {
    if (desc.empty()) return true;
    if (desc == "1") return sub.count() == 1;
    if (desc == "Q8" || desc.rfind("G(", 0) == 0) {
        const CatalogEntry* target = find_entry(cat, desc);
        if (!target) return false;
        FiniteGroup t = build_group(target->presentation);
        if (t.order() != sub.count()) return false;
        SubgroupGroup sg = subgroup_as_group(g, sub);
        return is_isomorphic(sg.group, t).has_value();
    }
    // abelian descriptor: order profile determines the group at these sizes
    std::map<int, int> want = abelian_profile(desc);
    std::map<int, int> got;
    bool abelian = true;
    auto members = sub.to_list();
    for (std::size_t i = 0; i < members.size(); ++i) {
        got[g.order_of(members[i])] += 1;
        for (std::size_t j = i + 1; j < members.size() && abelian; ++j)
            abelian = g.mul(members[i], members[j]) == g.mul(members[j], members[i]);
    }
    return abelian && got == want;
}

inline elem eval_gen_word(const FiniteGroup& g, const std::string& word_text) {
    Word w = parse_word(word_text, g.num_generators(), 0);
    return g.eval_word(w, g.generator_elems());
}

} // namespace detail

/// Builds, profiles, screens and searches one catalog entry and compares
/// every computed metric against the expected data. Mismatches land in
/// expected_diff; hard failures land in error.
inline EntryReport run_entry(const CatalogEntry& entry, const std::vector<CatalogEntry>& cat, SearchOptions opts) {
    auto t0 = std::chrono::steady_clock::now();
    EntryReport rep;
    rep.label = entry.label;
    rep.auxiliary = entry.auxiliary;
    auto diff = [&](const std::string& what, auto want, auto got) {
        std::ostringstream os;
        os << what << ": expected " << want << ", computed " << got;
        rep.expected_diff.push_back(os.str());
    };
    try {
        FiniteGroup g = build_group(entry.presentation);
        rep.order = g.order();
        AutGroup aut = automorphism_group(g);
        rep.profile = compute_profile(g, aut.order());

        ScreenResult screen = screen_group(g);
        rep.screen_detail = screen.detail;
        rep.screen_negative = !screen.search_required();

        const ExpectedMetrics* want = entry.expected ? &*entry.expected : nullptr;

        if (want && want->mode == SearchMode::Lift) {
            const CatalogEntry* base_entry = find_entry(cat, want->lift_base);
            if (!base_entry) throw std::invalid_argument(entry.label + ": lift base " + want->lift_base + " not in catalog");
            FiniteGroup base = build_group(base_entry->presentation);
            AutGroup base_aut = automorphism_group(base);
            SearchOptions base_opts = opts;
            base_opts.emit_representatives = true;
            ExactSearchResult base_res = exact_search(base, base_aut, base_opts);
            ElementSet kernel = subgroup_closure(g, {detail::eval_gen_word(g, want->lift_kernel)});
            LiftReport lr = count_via_lifting(g, kernel, base, base_res, aut, opts);
            rep.prestructures = lr.prestructures;
            rep.structures = lr.structures;
            rep.lift = std::move(lr);
        } else {
            ExactSearchResult res = exact_search(g, aut, opts);
            rep.prestructures = res.prestructures;
            rep.structures = res.structures;
            if (rep.screen_negative && (res.prestructures.total_count != 0 || res.structures.total_count != 0))
                throw InvariantError(entry.label + ": screen said no prestructures but the search found some");
        }

        if (want) {
            if (aut.order() != want->aut_order) diff("|Aut|", want->aut_order, aut.order());
            if (rep.profile.is_monolithic != want->monolithic) diff("monolithic", want->monolithic, rep.profile.is_monolithic);
            if (want->monolithic && rep.profile.monolith_order != want->monolith_order)
                diff("monolith order", want->monolith_order, rep.profile.monolith_order);
            bool cct = rep.profile.cct == CctStatus::Cct;
            if (cct != want->cct) diff("CCT", want->cct, cct);
            if (rep.profile.is_extraspecial != want->extraspecial) diff("extra-special", want->extraspecial, rep.profile.is_extraspecial);
            std::string niw = want->nilpotency ? std::to_string(*want->nilpotency) : "non-nilpotent";
            if (rep.profile.nilpotency_str() != niw) diff("nilpotency class", niw, rep.profile.nilpotency_str());
            if (rep.profile.center_order != want->center_order) diff("|Z|", want->center_order, rep.profile.center_order);
            if (rep.profile.derived_order != want->derived_order) diff("|[G,G]|", want->derived_order, rep.profile.derived_order);
            if (!detail::subgroup_matches_descriptor(g, center(g).bits, want->center_desc, cat))
                diff("center structure", want->center_desc, std::string("no match"));
            if (!detail::subgroup_matches_descriptor(g, derived_subgroup(g).bits, want->derived_desc, cat))
                diff("derived structure", want->derived_desc, std::string("no match"));
            if (rep.prestructures->orbit_count != want->prestructure_orbits)
                diff("prestructure orbits", want->prestructure_orbits, rep.prestructures->orbit_count);
            if (rep.structures->orbit_count != want->structure_orbits)
                diff("structure orbits", want->structure_orbits, rep.structures->orbit_count);
            if (rep.structures->total_count != want->structure_total)
                diff("structure total", want->structure_total, rep.structures->total_count);
            if (want->prestructure_orbits > 0) {
                // certificates behind the genus bound: n = 2 only, z central,
                // C_G(K) = Z(G) throughout
                if (rep.prestructures->n_values_seen != std::set<int>{2})
                    rep.expected_diff.push_back("n values seen differ from {2}");
                if (!rep.prestructures->z_always_central) rep.expected_diff.push_back("z not always central");
                if (!rep.prestructures->k_centralizer_always_center) rep.expected_diff.push_back("C_G(K) = Z(G) certificate failed");
            }
            for (const auto& [kw, target_label] : want->quotient_targets) {
                ElementSet nsub = subgroup_closure(g, {detail::eval_gen_word(g, kw)});
                QuotientMap q = quotient(g, nsub);
                const CatalogEntry* te = find_entry(cat, target_label);
                FiniteGroup target = build_group(te->presentation);
                if (!is_isomorphic(q.target, target))
                    diff("quotient by <" + kw + ">", target_label, "not isomorphic");
            }
            if (!want->note.empty()) rep.notes.push_back(want->note);
        }
    } catch (const InvariantError&) {
        throw; // internal inconsistencies abort the run
    } catch (const std::exception& e) {
        rep.error = e.what();
    }
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline RunArtifact run_catalog(const CatalogFilter& filter, SearchOptions opts = {}) {
    std::vector<CatalogEntry> cat = builtin_catalog();
    RunArtifact art;
    for (const auto& entry : cat) {
        if (filter.label && entry.label != *filter.label) continue;
        if (filter.order && entry.presentation.group_order() != *filter.order) continue;
        if (!filter.include_auxiliary && entry.auxiliary) continue;
        EntryReport rep = run_entry(entry, cat, opts);
        if (!rep.error.empty()) ++art.failures;
        art.mismatches += rep.expected_diff.size();
        art.entries.push_back(std::move(rep));
    }
    return art;
}

// ---------------------------------------------------------------------------
// report serialization
// ---------------------------------------------------------------------------

inline nlohmann::json search_report_json(const SearchReport& r) {
    nlohmann::json j;
    j["kind"] = kind_name(r.kind);
    j["mode"] = r.mode == SearchMode::Exact ? "exact" : "lift";
    j["total"] = r.total_count;
    j["orbits"] = r.orbit_count;
    nlohmann::json hist = nlohmann::json::object();
    for (auto& [stab, cnt] : r.orbit_stabilizer_histogram) hist[std::to_string(stab)] = cnt;
    j["stabilizer_histogram"] = hist;
    j["n_values"] = r.n_values_seen;
    j["flags"] = {{"z_always_central", r.z_always_central}, {"k_centralizer_always_center", r.k_centralizer_always_center}};
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

inline nlohmann::json entry_report_json(const EntryReport& r) {
    nlohmann::json j;
    j["label"] = r.label;
    j["order"] = r.order;
    if (!r.error.empty()) {
        j["error"] = r.error;
        return j;
    }
    j["profile"] = {
        {"abelian", r.profile.is_abelian},
        {"cct", r.profile.cct == CctStatus::Cct},
        {"cct_applicable", r.profile.cct != CctStatus::NotApplicable},
        {"monolithic", r.profile.is_monolithic},
        {"monolith_order", r.profile.monolith_order},
        {"extraspecial", r.profile.is_extraspecial},
        {"nilpotency_class", r.profile.nilpotency_str()},
        {"center_order", r.profile.center_order},
        {"derived_order", r.profile.derived_order},
    };
    if (r.profile.aut_order) j["profile"]["aut_order"] = *r.profile.aut_order;
    j["screen"] = r.screen_detail;
    nlohmann::json searches = nlohmann::json::array();
    if (r.prestructures) searches.push_back(search_report_json(*r.prestructures));
    if (r.structures) searches.push_back(search_report_json(*r.structures));
    j["search"] = searches;
    j["expected_diff"] = r.expected_diff;
    if (!r.notes.empty()) j["notes"] = r.notes;
    j["timing"] = {{"elapsed_seconds", r.elapsed_seconds}}; // excluded from byte comparisons
    return j;
}

/// CSV summary, one row per entry mirroring the reference table columns.
inline std::string run_to_csv(const RunArtifact& art) {
    std::ostringstream os;
    os << "label,order,monolithic,prestructure_orbits,structure_orbits,structure_total,aut_order,matches\n";
    for (const auto& e : art.entries) {
        if (!e.error.empty()) {
            os << e.label << ",,,,,,,error\n";
            continue;
        }
        os << e.label << ',' << e.order << ',' << (e.profile.is_monolithic ? "yes" : "no") << ','
           << (e.prestructures ? std::to_string(e.prestructures->orbit_count) : "") << ','
           << (e.structures ? std::to_string(e.structures->orbit_count) : "") << ','
           << (e.structures ? std::to_string(e.structures->total_count) : "") << ','
           << (e.profile.aut_order ? std::to_string(*e.profile.aut_order) : "") << ','
           << (e.expected_diff.empty() ? "yes" : "NO") << "\n";
    }
    return os.str();
}

} // namespace ddks
