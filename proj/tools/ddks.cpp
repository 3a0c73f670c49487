// Command-line front door: build and inspect groups, run the screens and
// structure searches, verify tuples against the braid relation schema, and
// reproduce the classification tables.
//
// Exit codes: 0 success (and all expectations met), 1 expectation mismatch,
// 2 usage error, 3 internal invariant violation.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ddks/catalog.hpp"
#include "ddks/lifting.hpp"
#include "ddks/search.hpp"

using namespace ddks;
namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << content;
}

/// Resolves a group selector: a catalog label, a presentation file or an
/// external multiplication-table file (sniffed by its first directive).
FiniteGroup resolve_group(const std::string& selector) {
    if (fs::exists(selector)) {
        std::string text = read_file(selector);
        std::istringstream in(text);
        std::string tok;
        while (in >> tok) {
            if (tok[0] == '#') {
                std::getline(in, tok);
                continue;
            }
            break;
        }
        if (tok == "group") return build_group(parse_presentation(text));
        if (tok == "order") return ingest_table(text, fs::path(selector).filename().string());
        throw UsageError(selector + ": not a presentation file ('group ...') or table file ('order N')");
    }
    auto cat = builtin_catalog();
    const CatalogEntry* e = find_entry(cat, selector);
    if (!e && selector.find(',') != std::string::npos && selector.find('(') == std::string::npos)
        e = find_entry(cat, "G(" + selector + ")"); // accept "32,49" for G(32,49)
    if (!e) throw UsageError("unknown group selector '" + selector + "' (not a file, not a catalog label)");
    return build_group(e->presentation);
}

const CatalogEntry* catalog_entry_for(const std::string& selector) {
    static std::vector<CatalogEntry> cat = builtin_catalog();
    const CatalogEntry* e = find_entry(cat, selector);
    if (!e && selector.find(',') != std::string::npos) e = find_entry(cat, "G(" + selector + ")");
    return e;
}

std::vector<elem> parse_tuple(const FiniteGroup& g, const std::string& text) {
    std::vector<elem> entries;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t semi = text.find(';', pos);
        std::string part = text.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
        if (!part.empty()) {
            if (part.find(',') != std::string::npos) {
                if (!g.has_normal_forms()) throw UsageError("exponent-vector coordinates need a presentation-built group");
                std::vector<int> exps;
                std::istringstream is(part);
                std::string tok;
                while (std::getline(is, tok, ',')) exps.push_back(std::stoi(tok));
                entries.push_back(g.element_from_exponents(exps));
            } else {
                long v = std::stol(part);
                if (v < 0 || std::uint32_t(v) >= g.order()) throw UsageError("element index " + part + " out of range");
                entries.push_back(elem(v));
            }
        }
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    return entries;
}

std::string tuple_str(const FiniteGroup& g, const StructureTuple& t) {
    std::string s;
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
        if (i) s += ';';
        s += g.element_str(t.entries[i]);
    }
    return s;
}

int cmd_analyze(const std::string& selector, bool no_aut, const std::string& json_path) {
    FiniteGroup g = resolve_group(selector);
    std::optional<std::uint64_t> aut_order;
    if (!no_aut && g.order() <= 128) aut_order = automorphism_group(g).order();
    GroupProfile p = compute_profile(g, aut_order);
    std::cout << "group: " << g.label() << "\n";
    std::cout << "order: " << g.order() << "\n";
    std::cout << "abelian: " << (p.is_abelian ? "yes" : "no") << "\n";
    std::cout << "center order: " << p.center_order << "\n";
    std::cout << "derived subgroup order: " << p.derived_order << "\n";
    if (p.cct == CctStatus::NotApplicable)
        std::cout << "CCT: n/a (abelian)\n";
    else if (p.cct == CctStatus::Cct)
        std::cout << "CCT: yes\n";
    else {
        auto w = is_cct(g).witness;
        std::cout << "CCT: no";
        if (w)
            std::cout << "  (witness x=" << g.element_str(w->x) << " y=" << g.element_str(w->y)
                      << " z=" << g.element_str(w->z) << ": [x,y]=[y,z]=1, [x,z]!=1)";
        std::cout << "\n";
    }
    std::cout << "monolithic: " << (p.is_monolithic ? "yes (monolith order " + std::to_string(p.monolith_order) + ")" : "no") << "\n";
    std::cout << "extra-special: " << (p.is_extraspecial ? "yes" : "no") << "\n";
    std::cout << "nilpotency class: " << p.nilpotency_str() << "\n";
    if (aut_order) std::cout << "|Aut|: " << *aut_order << "\n";
    ScreenResult sr = screen_group(g);
    for (const auto& d : sr.detail) std::cout << "screen: " << d << "\n";
    if (!json_path.empty()) {
        nlohmann::json j;
        j["label"] = g.label();
        j["order"] = g.order();
        j["profile"] = {{"abelian", p.is_abelian},
                        {"cct", p.cct == CctStatus::Cct},
                        {"monolithic", p.is_monolithic},
                        {"monolith_order", p.monolith_order},
                        {"extraspecial", p.is_extraspecial},
                        {"nilpotency_class", p.nilpotency_str()},
                        {"center_order", p.center_order},
                        {"derived_order", p.derived_order}};
        if (aut_order) j["profile"]["aut_order"] = *aut_order;
        write_file(json_path, j.dump(2) + "\n");
    }
    return 0;
}

int cmd_search(const std::string& selector, const std::string& kind, const std::string& mode,
               std::optional<int> n_filter, int workers, bool emit_reps, const std::string& out_path) {
    SearchOptions opts;
    opts.kind = kind == "structures" ? SearchKind::Structures : SearchKind::Prestructures;
    opts.n_filter = n_filter;
    opts.worker_count = workers;
    opts.emit_representatives = emit_reps;

    FiniteGroup g = resolve_group(selector);
    SearchReport rep;
    std::optional<LiftReport> lift;

    if (mode == "lift") {
        const CatalogEntry* e = catalog_entry_for(selector);
        if (!e || !e->expected || e->expected->mode != SearchMode::Lift)
            throw UsageError("lift mode needs a catalog entry with a designated base quotient");
        auto cat = builtin_catalog();
        FiniteGroup base = build_group(find_entry(cat, e->expected->lift_base)->presentation);
        AutGroup base_aut = automorphism_group(base);
        SearchOptions bopts = opts;
        bopts.emit_representatives = true;
        ExactSearchResult base_res = exact_search(base, base_aut, bopts);
        ElementSet kernel = subgroup_closure(g, {detail::eval_gen_word(g, e->expected->lift_kernel)});
        AutGroup aut = automorphism_group(g);
        lift = count_via_lifting(g, kernel, base, base_res, aut, opts);
        rep = opts.kind == SearchKind::Structures ? lift->structures : lift->prestructures;
    } else {
        AutGroup aut = automorphism_group(g);
        ExactSearchResult res = exact_search(g, aut, opts);
        rep = opts.kind == SearchKind::Structures ? res.structures : res.prestructures;
    }

    std::cout << "group: " << g.label() << "\n";
    std::cout << "kind: " << kind_name(rep.kind) << "\n";
    std::cout << "mode: " << (rep.mode == SearchMode::Lift ? "lift" : "exact") << "\n";
    std::cout << "orbits: " << rep.orbit_count << "\n";
    std::cout << "total: " << rep.total_count << "\n";
    std::cout << "stabilizer histogram:";
    for (auto& [s, c] : rep.orbit_stabilizer_histogram) std::cout << " " << s << ":" << c;
    std::cout << "\nn values:";
    for (int n : rep.n_values_seen) std::cout << " " << n;
    std::cout << "\nz always central: " << (rep.z_always_central ? "yes" : "no") << "\n";
    std::cout << "C_G(K) always Z(G): " << (rep.k_centralizer_always_center ? "yes" : "no") << "\n";
    for (auto& n : rep.notes) std::cout << "note: " << n << "\n";
    if (lift) {
        std::cout << "lift base: " << lift->base_label << " (kernel order " << lift->kernel_order << ")\n";
        std::cout << "lifts per base tuple: " << lift->lift_multiplicity
                  << ", generating: " << lift->generating_lifts_per_tuple
                  << ", trivial-lift stabilizer order: " << lift->trivial_lift_stabilizer_order << "\n";
        std::cout << "factorized cross-check total: " << lift->cross_check_total << "\n";
    }
    if (emit_reps && rep.representatives) {
        std::cout << "representatives: " << rep.representatives->size() << "\n";
        if (out_path.empty())
            for (auto& t : *rep.representatives) std::cout << tuple_str(g, t) << "\n";
    }
    if (!out_path.empty()) {
        nlohmann::json j = search_report_json(rep);
        j["label"] = g.label();
        if (rep.representatives) {
            nlohmann::json reps = nlohmann::json::array();
            for (auto& t : *rep.representatives) reps.push_back(tuple_str(g, t));
            j["representatives"] = reps;
        }
        j["timing"] = {{"elapsed_seconds", rep.elapsed_seconds}};
        write_file(out_path, j.dump(2) + "\n");
    }
    return 0;
}

int cmd_verify(const std::string& selector, int b, const std::string& tuple_text, const std::string& require) {
    FiniteGroup g = resolve_group(selector);
    std::vector<elem> entries = parse_tuple(g, tuple_text);
    if (int(entries.size()) != 4 * b + 1)
        throw UsageError("tuple has " + std::to_string(entries.size()) + " entries, genus " + std::to_string(b) + " needs " + std::to_string(4 * b + 1));
    StructureTuple t = StructureTuple::of(g, b, std::move(entries));
    Require req = require == "prestructure" ? Require::Prestructure : Require::Structure;
    VerifyReport vr = verify_tuple(g, t, req);
    for (const auto& rc : vr.relations)
        std::cout << rc.label << ": " << (rc.pass ? "ok" : "FAIL") << "  lhs=" << g.element_str(rc.lhs_value)
                  << " rhs=" << g.element_str(rc.rhs_value) << "\n";
    std::cout << "o(z) = " << g.order_of(t.entries.back()) << " (declared n = " << t.n << "): "
              << (vr.order_ok ? "ok" : "FAIL") << "\n";
    if (vr.generation_checked)
        std::cout << "generates the group: " << (vr.generation_ok ? "ok" : "FAIL") << "\n";
    std::cout << (vr.pass ? "PASS" : "FAIL") << " (type (" << b << ", " << t.n << "))\n";
    return vr.pass ? 0 : 1;
}

int cmd_catalog(std::optional<std::uint32_t> order, const std::string& label, int workers,
                const std::string& out_dir, bool skip_auxiliary) {
    CatalogFilter f;
    f.order = order;
    if (!label.empty()) {
        const CatalogEntry* e = catalog_entry_for(label);
        f.label = e ? e->label : label;
    }
    f.include_auxiliary = !skip_auxiliary;
    SearchOptions opts;
    opts.worker_count = workers;
    RunArtifact art = run_catalog(f, opts);
    if (art.entries.empty()) throw UsageError("no catalog entry matches the filter");

    std::cout << "label          order  monolithic  prestructures/Aut  structures/Aut  structure total  |Aut|  ok\n";
    for (const auto& e : art.entries) {
        if (!e.error.empty()) {
            std::cout << e.label << "  ERROR: " << e.error << "\n";
            continue;
        }
        std::ostringstream line;
        line.width(13);
        line << std::left << e.label;
        line << "  " << e.order << "  " << (e.profile.is_monolithic ? "yes" : "no ") << "  "
             << (e.prestructures ? e.prestructures->orbit_count : 0) << "  "
             << (e.structures ? e.structures->orbit_count : 0) << "  "
             << (e.structures ? e.structures->total_count : 0) << "  "
             << (e.profile.aut_order ? *e.profile.aut_order : 0) << "  "
             << (e.expected_diff.empty() ? "yes" : "MISMATCH");
        std::cout << line.str() << "\n";
        for (const auto& d : e.expected_diff) std::cout << "    mismatch: " << d << "\n";
        for (const auto& n : e.notes) std::cout << "    note: " << n << "\n";
    }
    std::cout << (art.ok() ? "all expectations met" : "MISMATCHES PRESENT") << "\n";

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        for (const auto& e : art.entries) {
            std::string name = e.label;
            for (auto& c : name)
                if (c == '(' || c == ')' || c == ',') c = '_';
            write_file((fs::path(out_dir) / (name + ".json")).string(), entry_report_json(e).dump(2) + "\n");
        }
        write_file((fs::path(out_dir) / "summary.csv").string(), run_to_csv(art));
    }
    return art.ok() ? 0 : 1;
}

int cmd_emit_presentation(const std::string& selector, const std::string& out_path) {
    if (fs::exists(selector)) {
        FiniteGroup g = resolve_group(selector);
        if (!g.presentation()) throw UsageError("group has no presentation to emit (table input)");
        std::string text = emit_presentation(*g.presentation());
        if (out_path.empty())
            std::cout << text;
        else
            write_file(out_path, text);
        return 0;
    }
    const CatalogEntry* e = catalog_entry_for(selector);
    if (!e) throw UsageError("unknown catalog label '" + selector + "'");
    std::string text = emit_presentation(e->presentation);
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-group search engine for diagonal double Kodaira structures"};
    app.require_subcommand(1);

    std::string selector, kind = "prestructures", mode = "exact", tuple_text, require = "structure";
    std::string out_path, json_path, label;
    int b = 2, workers = 0;
    bool no_aut = false, emit_reps = false, skip_aux = false;
    std::optional<int> n_filter;
    std::optional<std::uint32_t> order_filter;

    auto* analyze = app.add_subcommand("analyze", "profile a group: predicates, center, |Aut|");
    analyze->add_option("selector", selector, "catalog label | presentation file | table file")->required();
    analyze->add_flag("--no-aut", no_aut, "skip the automorphism group");
    analyze->add_option("--json", json_path, "also write the profile as JSON");

    auto* search = app.add_subcommand("search", "count prestructures or structures");
    search->add_option("selector", selector)->required();
    search->add_option("--kind", kind)->check(CLI::IsMember({"prestructures", "structures"}));
    search->add_option("--mode", mode)->check(CLI::IsMember({"exact", "lift"}));
    search->add_option("--n", n_filter, "restrict to z of this order");
    search->add_option("--workers", workers, "worker threads (default: hardware)");
    search->add_flag("--emit-representatives", emit_reps);
    search->add_option("--out", out_path, "write the report as JSON");

    auto* verify = app.add_subcommand("verify", "check a tuple against the braid relations");
    verify->add_option("selector", selector)->required();
    verify->add_option("--b", b, "genus (tuple length 4b+1)");
    verify->add_option("--tuple", tuple_text, "semicolon-separated entries; each an exponent vector 'e1,e2,...' or an element index")->required();
    verify->add_option("--require", require)->check(CLI::IsMember({"prestructure", "structure"}));

    auto* catalog = app.add_subcommand("catalog", "reproduce the classification tables");
    catalog->add_option("--order", order_filter, "only entries of this order");
    catalog->add_option("--label", label, "only this entry");
    catalog->add_option("--workers", workers);
    catalog->add_option("--out", out_path, "directory for JSON reports and the CSV summary");
    catalog->add_flag("--no-auxiliary", skip_aux);

    auto* emitp = app.add_subcommand("emit-presentation", "print a group's presentation file");
    emitp->add_option("selector", selector)->required();
    emitp->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(analyze)) return cmd_analyze(selector, no_aut, json_path);
        if (app.got_subcommand(search)) return cmd_search(selector, kind, mode, n_filter, workers, emit_reps, out_path);
        if (app.got_subcommand(verify)) return cmd_verify(selector, b, tuple_text, require);
        if (app.got_subcommand(catalog)) return cmd_catalog(order_filter, label, workers, out_path, skip_aux);
        if (app.got_subcommand(emitp)) return cmd_emit_presentation(selector, out_path);
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvariantError& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const BuildError& e) {
        std::cerr << "build error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
