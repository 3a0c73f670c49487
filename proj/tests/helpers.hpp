#pragma once

#include <stdexcept>
#include <string>

#include "ddks/catalog.hpp"

namespace testutil {

inline const ddks::data::CatalogRow& row(const std::string& label) {
    for (const auto& r : ddks::data::catalog_rows)
        if (label == r.label) return r;
    throw std::runtime_error("no catalog row " + label);
}

inline ddks::FiniteGroup build(const std::string& label) {
    return ddks::build_group(ddks::parse_presentation(row(label).presentation));
}

// small ad-hoc groups for edge cases
inline ddks::FiniteGroup z2() {
    return ddks::build_group(ddks::parse_presentation("group \"Z2\"\ngens 1\norder 1 2\nend\n"));
}

inline ddks::FiniteGroup z6() {
    return ddks::build_group(ddks::parse_presentation("group \"Z6\"\ngens 2\norder 1 2\norder 2 3\nend\n"));
}

inline ddks::FiniteGroup z2xz2() {
    return ddks::build_group(ddks::parse_presentation("group \"Z2xZ2\"\ngens 2\norder 1 2\norder 2 2\nend\n"));
}

// Z3 x S4, order 72: the S4 presentation with a central order-3 generator
inline ddks::FiniteGroup z3xs4() {
    return ddks::build_group(ddks::parse_presentation(
        "group \"Z3xS4\"\n"
        "gens 5\n"
        "order 1 2\norder 2 3\norder 3 2\norder 4 2\norder 5 3\n"
        "comm 1 2 = x2\ncomm 1 4 = x3\ncomm 2 3 = x3 x4\ncomm 2 4 = x3\n"
        "end\n"));
}

// elementary abelian of order 256, above the exact-search cap
inline ddks::FiniteGroup z2pow8() {
    std::string text = "group \"Z2^8\"\ngens 8\n";
    for (int i = 1; i <= 8; ++i) text += "order " + std::to_string(i) + " 2\n";
    text += "end\n";
    return ddks::build_group(ddks::parse_presentation(text), 1024);
}

} // namespace testutil
