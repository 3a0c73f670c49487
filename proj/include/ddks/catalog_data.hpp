#pragma once

// Built-in group library: power-commutator presentations in the presentation
// file grammar, together with the reference metrics each entry is checked
// against. Reference values are data, not code, so corrections are one-line
// edits here.

namespace ddks::data {

struct CatalogRow {
    const char* label;
    const char* presentation;
    bool auxiliary;

    long long aut_order;
    bool monolithic;
    int monolith_order; // 0 when non-monolithic
    bool cct;
    bool extraspecial;
    int nilpotency_class; // -1 = non-nilpotent
    int center_order;
    const char* center_desc;
    int derived_order;
    const char* derived_desc; // "" = order check only

    long long prestructure_orbits;
    long long structure_orbits;
    long long structure_total;

    const char* search_mode;      // "exact" | "lift"
    const char* lift_base;        // base quotient label for lift mode
    const char* lift_kernel;      // generating word of the kernel, e.g. "x6"
    const char* quotient_targets; // "word->label|word->label", "" if none
    const char* note;
};

// clang-format off
inline constexpr CatalogRow catalog_rows[] = {

{"G(32,49)", R"PC(group "G(32,49)"
gens 5
order 1 2
order 2 2
order 3 2
order 4 2
order 5 2
comm 1 2 = x5
comm 2 3 = x5
comm 1 4 = x5
end
)PC", false, 1152, true, 2, false, true, 2, 2, "Z2", 2, "Z2", 4480, 1920, 2211840, "exact", "", "", "", ""},

{"G(32,50)", R"PC(group "G(32,50)"
gens 5
order 1 2
order 2 2
order 3 2
order 4 2
order 5 2
pow 2 = x5
pow 3 = x5
comm 1 2 = x5
comm 2 3 = x5
comm 1 4 = x5
end
)PC", false, 1920, true, 2, false, true, 2, 2, "Z2", 2, "Z2", 2688, 1152, 2211840, "exact", "", "", "", ""},

{"G(64,134)", R"PC(group "G(64,134)"
gens 6
order 1 2
order 2 2
order 3 2
order 4 2
order 5 2
order 6 2
pow 4 = x6
comm 1 2 = x4^-1
comm 1 3 = x5
comm 1 4 = x6
comm 2 4 = x6
comm 3 4 = x6
comm 2 5 = x6
end
)PC", false, 256, true, 2, false, false, 3, 2, "Z2", 8, "Z2xZ4", 40320, 0, 0, "exact", "", "", "", ""},

{"G(64,135)", R"PC(group "G(64,135)"
gens 6
order 1 2
order 2 2
order 3 2
order 4 2
order 5 2
order 6 2
pow 3 = x6
pow 4 = x6
comm 1 2 = x4^-1
comm 1 3 = x5
comm 1 4 = x6
comm 2 4 = x6
comm 3 4 = x6
comm 2 5 = x6
end
)PC", false, 256, true, 2, false, false, 3, 2, "Z2", 8, "Z2xZ4", 40320, 0, 0, "exact", "", "", "", ""},

{"G(64,136)", R"PC(group "G(64,136)"
gens 6
order 1 2
order 2 2
order 3 2
order 4 2
order 5 2
order 6 2
pow 1 = x6
pow 4 = x6
comm 1 2 = x4^-1
comm 1 3 = x5
comm 1 4 = x6
comm 2 4 = x6
comm 3 4 = x6
comm 2 5 = x6
end
)PC", false, 256, true, 2, false, false, 3, 2, "Z2", 8, "Z2xZ4", 40320, 0, 0, "exact", "", "", "", ""},

{"G(64,137)", R"PC(group "G(64,137)"
gens 6
order 1 2
order 2 2
order 3 2
order 4 2
order 5 2
order 6 2
pow 1 = x6
pow 3 = x6
pow 4 = x6
comm 1 2 = x4^-1
comm 1 3 = x5
comm 1 4 = x6
comm 2 4 = x6
comm 3 4 = x6
comm 2 5 = x6
end
)PC", false, 256, true, 2, false, false, 3, 2, "Z2", 8, "Z2xZ4", 40320, 0, 0, "exact", "", "", "", ""},

{"G(64,138)", R"PC(group "G(64,138)"
gens 6
order 1 2
order 2 2
order 3 2
order 4 2
order 5 2
order 6 2
comm 1 2 = x4
comm 1 3 = x5
comm 3 4 = x6
comm 2 5 = x6
end
)PC", false, 384, true, 2, false, false, 3, 2, "Z2", 8, "Z2xZ2xZ2", 26880, 0, 0, "exact", "", "", "", ""},

{"G(64,139)", R"PC(group "G(64,139)"
gens 6
order 1 2
order 2 2
order 3 2
order 4 2
order 5 2
order 6 2
pow 1 = x6
comm 1 2 = x4
comm 1 3 = x5
comm 3 4 = x6
comm 2 5 = x6
end
)PC", false, 384, true, 2, false, false, 3, 2, "Z2", 8, "Z2xZ2xZ2", 26880, 0, 0, "exact", "", "", "", ""},

{"G(64,199)", R"PC(group "G(64,199)"
gens 6
order 1 2
order 2 2
order 3 2
order 4 2
order 5 2
order 6 2
pow 1 = x6
comm 1 2 = x5
comm 2 3 = x5
comm 1 4 = x5
end
)PC", false, 4096, false, 0, false, false, 2, 4, "Z2xZ2", 2, "Z2", 322560, 138240, 566231040, "exact", "", "", "x6->G(32,49)|x5 x6->G(32,49)", ""},

{"G(64,200)", R"PC(group "G(64,200)"
gens 6
order 1 2
order 2 2
order 3 2
order 4 2
order 5 2
order 6 2
pow 1 = x6
pow 2 = x5
pow 3 = x5
comm 1 2 = x5
comm 2 3 = x5
comm 1 4 = x5
end
)PC", false, 12288, false, 0, false, false, 2, 4, "Z2xZ2", 2, "Z2", 107520, 46080, 566231040, "exact", "", "", "x6->G(32,50)|x5 x6->G(32,50)", ""},

{"G(64,201)", R"PC(group "G(64,201)"
gens 6
order 1 2
order 2 2
order 3 2
order 4 2
order 5 2
order 6 2
pow 1 = x6
pow 4 = x5
comm 1 2 = x5
comm 2 3 = x5
comm 1 4 = x5
end
)PC", false, 3072, false, 0, false, false, 2, 4, "Z2xZ2", 2, "Z2", 430080, 184320, 566231040, "exact", "", "", "x6->G(32,49)|x5 x6->G(32,50)", ""},

{"G(64,249)", R"PC(group "G(64,249)"
gens 6
order 1 2
order 2 2
order 3 2
order 4 2
order 5 2
order 6 2
pow 1 = x5
pow 5 = x6
comm 2 3 = x6
comm 1 4 = x6
end
)PC", false, 1536, true, 2, false, false, 2, 4, "Z4", 2, "Z2", 860160, 368640, 566231040, "exact", "", "", "", ""},

{"G(64,257)", R"PC(group "G(64,257)"
gens 6
order 1 2
order 2 2
order 3 2
order 4 2
order 5 2
order 6 2
pow 5 = x6
comm 1 2 = x5^-1
comm 3 4 = x6
comm 1 5 = x6
comm 2 5 = x6
end
)PC", false, 768, true, 2, false, false, 3, 2, "Z2", 4, "Z4", 26880, 0, 0, "exact", "", "", "", ""},

{"G(64,258)", R"PC(group "G(64,258)"
gens 6
order 1 2
order 2 2
order 3 2
order 4 2
order 5 2
order 6 2
pow 1 = x6
pow 5 = x6
comm 1 2 = x5^-1
comm 3 4 = x6
comm 1 5 = x6
comm 2 5 = x6
end
)PC", false, 384, true, 2, false, false, 3, 2, "Z2", 4, "Z4", 53760, 0, 0, "exact", "", "", "", ""},

{"G(64,259)", R"PC(group "G(64,259)"
gens 6
order 1 2
order 2 2
order 3 2
order 4 2
order 5 2
order 6 2
pow 1 = x6
pow 2 = x6
pow 5 = x6
comm 1 2 = x5^-1
comm 3 4 = x6
comm 1 5 = x6
comm 2 5 = x6
end
)PC", false, 768, true, 2, false, false, 3, 2, "Z2", 4, "Z4", 26880, 0, 0, "exact", "", "", "", ""},

{"G(64,264)", R"PC(group "G(64,264)"
gens 6
order 1 2
order 2 2
order 3 2
order 4 2
order 5 2
order 6 2
comm 1 2 = x5
comm 2 3 = x5
comm 1 4 = x5
end
)PC", false, 36864, false, 0, false, false, 2, 4, "Z2xZ2", 2, "Z2", 38080, 14400, 530841600, "exact", "", "", "x6->G(32,49)|x5 x6->G(32,49)", ""},

{"G(64,265)", R"PC(group "G(64,265)"
gens 6
order 1 2
order 2 2
order 3 2
order 4 2
order 5 2
order 6 2
pow 2 = x5
pow 3 = x5
comm 1 2 = x5
comm 2 3 = x5
comm 1 4 = x5
end
)PC", false, 61440, false, 0, false, false, 2, 4, "Z2xZ2", 2, "Z2", 22848, 8640, 530841600, "exact", "", "", "x6->G(32,50)|x5 x6->G(32,50)", ""},

{"G(64,266)", R"PC(group "G(64,266)"
gens 6
order 1 2
order 2 2
order 3 2
order 4 2
order 5 2
order 6 2
pow 5 = x6
comm 1 2 = x6
comm 2 3 = x6
comm 1 4 = x6
end
)PC", false, 23040, true, 2, false, false, 2, 4, "Z4", 2, "Z2", 60928, 23040, 530841600, "exact", "", "", "", ""},

{"G(96,201)", R"PC(group "G(96,201)"
gens 6
order 1 2
order 2 2
order 3 3
order 4 2
order 5 2
order 6 2
pow 1 = x6
pow 2 = x6
pow 4 = x6
pow 5 = x6
comm 1 2 = x6
comm 3 4 = x5^-1
comm 3 5 = x4 x5^-1
comm 4 5 = x6
end
)PC", false, 576, true, 2, false, false, -1, 2, "Z2", 8, "Q8", 8960, 0, 0, "exact", "", "", "", ""},

{"G(96,202)", R"PC(group "G(96,202)"
gens 6
order 1 2
order 2 2
order 3 3
order 4 2
order 5 2
order 6 2
pow 4 = x6
pow 5 = x6
comm 1 2 = x6
comm 3 4 = x5^-1
comm 3 5 = x4 x5^-1
comm 4 5 = x6
end
)PC", false, 192, true, 2, false, false, -1, 2, "Z2", 8, "Q8", 26880, 0, 0, "exact", "", "", "", ""},

{"G(96,204)", R"PC(group "G(96,204)"
gens 6
order 1 3
order 2 2
order 3 2
order 4 2
order 5 2
order 6 2
comm 1 2 = x3
comm 1 3 = x2 x3
comm 1 4 = x5
comm 1 5 = x4 x5
comm 2 5 = x6
comm 3 4 = x6
end
)PC", false, 576, true, 2, false, false, -1, 2, "Z2", 32, "G(32,49)", 8960, 0, 0, "exact", "", "", "", ""},

{"G(96,211)", R"PC(group "G(96,211)"
gens 6
order 1 2
order 2 2
order 3 2
order 4 2
order 5 2
order 6 3
comm 2 3 = x5
comm 1 4 = x5
comm 1 6 = x6
end
)PC", false, 768, false, 0, false, false, -1, 2, "Z2", 6, "Z6", 40320, 0, 0, "exact", "", "", "x6->G(32,49)", ""},

{"G(96,214)", R"PC(group "G(96,214)"
gens 6
order 1 2
order 2 2
order 3 2
order 4 2
order 5 2
order 6 3
pow 2 = x5
pow 3 = x5
comm 2 3 = x5
comm 1 4 = x5
comm 1 6 = x6
end
)PC", false, 2304, false, 0, false, false, -1, 2, "Z2", 6, "Z6", 13440, 0, 0, "exact", "", "", "x6->G(32,50)", ""},

{"G(96,216)", R"PC(group "G(96,216)"
gens 6
order 1 2
order 2 2
order 3 2
order 4 2
order 5 2
order 6 3
pow 4 = x5
comm 2 3 = x5
comm 1 4 = x5
comm 1 6 = x6
end
)PC", false, 1152, false, 0, false, false, -1, 2, "Z2", 6, "Z6", 26880, 0, 0, "exact", "", "", "x6->G(32,49)", ""},

{"G(96,217)", R"PC(group "G(96,217)"
gens 6
order 1 2
order 2 2
order 3 2
order 4 2
order 5 2
order 6 3
pow 2 = x5
pow 3 = x5
pow 4 = x5
comm 2 3 = x5
comm 1 4 = x5
comm 1 6 = x6
end
)PC", false, 1152, false, 0, false, false, -1, 2, "Z2", 6, "Z6", 26880, 0, 0, "exact", "", "", "x6->G(32,50)", ""},

{"G(96,224)", R"PC(group "G(96,224)"
gens 6
order 1 2
order 2 2
order 3 2
order 4 2
order 5 2
order 6 3
comm 1 2 = x5
comm 2 3 = x5
comm 1 4 = x5
end
)PC", false, 2304, false, 0, false, false, 2, 6, "Z6", 2, "Z2", 14698880, 6297600, 14509670400, "lift", "G(32,49)", "x6", "x6->G(32,49)",
 "prestructure orbit count is 14694400 + 4480 = 14698880; the figure 14688980 sometimes quoted for this sum contradicts its own summands and is treated as a misprint"},

{"G(96,225)", R"PC(group "G(96,225)"
gens 6
order 1 2
order 2 2
order 3 2
order 4 2
order 5 2
order 6 3
pow 2 = x5
pow 3 = x5
comm 1 2 = x5
comm 2 3 = x5
comm 1 4 = x5
end
)PC", false, 3840, false, 0, false, false, 2, 6, "Z6", 2, "Z2", 8819328, 3778560, 14509670400, "lift", "G(32,50)", "x6", "x6->G(32,50)", ""},

// auxiliary groups: exercised by the screens, never expected to carry
// prestructures

{"Q8", R"PC(group "Q8"
gens 3
order 1 2
order 2 2
order 3 2
pow 1 = x3
pow 2 = x3
comm 1 2 = x3
end
)PC", true, 24, true, 2, true, true, 2, 2, "Z2", 2, "Z2", 0, 0, 0, "exact", "", "", "", ""},

{"D4", R"PC(group "D4"
gens 3
order 1 2
order 2 2
order 3 2
pow 2 = x3
comm 1 2 = x3
end
)PC", true, 8, true, 2, true, true, 2, 2, "Z2", 2, "Z2", 0, 0, 0, "exact", "", "", "", ""},

{"S4", R"PC(group "S4"
gens 4
order 1 2
order 2 3
order 3 2
order 4 2
comm 1 2 = x2
comm 1 4 = x3
comm 2 3 = x3 x4
comm 2 4 = x3
end
)PC", true, 24, true, 4, false, false, -1, 1, "1", 12, "", 0, 0, 0, "exact", "", "", "", ""},

};
// clang-format on

} // namespace ddks::data
