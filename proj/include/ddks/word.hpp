#pragma once

#include <string>
#include <vector>

namespace ddks {

/// One letter of a word: a generator index (1-based) with a nonzero exponent.
struct Letter {
    int gen = 0;
    int exp = 0;
    bool operator==(const Letter&) const = default;
};

/// A word in abstract generators. The empty word is the identity.
struct Word {
    std::vector<Letter> letters;

    bool is_identity() const { return letters.empty(); }

    Word inverse() const {
        Word w;
        w.letters.reserve(letters.size());
        for (auto it = letters.rbegin(); it != letters.rend(); ++it)
            w.letters.push_back({it->gen, -it->exp});
        return w;
    }

    /// Renders e.g. "x4^-1 x5", or "1" for the empty word.
    std::string str() const {
        if (letters.empty()) return "1";
        std::string s;
        for (const auto& l : letters) {
            if (!s.empty()) s += ' ';
            s += 'x' + std::to_string(l.gen);
            if (l.exp != 1) s += '^' + std::to_string(l.exp);
        }
        return s;
    }

    bool operator==(const Word&) const = default;
};

} // namespace ddks
