// Copyright 2026 The Strata Authors
// SPDX-License-Identifier: Apache-2.0

#include "strata/text.hpp"

#include <cctype>
#include <cstdint>

namespace strata::text {

namespace {

// Latin-1 supplement folding for the U+00C0..U+00FF block, indexed by
// (code point - 0xC0). Multi-character entries expand (ß -> ss, æ -> ae).
const char* const kLatin1Fold[] = {
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",    // C0-CF
    "d", "n", "o", "o", "o", "o", "o",  "",  "o", "u", "u", "u", "u", "y", "th", "ss",  // D0-DF
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",    // E0-EF
    "d", "n", "o", "o", "o", "o", "o",  "",  "o", "u", "u", "u", "u", "y", "th", "y",   // F0-FF
};

bool is_word_byte(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

}  // namespace

std::string fold(const std::string& token) {
    std::string out;
    out.reserve(token.size());
    for (std::size_t i = 0; i < token.size();) {
        const unsigned char c = static_cast<unsigned char>(token[i]);
        if (c < 0x80) {
            out.push_back(static_cast<char>(std::tolower(c)));
            ++i;
            continue;
        }
        // two-byte sequences C3 80..C3 BF cover U+00C0..U+00FF
        if (c == 0xC3 && i + 1 < token.size()) {
            const unsigned char c2 = static_cast<unsigned char>(token[i + 1]);
            if (c2 >= 0x80 && c2 <= 0xBF) {
                const char* folded = kLatin1Fold[c2 - 0x80];
                if (*folded != '\0') {
                    out += folded;
                } else {
                    out.push_back(static_cast<char>(c));
                    out.push_back(static_cast<char>(c2));
                }
                i += 2;
                continue;
            }
        }
        out.push_back(static_cast<char>(c));
        ++i;
    }
    return out;
}

std::vector<std::string> tokenize(const std::string& textual, Normalize mode) {
    std::vector<std::string> tokens;
    std::string current;
    for (const char ch : textual) {
        if (is_word_byte(static_cast<unsigned char>(ch))) {
            current.push_back(ch);
        } else if (!current.empty()) {
            tokens.push_back(mode == Normalize::Fold ? fold(current) : current);
            current.clear();
        }
    }
    if (!current.empty()) {
        tokens.push_back(mode == Normalize::Fold ? fold(current) : current);
    }
    return tokens;
}

}  // namespace strata::text
