// Copyright 2026 The Strata Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace strata::text {

/// Token normalization applied before matching.
enum class Normalize {
    None,  ///< byte-exact tokens
    Fold,  ///< ASCII case-fold plus Latin-1 diacritic folding (default)
};

/// Folds one UTF-8 token: lowercases ASCII letters and strips the accents of
/// Latin-1 supplement letters (é -> e, Ü -> u, ß -> ss). Other code points
/// pass through unchanged.
std::string fold(const std::string& token);

/// Splits text into word tokens (maximal runs of alphanumeric bytes or
/// non-ASCII UTF-8 sequences) and normalizes each per `mode`.
std::vector<std::string> tokenize(const std::string& text, Normalize mode = Normalize::Fold);

}  // namespace strata::text
