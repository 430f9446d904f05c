// Copyright 2026 The Strata Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

namespace strata {

/// Opaque corpus-unique identifier. Equality is exact string equality.
using DocumentId = std::string;
using ThoughtId = std::string;

/// One corpus item flowing through the pipeline.
struct Document {
    DocumentId id;
    std::string text;
    std::map<std::string, std::string> meta;
};

/// A single criterion evaluated against each candidate document.
///
/// (layer, level) places the thought at exactly one position in the nested
/// hierarchy: layer = which pipeline stage owns it, level = its strength
/// within that stage (1 = strongest). `weight` feeds the global aggregators.
/// `binary` declares that every score produced for this thought is 0 or 1,
/// which the scoring path enforces. `provider` names the scoring binding.
struct OptionThought {
    ThoughtId id;
    int layer = 1;
    int level = 1;
    double weight = 1.0;
    std::string criterion;
    bool binary = false;
    std::string provider;
};

}  // namespace strata
