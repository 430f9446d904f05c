// Copyright 2026 The Strata Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <vector>

#include "strata/hierarchy.hpp"

namespace strata {

/// Hard-filter mode: keep documents positive on every thought of the hard
/// slot, or on at least k of them.
struct FilterMode {
    enum class Kind { All, AtLeast };
    Kind kind = Kind::All;
    int k = 1;

    static FilterMode all() { return {Kind::All, 0}; }
    static FilterMode at_least(int k) { return {Kind::AtLeast, k}; }
};

/// Dominance depth per document: the length of the longest strict chain of
/// documents strictly better than it. depth == 0 iff the document is maximal
/// in the considered set.
using DepthMap = std::map<DocumentId, int>;

/// Result of a top-k ranking: `survivors` are the documents with depth < k,
/// ordered by ascending depth with input order inside each tier. `depths`
/// covers at least the survivors; one-shot rankings also record the depths
/// of excluded documents (explanations use those).
struct RankedOutput {
    std::vector<DocumentId> survivors;
    DepthMap depths;
    int k = 1;
};

/// Keeps documents passing the hard slot. All: positive score on every
/// thought; AtLeast(k): positive on at least k thoughts. Input order is
/// preserved. Throws ConfigError for k < 1 or k > slot size.
std::vector<DocumentId> hard_filter(const std::vector<DocumentId>& corpus,
                                    const ScoreMatrix& matrix, const Slot& hard_slot,
                                    const FilterMode& mode);

/// The documents no other document strictly beats under the hierarchy.
std::vector<DocumentId> maximal_set(const std::vector<DocumentId>& docs,
                                    const ScoreMatrix& matrix, const Hierarchy& hierarchy);

/// Longest-chain depth for every document, via pairwise comparison and
/// longest-path over the dominance relation. A Better-cycle (possible only
/// under a broken comparator or tolerance misuse) raises InternalError.
DepthMap depth_map(const std::vector<DocumentId>& docs, const ScoreMatrix& matrix,
                   const Hierarchy& hierarchy);

/// One-shot ranking: survivors are the documents with depth < k.
RankedOutput top_k(const std::vector<DocumentId>& docs, const ScoreMatrix& matrix,
                   const Hierarchy& hierarchy, int k);

/// Level-by-level refinement: stage j ranks the current survivors under the
/// first j slots only and prunes documents whose restricted depth reaches k.
/// Slot j+1 scores are never read for documents pruned at stage j, which is
/// what makes deferred scoring possible. The final output equals top_k on
/// the same inputs (survivor set, depths, and order).
RankedOutput progressive_top_k(const std::vector<DocumentId>& docs, const ScoreMatrix& matrix,
                               const Hierarchy& hierarchy, int k);

}  // namespace strata
