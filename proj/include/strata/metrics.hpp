// Copyright 2026 The Strata Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strata/hierarchy.hpp"
#include "strata/matrix.hpp"

namespace strata {

/// A layer's rule for turning option-thought scores into an aggregated
/// output. Filter metrics (All, AtLeastK) keep documents by absolute score
/// tests; selection metrics (LocallyBetter, MaxCount, MaxWeight) keep the
/// top-ranked documents; rank metrics (RankCount, RankWeight) reorder and
/// optionally truncate without a hard cut.
struct AggregationMetric {
    enum class Kind { All, AtLeastK, LocallyBetter, MaxCount, MaxWeight, RankCount, RankWeight };

    Kind kind = Kind::All;
    int k = 1;                ///< AtLeastK only
    std::optional<int> top;   ///< RankCount / RankWeight truncation bound

    bool is_filter() const { return kind == Kind::All || kind == Kind::AtLeastK; }
    bool is_selection() const {
        return kind == Kind::LocallyBetter || kind == Kind::MaxCount || kind == Kind::MaxWeight;
    }
    bool is_rank() const { return kind == Kind::RankCount || kind == Kind::RankWeight; }
    /// Count metrics ignore weights and require binary thoughts.
    bool is_count() const { return kind == Kind::MaxCount || kind == Kind::RankCount; }

    static const char* kind_name(Kind kind);
};

/// One pipeline stage: level-partitioned thoughts scored by providers and
/// aggregated under `metric`. `comparator.tolerance` carries into the slots
/// this layer contributes to ranking; kind and aggregator are induced by the
/// metric itself. `refinements` are static replacement level sets consumed
/// by the default backtracking hook, one per retry.
struct LayerSpec {
    int index = 1;
    std::string name;
    AggregationMetric metric;
    std::vector<std::vector<OptionThought>> levels;
    ComparatorSpec comparator;
    int retry_budget = 1;
    std::vector<std::vector<std::vector<OptionThought>>> refinements;

    std::vector<OptionThought> all_thoughts() const;
};

/// A document with the rank score(s) a rank-style layer attached to it.
/// `score` is the strongest level's aggregate; `level_scores` holds one
/// aggregate per level, strongest first.
struct ScoredDoc {
    DocumentId id;
    double score = 0.0;
    std::vector<double> level_scores;
};

/// The slots this layer contributes to a flat hierarchy: one per level,
/// strongest first. LocallyBetter induces local slots; count metrics induce
/// global weighted sums with unit weights; weight metrics induce global
/// weighted sums with the thoughts' own weights. Filter metrics contribute
/// no slots.
std::vector<Slot> layer_slots(const LayerSpec& layer);

/// All / AtLeastK over the pooled thoughts of every level. Keeps input
/// order. Throws ContractError when called with a non-filter metric.
std::vector<DocumentId> apply_filter_metric(const std::vector<DocumentId>& docs,
                                            const ScoreMatrix& matrix, const LayerSpec& layer);

/// LocallyBetter / MaxCount / MaxWeight: the documents nothing else in the
/// input beats under the layer's induced slot sequence. With multiple
/// levels, weaker levels only break ties among documents the stronger
/// levels left equivalent.
std::vector<DocumentId> apply_optimal_metric(const std::vector<DocumentId>& docs,
                                             const ScoreMatrix& matrix, const LayerSpec& layer);

/// RankCount / RankWeight: attaches per-level aggregates to every input
/// document and orders by them, strongest level first, input order on full
/// ties. Truncates to `metric.top` when set; drops nothing otherwise.
std::vector<ScoredDoc> apply_rank_metric(const std::vector<DocumentId>& docs,
                                         const ScoreMatrix& matrix, const LayerSpec& layer);

}  // namespace strata
