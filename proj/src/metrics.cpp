// Copyright 2026 The Strata Authors
// SPDX-License-Identifier: Apache-2.0

#include "strata/metrics.hpp"

#include <algorithm>

#include "strata/error.hpp"
#include "strata/ranking.hpp"

namespace strata {

const char* AggregationMetric::kind_name(Kind kind) {
    switch (kind) {
        case Kind::All: return "all";
        case Kind::AtLeastK: return "at-least-k";
        case Kind::LocallyBetter: return "locally-better";
        case Kind::MaxCount: return "max-count";
        case Kind::MaxWeight: return "max-weight";
        case Kind::RankCount: return "rank-count";
        case Kind::RankWeight: return "rank-weight";
    }
    return "?";
}

std::vector<OptionThought> LayerSpec::all_thoughts() const {
    std::vector<OptionThought> out;
    for (const auto& level : levels) out.insert(out.end(), level.begin(), level.end());
    return out;
}

namespace {

void require_binary_thoughts(const LayerSpec& layer, const char* metric_name) {
    for (const auto& level : layer.levels) {
        for (const auto& t : level) {
            if (!t.binary) {
                throw ContractError(std::string(metric_name) + " metric requires binary thoughts, but '" +
                                    t.id + "' is not flagged binary (layer " +
                                    std::to_string(layer.index) + ")");
            }
        }
    }
}

}  // namespace

std::vector<Slot> layer_slots(const LayerSpec& layer) {
    if (layer.metric.is_filter()) return {};
    std::vector<Slot> slots;
    int level = 1;
    for (const auto& thoughts : layer.levels) {
        Slot slot;
        slot.thoughts = thoughts;
        slot.layer = layer.index;
        slot.level = level++;
        for (auto& t : slot.thoughts) {
            t.layer = layer.index;
            t.level = slot.level;
            if (layer.metric.is_count()) t.weight = 1.0;
        }
        if (layer.metric.kind == AggregationMetric::Kind::LocallyBetter) {
            slot.comparator = ComparatorSpec::local();
        } else {
            slot.comparator = ComparatorSpec::global(Aggregator::WeightedSum,
                                                     layer.comparator.tolerance);
        }
        slots.push_back(std::move(slot));
    }
    return slots;
}

std::vector<DocumentId> apply_filter_metric(const std::vector<DocumentId>& docs,
                                            const ScoreMatrix& matrix, const LayerSpec& layer) {
    if (!layer.metric.is_filter()) {
        throw ContractError("apply_filter_metric called with metric '" +
                            std::string(AggregationMetric::kind_name(layer.metric.kind)) + "'");
    }
    Slot pooled;
    pooled.thoughts = layer.all_thoughts();
    pooled.layer = layer.index;
    const FilterMode mode = layer.metric.kind == AggregationMetric::Kind::All
                                ? FilterMode::all()
                                : FilterMode::at_least(layer.metric.k);
    return hard_filter(docs, matrix, pooled, mode);
}

std::vector<DocumentId> apply_optimal_metric(const std::vector<DocumentId>& docs,
                                             const ScoreMatrix& matrix, const LayerSpec& layer) {
    if (!layer.metric.is_selection()) {
        throw ContractError("apply_optimal_metric called with metric '" +
                            std::string(AggregationMetric::kind_name(layer.metric.kind)) + "'");
    }
    if (layer.metric.kind == AggregationMetric::Kind::MaxCount) {
        require_binary_thoughts(layer, "max-count");
    }
    return maximal_set(docs, matrix, Hierarchy(layer_slots(layer)));
}

std::vector<ScoredDoc> apply_rank_metric(const std::vector<DocumentId>& docs,
                                         const ScoreMatrix& matrix, const LayerSpec& layer) {
    if (!layer.metric.is_rank()) {
        throw ContractError("apply_rank_metric called with metric '" +
                            std::string(AggregationMetric::kind_name(layer.metric.kind)) + "'");
    }
    if (layer.metric.kind == AggregationMetric::Kind::RankCount) {
        require_binary_thoughts(layer, "rank-count");
    }
    if (layer.metric.top && *layer.metric.top < 1) {
        throw ConfigError("rank metric truncation bound must be >= 1");
    }
    const auto slots = layer_slots(layer);
    std::vector<ScoredDoc> scored;
    scored.reserve(docs.size());
    for (const auto& doc : docs) {
        ScoredDoc sd;
        sd.id = doc;
        for (const auto& slot : slots) {
            sd.level_scores.push_back(aggregate_slot(matrix, doc, slot, Aggregator::WeightedSum));
        }
        sd.score = sd.level_scores.empty() ? 0.0 : sd.level_scores.front();
        scored.push_back(std::move(sd));
    }
    std::stable_sort(scored.begin(), scored.end(), [](const ScoredDoc& a, const ScoredDoc& b) {
        return a.level_scores > b.level_scores;  // lexicographic, strongest level first
    });
    if (layer.metric.top && scored.size() > static_cast<std::size_t>(*layer.metric.top)) {
        scored.resize(static_cast<std::size_t>(*layer.metric.top));
    }
    return scored;
}

}  // namespace strata
