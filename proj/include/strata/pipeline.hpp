// Copyright 2026 The Strata Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "strata/error.hpp"
#include "strata/metrics.hpp"
#include "strata/ranking.hpp"
#include "strata/registry.hpp"

namespace strata {

/// One backtracking episode: the layer produced no survivors, the hook
/// supplied revised criteria, and the layer ran again.
struct BacktrackEvent {
    int attempt = 0;
    std::vector<std::string> refined_criteria;
};

/// One scoring-and-aggregation attempt of a layer. The last attempt of a
/// record is the accepted one.
struct LayerAttempt {
    LayerSpec spec;
    ScoreMatrix slice;
    std::vector<DocumentId> survivors;
    std::vector<ScoredDoc> ranked;  ///< rank metrics only
};

struct LayerRecord {
    int index = 0;
    std::string name;
    std::vector<DocumentId> inputs;
    std::vector<LayerAttempt> attempts;
    std::vector<BacktrackEvent> backtracks;
    bool exhausted = false;  ///< still empty after the retry budget

    const LayerAttempt& accepted() const { return attempts.back(); }
};

/// Full execution record: enough to re-derive every survivor set and the
/// final output without touching any provider.
struct PipelineTrace {
    std::string query;
    std::vector<DocumentId> corpus;
    std::optional<int> requested_top_k;
    std::vector<LayerRecord> layers;
    RankedOutput final_output;
};

/// Produces revised criteria for a layer whose output came back empty.
/// Returning nullopt declines to refine. `attempt` is 1-based.
using RefinementHook =
    std::function<std::optional<LayerSpec>(const LayerSpec& layer, int attempt)>;

/// Hook built from a layer's static `refinements` list: attempt i swaps in
/// the i-th replacement level set.
RefinementHook static_refinement_hook();

struct PipelineConfig {
    std::string query;
    std::vector<LayerSpec> layers;
    std::optional<int> top_k;
    int parallelism = 1;
};

/// Structural validation; throws ConfigError naming the offending field.
void validate(const PipelineConfig& config);

/// A layer error that preserves the partially built trace.
class PipelineRunError : public Error {
public:
    PipelineRunError(ErrorCategory category, const std::string& message, PipelineTrace partial)
        : Error(category, message), trace(std::move(partial)) {}

    PipelineTrace trace;
};

struct LayerOutcome {
    std::vector<DocumentId> survivors;
    LayerRecord record;
};

/// Runs one layer in isolation: scores its thoughts for the input documents
/// (providers are invoked only for those documents), applies the metric
/// strongest level first, and backtracks through the hook while the output
/// is empty and budget remains. Empty input short-circuits with no provider
/// calls.
LayerOutcome run_layer(const std::vector<Document>& docs, const LayerSpec& layer,
                       const ProviderRegistry& providers, const RefinementHook& hook = nullptr,
                       int parallelism = 1);

struct PipelineResult {
    RankedOutput ranked;
    PipelineTrace trace;
    ScoreMatrix matrix;        ///< all accepted scores, merged
    Hierarchy ranking_slots;   ///< slots accumulated from comparator layers
};

/// Executes the layer stack. The first layer sees the whole corpus; each
/// later layer sees only the previous survivors, and scoring happens only
/// for them. Comparator-based layers (selection and rank metrics) refine
/// the ordering accumulated from earlier comparator layers, so a stack of
/// such layers ranks exactly like the flattened hierarchy. Filter layers
/// cut absolutely and contribute no ordering.
PipelineResult run_pipeline(const PipelineConfig& config, const std::vector<Document>& corpus,
                            const ProviderRegistry& providers,
                            const std::map<int, RefinementHook>& hooks = {});

/// Recomputes every layer's survivors and the final output from recorded
/// slices alone. Mismatches indicate a corrupted or hand-edited trace.
struct ReplayResult {
    std::vector<std::vector<DocumentId>> survivors_per_layer;
    RankedOutput final_output;
    bool matches = false;
};

ReplayResult replay(const PipelineTrace& trace);

}  // namespace strata
