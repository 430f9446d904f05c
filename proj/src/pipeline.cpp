// Copyright 2026 The Strata Authors
// SPDX-License-Identifier: Apache-2.0

#include "strata/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <thread>

namespace strata {

namespace {

std::string layer_path(std::size_t i) { return "layers[" + std::to_string(i) + "]"; }

void validate_layer(const LayerSpec& layer, std::size_t position, std::set<ThoughtId>& ids) {
    const std::string path = layer_path(position);
    if (layer.index != static_cast<int>(position) + 1) {
        throw ConfigError(path + ".index: expected " + std::to_string(position + 1) + ", got " +
                          std::to_string(layer.index));
    }
    if (layer.levels.empty()) throw ConfigError(path + ".levels: layer has no levels");
    int thought_count = 0;
    for (std::size_t li = 0; li < layer.levels.size(); ++li) {
        const auto& level = layer.levels[li];
        const std::string lpath = path + ".levels[" + std::to_string(li) + "]";
        if (level.empty()) throw ConfigError(lpath + ": level has no thoughts");
        for (const auto& t : level) {
            ++thought_count;
            if (t.id.empty()) throw ConfigError(lpath + ": thought with empty id");
            if (!ids.insert(t.id).second) {
                throw ConfigError(lpath + ": duplicate thought id '" + t.id + "'");
            }
            if (t.weight < 0.0) {
                throw ConfigError(lpath + ": thought '" + t.id + "' has negative weight");
            }
            if (layer.metric.is_count() && !t.binary) {
                throw ConfigError(lpath + ": thought '" + t.id + "' must be binary under " +
                                  AggregationMetric::kind_name(layer.metric.kind));
            }
        }
    }
    if (layer.metric.kind == AggregationMetric::Kind::AtLeastK) {
        if (layer.metric.k < 1) throw ConfigError(path + ".metric.k: must be >= 1");
        if (layer.metric.k > thought_count) {
            throw ConfigError(path + ".metric.k: " + std::to_string(layer.metric.k) +
                              " exceeds the layer's " + std::to_string(thought_count) +
                              " thoughts");
        }
    }
    if (layer.metric.top && *layer.metric.top < 1) {
        throw ConfigError(path + ".metric.top: must be >= 1");
    }
    if (layer.retry_budget < 0) throw ConfigError(path + ".retry_budget: must be >= 0");
}

}  // namespace

void validate(const PipelineConfig& config) {
    if (config.layers.empty()) throw ConfigError("layers: pipeline needs at least one layer");
    if (config.top_k && *config.top_k < 1) throw ConfigError("top_k: must be >= 1");
    if (config.parallelism < 1) throw ConfigError("parallelism: must be >= 1");
    std::set<ThoughtId> ids;
    for (std::size_t i = 0; i < config.layers.size(); ++i) {
        validate_layer(config.layers[i], i, ids);
        for (std::size_t r = 0; r < config.layers[i].refinements.size(); ++r) {
            LayerSpec refined = config.layers[i];
            refined.levels = config.layers[i].refinements[r];
            refined.refinements.clear();
            std::set<ThoughtId> refined_ids;  // refinements may reuse ids
            validate_layer(refined, i, refined_ids);
        }
    }
}

RefinementHook static_refinement_hook() {
    return [](const LayerSpec& layer, int attempt) -> std::optional<LayerSpec> {
        if (attempt < 1 || static_cast<std::size_t>(attempt) > layer.refinements.size()) {
            return std::nullopt;
        }
        LayerSpec refined = layer;
        refined.levels = layer.refinements[static_cast<std::size_t>(attempt) - 1];
        return refined;
    };
}

namespace {

/// Scores docs x thoughts through the registry, optionally in parallel.
/// Results are assembled in task order, so output is independent of the
/// parallelism level.
ScoreMatrix score_layer(const std::vector<Document>& docs,
                        const std::vector<OptionThought>& thoughts,
                        const ProviderRegistry& providers, int parallelism) {
    struct Task {
        const Document* doc;
        const OptionThought* thought;
    };
    std::vector<Task> tasks;
    tasks.reserve(docs.size() * thoughts.size());
    for (const auto& doc : docs) {
        for (const auto& thought : thoughts) tasks.push_back({&doc, &thought});
    }

    std::vector<double> scores(tasks.size(), 0.0);
    const int workers = std::min<int>(parallelism, static_cast<int>(tasks.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            scores[i] = providers.score(*tasks[i].doc, *tasks[i].thought);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                try {
                    scores[i] = providers.score(*tasks[i].doc, *tasks[i].thought);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    ScoreMatrix slice;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        slice.set(tasks[i].doc->id, tasks[i].thought->id, scores[i]);
    }
    return slice;
}

struct StageOutput {
    std::vector<DocumentId> survivors;
    std::vector<ScoredDoc> ranked;
};

/// Applies one layer's metric given the comparator slots accumulated from
/// earlier layers. Filter metrics test absolutely; selection metrics keep
/// the documents at accumulated depth 0; rank metrics reorder by
/// accumulated depth (input order on ties) and truncate to `top` when set.
StageOutput apply_stage(const std::vector<DocumentId>& inputs, const ScoreMatrix& matrix,
                        const LayerSpec& spec, const std::vector<Slot>& accumulated) {
    StageOutput out;
    if (spec.metric.is_filter()) {
        out.survivors = apply_filter_metric(inputs, matrix, spec);
        return out;
    }
    std::vector<Slot> trial = accumulated;
    const auto own = layer_slots(spec);
    trial.insert(trial.end(), own.begin(), own.end());
    const Hierarchy hierarchy{std::move(trial)};
    const DepthMap depths = depth_map(inputs, matrix, hierarchy);

    if (spec.metric.is_selection()) {
        if (spec.metric.kind == AggregationMetric::Kind::MaxCount) {
            for (const auto& t : spec.all_thoughts()) {
                if (!t.binary) {
                    throw ContractError("max-count requires binary thoughts, but '" + t.id +
                                        "' is not flagged binary");
                }
            }
        }
        for (const auto& doc : inputs) {
            if (depths.at(doc) == 0) out.survivors.push_back(doc);
        }
        return out;
    }

    // rank metric
    if (spec.metric.kind == AggregationMetric::Kind::RankCount) {
        for (const auto& t : spec.all_thoughts()) {
            if (!t.binary) {
                throw ContractError("rank-count requires binary thoughts, but '" + t.id +
                                    "' is not flagged binary");
            }
        }
    }
    std::vector<DocumentId> ordered = inputs;
    std::stable_sort(ordered.begin(), ordered.end(),
                     [&](const DocumentId& a, const DocumentId& b) {
                         return depths.at(a) < depths.at(b);
                     });
    if (spec.metric.top && ordered.size() > static_cast<std::size_t>(*spec.metric.top)) {
        ordered.resize(static_cast<std::size_t>(*spec.metric.top));
    }
    out.survivors = ordered;
    for (const auto& doc : ordered) {
        ScoredDoc sd;
        sd.id = doc;
        for (const auto& slot : own) {
            sd.level_scores.push_back(aggregate_slot(matrix, doc, slot, Aggregator::WeightedSum));
        }
        sd.score = sd.level_scores.empty() ? 0.0 : sd.level_scores.front();
        out.ranked.push_back(std::move(sd));
    }
    return out;
}

/// Scoring + aggregation + backtracking for one layer against a fixed
/// accumulated prefix. Returns the record; the accepted attempt is last.
LayerRecord execute_layer(const std::vector<Document>& docs, const LayerSpec& layer,
                          const ProviderRegistry& providers, const RefinementHook& hook,
                          int parallelism, const std::vector<Slot>& accumulated) {
    LayerRecord record;
    record.index = layer.index;
    record.name = layer.name;
    for (const auto& d : docs) record.inputs.push_back(d.id);

    const RefinementHook effective = hook ? hook : static_refinement_hook();

    LayerSpec spec = layer;
    int attempt = 0;
    while (true) {
        ++attempt;
        LayerAttempt run;
        run.spec = spec;
        if (!docs.empty()) {
            run.slice = score_layer(docs, spec.all_thoughts(), providers, parallelism);
        }
        const StageOutput stage = apply_stage(record.inputs, run.slice, spec, accumulated);
        run.survivors = stage.survivors;
        run.ranked = stage.ranked;
        record.attempts.push_back(std::move(run));

        if (!stage.survivors.empty() || docs.empty()) return record;
        if (attempt > layer.retry_budget) {
            record.exhausted = true;
            return record;
        }
        auto refined = effective(spec, attempt);
        if (!refined) {
            record.exhausted = true;
            return record;
        }
        BacktrackEvent event;
        event.attempt = attempt;
        for (const auto& t : refined->all_thoughts()) event.refined_criteria.push_back(t.criterion);
        record.backtracks.push_back(std::move(event));
        spec = *refined;
    }
}

std::vector<Document> select_documents(const std::vector<Document>& corpus,
                                       const std::vector<DocumentId>& ids) {
    std::map<DocumentId, const Document*> by_id;
    for (const auto& d : corpus) by_id[d.id] = &d;
    std::vector<Document> out;
    out.reserve(ids.size());
    for (const auto& id : ids) {
        auto it = by_id.find(id);
        if (it == by_id.end()) throw InternalError("unknown document id '" + id + "'");
        out.push_back(*it->second);
    }
    return out;
}

RankedOutput finalize_output(const std::vector<DocumentId>& survivors, const ScoreMatrix& matrix,
                             const std::vector<Slot>& accumulated, std::optional<int> top_k) {
    const DepthMap depths = depth_map(survivors, matrix, Hierarchy{accumulated});
    int max_depth = 0;
    for (const auto& [_, d] : depths) max_depth = std::max(max_depth, d);
    const int k = top_k.value_or(max_depth + 1);

    RankedOutput out;
    out.k = k;
    out.depths = depths;
    for (const auto& doc : survivors) {
        if (depths.at(doc) < k) out.survivors.push_back(doc);
    }
    std::stable_sort(out.survivors.begin(), out.survivors.end(),
                     [&](const DocumentId& a, const DocumentId& b) {
                         return depths.at(a) < depths.at(b);
                     });
    return out;
}

}  // namespace

LayerOutcome run_layer(const std::vector<Document>& docs, const LayerSpec& layer,
                       const ProviderRegistry& providers, const RefinementHook& hook,
                       int parallelism) {
    LayerRecord record = execute_layer(docs, layer, providers, hook, parallelism, {});
    LayerOutcome outcome;
    outcome.survivors = record.accepted().survivors;
    outcome.record = std::move(record);
    return outcome;
}

PipelineResult run_pipeline(const PipelineConfig& config, const std::vector<Document>& corpus,
                            const ProviderRegistry& providers,
                            const std::map<int, RefinementHook>& hooks) {
    validate(config);

    PipelineResult result;
    result.trace.query = config.query;
    result.trace.requested_top_k = config.top_k;
    for (const auto& d : corpus) result.trace.corpus.push_back(d.id);

    std::vector<DocumentId> survivors = result.trace.corpus;
    std::vector<Slot> accumulated;

    for (const auto& layer : config.layers) {
        RefinementHook hook;
        if (auto it = hooks.find(layer.index); it != hooks.end()) hook = it->second;
        try {
            const std::vector<Document> docs = select_documents(corpus, survivors);
            LayerRecord record =
                execute_layer(docs, layer, providers, hook, config.parallelism, accumulated);
            result.matrix.merge(record.accepted().slice);
            survivors = record.accepted().survivors;
            if (!layer.metric.is_filter()) {
                const auto own = layer_slots(record.accepted().spec);
                accumulated.insert(accumulated.end(), own.begin(), own.end());
            }
            result.trace.layers.push_back(std::move(record));
        } catch (const Error& e) {
            throw PipelineRunError(e.category(),
                                   "layer " + std::to_string(layer.index) +
                                       (layer.name.empty() ? "" : " ('" + layer.name + "')") +
                                       ": " + e.what(),
                                   std::move(result.trace));
        }
    }

    result.ranked = finalize_output(survivors, result.matrix, accumulated, config.top_k);
    result.ranking_slots = Hierarchy{accumulated};
    result.trace.final_output = result.ranked;
    return result;
}

ReplayResult replay(const PipelineTrace& trace) {
    ReplayResult result;
    ScoreMatrix matrix;
    std::vector<Slot> accumulated;
    std::vector<DocumentId> survivors = trace.corpus;
    bool ok = true;

    for (const auto& record : trace.layers) {
        const auto& accepted = record.accepted();
        matrix.merge(accepted.slice);
        const StageOutput stage = apply_stage(record.inputs, matrix, accepted.spec, accumulated);
        if (!accepted.spec.metric.is_filter()) {
            const auto own = layer_slots(accepted.spec);
            accumulated.insert(accumulated.end(), own.begin(), own.end());
        }
        ok = ok && record.inputs == survivors && stage.survivors == accepted.survivors;
        survivors = stage.survivors;
        result.survivors_per_layer.push_back(stage.survivors);
    }

    result.final_output = finalize_output(survivors, matrix, accumulated, trace.requested_top_k);
    ok = ok && result.final_output.survivors == trace.final_output.survivors &&
         result.final_output.depths == trace.final_output.depths &&
         result.final_output.k == trace.final_output.k;
    result.matches = ok;
    return result;
}

}  // namespace strata
