// Copyright 2026 The Strata Authors
// SPDX-License-Identifier: Apache-2.0

#include "strata/trace_io.hpp"

#include <fstream>

#include "strata/error.hpp"

namespace strata {

using nlohmann::json;

namespace {

AggregationMetric::Kind metric_kind_from_name(const std::string& name) {
    using Kind = AggregationMetric::Kind;
    if (name == "all") return Kind::All;
    if (name == "at-least-k") return Kind::AtLeastK;
    if (name == "locally-better") return Kind::LocallyBetter;
    if (name == "max-count") return Kind::MaxCount;
    if (name == "max-weight") return Kind::MaxWeight;
    if (name == "rank-count") return Kind::RankCount;
    if (name == "rank-weight") return Kind::RankWeight;
    throw ConfigError("unknown metric kind '" + name + "'");
}

Aggregator aggregator_from_name(const std::string& name) {
    if (name == "weighted-sum") return Aggregator::WeightedSum;
    if (name == "worst-case") return Aggregator::WorstCase;
    if (name == "least-squares") return Aggregator::LeastSquares;
    throw ConfigError("unknown aggregator '" + name + "'");
}

}  // namespace

json to_json(const OptionThought& t) {
    return {{"id", t.id},         {"layer", t.layer},   {"level", t.level},
            {"weight", t.weight}, {"criterion", t.criterion}, {"binary", t.binary},
            {"provider", t.provider}};
}

OptionThought thought_from_json(const json& j) {
    OptionThought t;
    t.id = j.at("id").get<std::string>();
    t.layer = j.value("layer", 1);
    t.level = j.value("level", 1);
    t.weight = j.value("weight", 1.0);
    t.criterion = j.value("criterion", std::string{});
    t.binary = j.value("binary", false);
    t.provider = j.value("provider", std::string{});
    return t;
}

json to_json(const ComparatorSpec& spec) {
    return {{"kind", spec.kind == ComparatorSpec::Kind::Local ? "local" : "global"},
            {"aggregator", to_string(spec.aggregator)},
            {"tolerance", spec.tolerance}};
}

ComparatorSpec comparator_from_json(const json& j) {
    ComparatorSpec spec;
    const auto kind = j.value("kind", std::string{"local"});
    if (kind == "local") {
        spec.kind = ComparatorSpec::Kind::Local;
    } else if (kind == "global") {
        spec.kind = ComparatorSpec::Kind::Global;
    } else {
        throw ConfigError("unknown comparator kind '" + kind + "'");
    }
    spec.aggregator = aggregator_from_name(j.value("aggregator", std::string{"weighted-sum"}));
    spec.tolerance = j.value("tolerance", 0.0);
    if (spec.tolerance < 0.0) throw ConfigError("comparator tolerance must be non-negative");
    return spec;
}

json to_json(const AggregationMetric& metric) {
    json j{{"kind", AggregationMetric::kind_name(metric.kind)}};
    if (metric.kind == AggregationMetric::Kind::AtLeastK) j["k"] = metric.k;
    if (metric.top) j["top"] = *metric.top;
    return j;
}

AggregationMetric metric_from_json(const json& j) {
    AggregationMetric metric;
    metric.kind = metric_kind_from_name(j.at("kind").get<std::string>());
    if (j.contains("k")) metric.k = j.at("k").get<int>();
    if (j.contains("top")) metric.top = j.at("top").get<int>();
    return metric;
}

json to_json(const LayerSpec& layer) {
    json levels = json::array();
    for (const auto& level : layer.levels) {
        json thoughts = json::array();
        for (const auto& t : level) thoughts.push_back(to_json(t));
        levels.push_back(std::move(thoughts));
    }
    json refinements = json::array();
    for (const auto& alt : layer.refinements) {
        json alt_levels = json::array();
        for (const auto& level : alt) {
            json thoughts = json::array();
            for (const auto& t : level) thoughts.push_back(to_json(t));
            alt_levels.push_back(std::move(thoughts));
        }
        refinements.push_back(std::move(alt_levels));
    }
    return {{"index", layer.index},
            {"name", layer.name},
            {"metric", to_json(layer.metric)},
            {"levels", std::move(levels)},
            {"comparator", to_json(layer.comparator)},
            {"retry_budget", layer.retry_budget},
            {"refinements", std::move(refinements)}};
}

LayerSpec layer_from_json(const json& j) {
    LayerSpec layer;
    layer.index = j.at("index").get<int>();
    layer.name = j.value("name", std::string{});
    layer.metric = metric_from_json(j.at("metric"));
    for (const auto& level : j.at("levels")) {
        std::vector<OptionThought> thoughts;
        for (const auto& t : level) thoughts.push_back(thought_from_json(t));
        layer.levels.push_back(std::move(thoughts));
    }
    if (j.contains("comparator")) layer.comparator = comparator_from_json(j.at("comparator"));
    layer.retry_budget = j.value("retry_budget", 1);
    if (j.contains("refinements")) {
        for (const auto& alt : j.at("refinements")) {
            std::vector<std::vector<OptionThought>> alt_levels;
            for (const auto& level : alt) {
                std::vector<OptionThought> thoughts;
                for (const auto& t : level) thoughts.push_back(thought_from_json(t));
                alt_levels.push_back(std::move(thoughts));
            }
            layer.refinements.push_back(std::move(alt_levels));
        }
    }
    return layer;
}

json to_json(const ScoreMatrix& matrix) {
    json j = json::object();
    for (const auto& [doc, row] : matrix.rows()) {
        json row_json = json::object();
        for (const auto& [thought, score] : row) row_json[thought] = score;
        j[doc] = std::move(row_json);
    }
    return j;
}

ScoreMatrix matrix_from_json(const json& j) {
    ScoreMatrix matrix;
    for (const auto& [doc, row] : j.items()) {
        for (const auto& [thought, score] : row.items()) {
            matrix.set(doc, thought, score.get<double>());
        }
    }
    return matrix;
}

json to_json(const ScoredDoc& doc) {
    return {{"id", doc.id}, {"score", doc.score}, {"level_scores", doc.level_scores}};
}

json to_json(const RankedOutput& output) {
    json depths = json::object();
    for (const auto& [doc, depth] : output.depths) depths[doc] = depth;
    return {{"survivors", output.survivors}, {"depths", std::move(depths)}, {"k", output.k}};
}

RankedOutput ranked_from_json(const json& j) {
    RankedOutput out;
    out.survivors = j.at("survivors").get<std::vector<DocumentId>>();
    for (const auto& [doc, depth] : j.at("depths").items()) out.depths[doc] = depth.get<int>();
    out.k = j.at("k").get<int>();
    return out;
}

json to_json(const PipelineTrace& trace) {
    json layers = json::array();
    for (const auto& record : trace.layers) {
        json attempts = json::array();
        for (const auto& attempt : record.attempts) {
            json ranked = json::array();
            for (const auto& sd : attempt.ranked) ranked.push_back(to_json(sd));
            attempts.push_back({{"spec", to_json(attempt.spec)},
                                {"slice", to_json(attempt.slice)},
                                {"survivors", attempt.survivors},
                                {"ranked", std::move(ranked)}});
        }
        json backtracks = json::array();
        for (const auto& event : record.backtracks) {
            backtracks.push_back(
                {{"attempt", event.attempt}, {"refined_criteria", event.refined_criteria}});
        }
        layers.push_back({{"index", record.index},
                          {"name", record.name},
                          {"inputs", record.inputs},
                          {"attempts", std::move(attempts)},
                          {"backtracks", std::move(backtracks)},
                          {"exhausted", record.exhausted}});
    }
    json j{{"query", trace.query},
           {"corpus", trace.corpus},
           {"layers", std::move(layers)},
           {"final", to_json(trace.final_output)}};
    j["top_k"] = trace.requested_top_k ? json(*trace.requested_top_k) : json(nullptr);
    return j;
}

PipelineTrace trace_from_json(const json& j) {
    PipelineTrace trace;
    trace.query = j.at("query").get<std::string>();
    trace.corpus = j.at("corpus").get<std::vector<DocumentId>>();
    if (j.contains("top_k") && !j.at("top_k").is_null()) {
        trace.requested_top_k = j.at("top_k").get<int>();
    }
    for (const auto& layer : j.at("layers")) {
        LayerRecord record;
        record.index = layer.at("index").get<int>();
        record.name = layer.value("name", std::string{});
        record.inputs = layer.at("inputs").get<std::vector<DocumentId>>();
        for (const auto& attempt : layer.at("attempts")) {
            LayerAttempt run;
            run.spec = layer_from_json(attempt.at("spec"));
            run.slice = matrix_from_json(attempt.at("slice"));
            run.survivors = attempt.at("survivors").get<std::vector<DocumentId>>();
            if (attempt.contains("ranked")) {
                for (const auto& sd : attempt.at("ranked")) {
                    ScoredDoc scored;
                    scored.id = sd.at("id").get<std::string>();
                    scored.score = sd.at("score").get<double>();
                    scored.level_scores = sd.at("level_scores").get<std::vector<double>>();
                    run.ranked.push_back(std::move(scored));
                }
            }
            record.attempts.push_back(std::move(run));
        }
        if (record.attempts.empty()) {
            throw DataError("trace layer " + std::to_string(record.index) + " has no attempts");
        }
        for (const auto& event : layer.at("backtracks")) {
            BacktrackEvent bt;
            bt.attempt = event.at("attempt").get<int>();
            bt.refined_criteria = event.at("refined_criteria").get<std::vector<std::string>>();
            record.backtracks.push_back(std::move(bt));
        }
        record.exhausted = layer.value("exhausted", false);
        trace.layers.push_back(std::move(record));
    }
    trace.final_output = ranked_from_json(j.at("final"));
    return trace;
}

void save_trace(const PipelineTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write trace file " + path);
    out << to_json(trace).dump(2) << "\n";
}

PipelineTrace load_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open trace file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError("trace file " + path + ": " + e.what());
    }
    try {
        return trace_from_json(j);
    } catch (const json::exception& e) {
        throw DataError("trace file " + path + ": " + e.what());
    }
}

}  // namespace strata
