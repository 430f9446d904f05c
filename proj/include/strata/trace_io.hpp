// Copyright 2026 The Strata Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <json.hpp>

#include "strata/pipeline.hpp"

namespace strata {

nlohmann::json to_json(const OptionThought& thought);
nlohmann::json to_json(const ComparatorSpec& spec);
nlohmann::json to_json(const AggregationMetric& metric);
nlohmann::json to_json(const LayerSpec& layer);
nlohmann::json to_json(const ScoreMatrix& matrix);
nlohmann::json to_json(const ScoredDoc& doc);
nlohmann::json to_json(const RankedOutput& output);
nlohmann::json to_json(const PipelineTrace& trace);

OptionThought thought_from_json(const nlohmann::json& j);
ComparatorSpec comparator_from_json(const nlohmann::json& j);
AggregationMetric metric_from_json(const nlohmann::json& j);
LayerSpec layer_from_json(const nlohmann::json& j);
ScoreMatrix matrix_from_json(const nlohmann::json& j);
RankedOutput ranked_from_json(const nlohmann::json& j);
PipelineTrace trace_from_json(const nlohmann::json& j);

void save_trace(const PipelineTrace& trace, const std::string& path);
PipelineTrace load_trace(const std::string& path);

}  // namespace strata
