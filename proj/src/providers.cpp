// Copyright 2026 The Strata Authors
// SPDX-License-Identifier: Apache-2.0

#include "strata/providers.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "strata/error.hpp"

namespace strata {

using nlohmann::json;

// --- TranscriptStore ---------------------------------------------------

TranscriptStore TranscriptStore::load(const std::string& path) {
    TranscriptStore store;
    std::ifstream in(path);
    if (!in) return store;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json record;
        try {
            record = json::parse(line);
        } catch (const json::exception& e) {
            throw DataError("transcript fixture " + path + ":" + std::to_string(line_no) +
                            ": " + e.what());
        }
        if (!record.is_object() || !record.contains("digest") || !record.contains("response") ||
            !record["digest"].is_string() || !record["response"].is_string()) {
            throw DataError("transcript fixture " + path + ":" + std::to_string(line_no) +
                            ": expected {\"digest\", \"response\"} strings");
        }
        store.entries_[record["digest"].get<std::string>()] =
            record["response"].get<std::string>();
    }
    return store;
}

std::optional<std::string> TranscriptStore::lookup(const std::string& digest) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = entries_.find(digest);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void TranscriptStore::record(const std::string& digest, const std::string& response) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = entries_.emplace(digest, response);
    if (!inserted) return;  // identical request already recorded
    if (!sink_path_.empty()) {
        std::ofstream out(sink_path_, std::ios::app);
        if (!out) throw DataError("cannot append to transcript file " + sink_path_);
        out << json{{"digest", digest}, {"response", response}}.dump() << "\n";
    }
}

// --- ScoreFixture -------------------------------------------------------

ScoreFixture ScoreFixture::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open score fixture " + path);
    ScoreFixture fixture;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::string where = path + ":" + std::to_string(line_no);
        json record;
        try {
            record = json::parse(line);
        } catch (const json::exception& e) {
            throw DataError("score fixture " + where + ": " + e.what());
        }
        if (!record.is_object() || !record.contains("doc") || !record.contains("thought") ||
            !record.contains("score") || !record["doc"].is_string() ||
            !record["thought"].is_string() || !record["score"].is_number()) {
            throw DataError("score fixture " + where +
                            ": expected {\"doc\": str, \"thought\": str, \"score\": num}");
        }
        const auto doc = record["doc"].get<std::string>();
        const auto thought = record["thought"].get<std::string>();
        const double score = record["score"].get<double>();
        if (score < 0.0 || !std::isfinite(score)) {
            throw DataError("score fixture " + where + ": negative or non-finite score");
        }
        if (fixture.scores_.count({doc, thought}) != 0) {
            throw DataError("score fixture " + where + ": duplicate entry for (" + doc + ", " +
                            thought + ")");
        }
        fixture.scores_[{doc, thought}] = score;
    }
    return fixture;
}

std::optional<double> ScoreFixture::find(const DocumentId& doc, const ThoughtId& thought) const {
    auto it = scores_.find({doc, thought});
    if (it == scores_.end()) return std::nullopt;
    return it->second;
}

double ScoreFixture::at(const DocumentId& doc, const ThoughtId& thought) const {
    auto found = find(doc, thought);
    if (!found) {
        throw ProviderError("missing fixture entry for (" + doc + ", " + thought + ")");
    }
    return *found;
}

void ScoreFixture::add(const DocumentId& doc, const ThoughtId& thought, double score) {
    scores_[{doc, thought}] = score;
}

// --- TableProvider ------------------------------------------------------

double TableProvider::score(const Document& doc, const OptionThought& thought) {
    return fixture_->at(doc.id, thought.id);
}

// --- KeywordProvider ----------------------------------------------------

KeywordProvider::KeywordProvider(std::vector<Keyword> keywords, text::Normalize normalize,
                                 TokenMatcher matcher)
    : keywords_(std::move(keywords)), normalize_(normalize), matcher_(std::move(matcher)) {
    if (keywords_.empty()) throw ConfigError("keyword provider requires at least one keyword");
    if (normalize_ == text::Normalize::Fold) {
        for (auto& kw : keywords_) {
            kw.term = text::fold(kw.term);
            for (auto& s : kw.synonyms) s = text::fold(s);
        }
    }
}

double KeywordProvider::score(const Document& doc, const OptionThought&) {
    const auto tokens = text::tokenize(doc.text, normalize_);
    for (const auto& token : tokens) {
        for (const auto& kw : keywords_) {
            if (token == kw.term) return 1.0;
            if (std::find(kw.synonyms.begin(), kw.synonyms.end(), token) != kw.synonyms.end()) {
                return 1.0;
            }
            if (matcher_ && matcher_(token, kw.term)) return 1.0;
        }
    }
    return 0.0;
}

// --- ThresholdProvider --------------------------------------------------

ThresholdProvider::ThresholdProvider(std::shared_ptr<ScoreProvider> inner, double tau)
    : inner_(std::move(inner)), tau_(tau) {
    if (!inner_) throw ConfigError("threshold provider requires an inner provider");
    if (tau_ < 0.0) throw ConfigError("threshold tau must be non-negative");
}

double ThresholdProvider::score(const Document& doc, const OptionThought& thought) {
    return inner_->score(doc, thought) >= tau_ ? 1.0 : 0.0;
}

// --- BM25 ----------------------------------------------------------------

Bm25Stats Bm25Stats::build(const std::vector<Document>& corpus, text::Normalize normalize) {
    Bm25Stats stats;
    stats.doc_count_ = corpus.size();
    std::size_t total_length = 0;
    for (const auto& doc : corpus) {
        const auto tokens = text::tokenize(doc.text, normalize);
        total_length += tokens.size();
        std::map<std::string, int> seen;
        for (const auto& token : tokens) seen[token] = 1;
        for (const auto& [term, _] : seen) stats.doc_frequency_[term] += 1;
    }
    stats.avg_length_ = corpus.empty() ? 0.0 : static_cast<double>(total_length) / corpus.size();
    return stats;
}

int Bm25Stats::doc_frequency(const std::string& term) const {
    auto it = doc_frequency_.find(term);
    return it == doc_frequency_.end() ? 0 : it->second;
}

Bm25Provider::Bm25Provider(Bm25Stats stats, std::string query, Bm25Params params,
                           text::Normalize normalize)
    : stats_(std::move(stats)),
      query_terms_(text::tokenize(query, normalize)),
      params_(params),
      normalize_(normalize) {
    if (stats_.doc_count() == 0) {
        throw ConfigError("bm25 provider requires non-empty corpus statistics");
    }
}

double Bm25Provider::score_text(const std::string& doc_text) const {
    const auto tokens = text::tokenize(doc_text, normalize_);
    std::map<std::string, int> tf;
    for (const auto& token : tokens) tf[token] += 1;
    const double doc_len = static_cast<double>(tokens.size());
    const double avg = stats_.avg_length() > 0.0 ? stats_.avg_length() : 1.0;
    const double n = static_cast<double>(stats_.doc_count());

    double total = 0.0;
    for (const auto& term : query_terms_) {
        auto it = tf.find(term);
        if (it == tf.end()) continue;
        const double f = static_cast<double>(it->second);
        const double df = static_cast<double>(stats_.doc_frequency(term));
        const double idf = std::log(1.0 + (n - df + 0.5) / (df + 0.5));
        const double denom = f + params_.k1 * (1.0 - params_.b + params_.b * doc_len / avg);
        total += idf * f * (params_.k1 + 1.0) / denom;
    }
    return total;
}

double Bm25Provider::score(const Document& doc, const OptionThought&) {
    return score_text(doc.text);
}

}  // namespace strata
