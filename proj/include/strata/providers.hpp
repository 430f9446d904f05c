// Copyright 2026 The Strata Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "strata/text.hpp"
#include "strata/types.hpp"

namespace strata {

/// Produces the relevance score of one document for one thought.
/// Implementations must return finite non-negative values; the registry
/// additionally enforces {0,1} for binary-flagged thoughts.
class ScoreProvider {
public:
    virtual ~ScoreProvider() = default;
    virtual double score(const Document& doc, const OptionThought& thought) = 0;
};

/// Recorded chat exchanges keyed by request digest. Loadable from and
/// appendable to a line-delimited file of {"digest": hex, "response": text}.
class TranscriptStore {
public:
    TranscriptStore() = default;

    /// Loads existing records; a missing file is an empty store.
    static TranscriptStore load(const std::string& path);

    std::optional<std::string> lookup(const std::string& digest) const;

    /// Adds one record and appends it to `sink_path` when set. Thread-safe.
    void record(const std::string& digest, const std::string& response);

    void set_sink(const std::string& path) { sink_path_ = path; }
    std::size_t size() const { return entries_.size(); }

private:
    std::map<std::string, std::string> entries_;
    std::string sink_path_;
    mutable std::mutex mutex_;
};

/// Score records (and optional chat transcripts) loaded from fixture files.
/// The canonical deterministic provider backing for tests and replay runs.
class ScoreFixture {
public:
    ScoreFixture() = default;

    /// Parses line-delimited {"doc":…, "thought":…, "score":…} records.
    /// Throws DataError on malformed lines, duplicates, or negative scores,
    /// citing the line number.
    static ScoreFixture load(const std::string& path);

    std::optional<double> find(const DocumentId& doc, const ThoughtId& thought) const;

    /// Throws ProviderError naming the pair when absent.
    double at(const DocumentId& doc, const ThoughtId& thought) const;

    void add(const DocumentId& doc, const ThoughtId& thought, double score);
    std::size_t size() const { return scores_.size(); }

    TranscriptStore& transcripts() { return transcripts_; }
    const TranscriptStore& transcripts() const { return transcripts_; }

private:
    std::map<std::pair<DocumentId, ThoughtId>, double> scores_;
    TranscriptStore transcripts_;
};

/// Fixture-backed provider: returns the recorded score for (doc, thought).
class TableProvider : public ScoreProvider {
public:
    explicit TableProvider(std::shared_ptr<const ScoreFixture> fixture)
        : fixture_(std::move(fixture)) {}

    double score(const Document& doc, const OptionThought& thought) override;

private:
    std::shared_ptr<const ScoreFixture> fixture_;
};

/// One keyword entry plus its accepted alternatives (synonym list).
struct Keyword {
    std::string term;
    std::vector<std::string> synonyms;
};

/// Optional similarity hook: given a (normalized) document token and
/// keyword, decide whether they match. Lets callers plug in embedding or
/// synonym services without changing the provider.
using TokenMatcher = std::function<bool(const std::string& token, const std::string& keyword)>;

/// Binary whole-token keyword matcher over normalized document text.
class KeywordProvider : public ScoreProvider {
public:
    KeywordProvider(std::vector<Keyword> keywords, text::Normalize normalize,
                    TokenMatcher matcher = nullptr);

    double score(const Document& doc, const OptionThought& thought) override;

private:
    std::vector<Keyword> keywords_;  // terms and synonyms stored normalized
    text::Normalize normalize_;
    TokenMatcher matcher_;
};

/// Binary threshold over an inner provider: 1 iff inner score >= tau.
class ThresholdProvider : public ScoreProvider {
public:
    ThresholdProvider(std::shared_ptr<ScoreProvider> inner, double tau);

    double score(const Document& doc, const OptionThought& thought) override;

private:
    std::shared_ptr<ScoreProvider> inner_;
    double tau_;
};

struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;
};

/// Corpus-level term statistics for BM25, precomputed once per run.
class Bm25Stats {
public:
    static Bm25Stats build(const std::vector<Document>& corpus,
                           text::Normalize normalize = text::Normalize::Fold);

    std::size_t doc_count() const { return doc_count_; }
    double avg_length() const { return avg_length_; }
    int doc_frequency(const std::string& term) const;

private:
    std::size_t doc_count_ = 0;
    double avg_length_ = 0.0;
    std::map<std::string, int> doc_frequency_;
};

/// Okapi BM25 against the run query. Uses the non-negative idf variant
/// ln(1 + (N - df + 0.5) / (df + 0.5)) so scores satisfy the provider
/// contract.
class Bm25Provider : public ScoreProvider {
public:
    Bm25Provider(Bm25Stats stats, std::string query, Bm25Params params = {},
                 text::Normalize normalize = text::Normalize::Fold);

    double score(const Document& doc, const OptionThought& thought) override;

    /// Scoring core, exposed for the baseline harness.
    double score_text(const std::string& doc_text) const;

private:
    Bm25Stats stats_;
    std::vector<std::string> query_terms_;
    Bm25Params params_;
    text::Normalize normalize_;
};

}  // namespace strata
