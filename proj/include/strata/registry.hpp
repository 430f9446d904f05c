// Copyright 2026 The Strata Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "strata/chat.hpp"
#include "strata/providers.hpp"

namespace strata {

/// Declarative description of one named provider, as configuration states it.
struct ProviderBinding {
    enum class Kind { Table, Keyword, Threshold, Bm25, Chat };

    Kind kind = Kind::Table;
    // keyword
    std::vector<Keyword> keywords;
    text::Normalize normalize = text::Normalize::Fold;
    // threshold
    double tau = 0.0;
    std::string inner;
    // bm25
    Bm25Params bm25;
    // chat
    std::string template_id = "relevance-yesno";
};

const char* to_string(ProviderBinding::Kind kind);

/// Everything bindings may need at instantiation time.
struct RegistryContext {
    std::shared_ptr<ScoreFixture> fixture;  ///< table scores + transcripts
    ChatEndpoint endpoint;
    std::map<std::string, PromptTemplate> templates;  ///< custom templates by id
    const std::vector<Document>* corpus = nullptr;    ///< bm25 statistics source
    std::string query;
    RunMode mode = RunMode::Replay;
    TokenMatcher matcher;  ///< optional keyword similarity hook
    std::shared_ptr<HttpTransport> transport;  ///< test seam; null uses real HTTP
};

/// Resolves thought -> provider and enforces the score contract: finite,
/// non-negative, and {0,1} for binary-flagged thoughts.
class ProviderRegistry {
public:
    ProviderRegistry() = default;

    /// Instantiates every binding. Throws ConfigError on unknown inner
    /// references, threshold cycles, or bindings whose inputs are missing
    /// (e.g. a table binding without a score fixture).
    static ProviderRegistry build(const std::map<std::string, ProviderBinding>& bindings,
                                  const RegistryContext& context);

    void add(const std::string& name, std::shared_ptr<ScoreProvider> provider);
    bool has(const std::string& name) const { return providers_.count(name) != 0; }

    double score(const Document& doc, const OptionThought& thought) const;

    /// The transcript store backing chat providers (for record sinks).
    TranscriptStore* transcripts() { return transcripts_; }

private:
    std::map<std::string, std::shared_ptr<ScoreProvider>> providers_;
    TranscriptStore* transcripts_ = nullptr;
    std::shared_ptr<ScoreFixture> fixture_;  // keeps transcripts alive
};

}  // namespace strata
