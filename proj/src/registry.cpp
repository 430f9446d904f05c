// Copyright 2026 The Strata Authors
// SPDX-License-Identifier: Apache-2.0

#include "strata/registry.hpp"

#include <cmath>
#include <set>

#include "strata/error.hpp"

namespace strata {

const char* to_string(ProviderBinding::Kind kind) {
    switch (kind) {
        case ProviderBinding::Kind::Table: return "table";
        case ProviderBinding::Kind::Keyword: return "keyword";
        case ProviderBinding::Kind::Threshold: return "threshold";
        case ProviderBinding::Kind::Bm25: return "bm25";
        case ProviderBinding::Kind::Chat: return "chat";
    }
    return "?";
}

namespace {

class Builder {
public:
    Builder(const std::map<std::string, ProviderBinding>& bindings, const RegistryContext& ctx)
        : bindings_(bindings), ctx_(ctx) {}

    std::shared_ptr<ScoreProvider> resolve(const std::string& name) {
        if (auto it = built_.find(name); it != built_.end()) return it->second;
        auto binding = bindings_.find(name);
        if (binding == bindings_.end()) {
            throw ConfigError("provider '" + name + "' is not defined");
        }
        if (!in_progress_.insert(name).second) {
            throw ConfigError("threshold provider cycle involving '" + name + "'");
        }
        auto provider = instantiate(name, binding->second);
        in_progress_.erase(name);
        built_[name] = provider;
        return provider;
    }

private:
    std::shared_ptr<ScoreProvider> instantiate(const std::string& name,
                                               const ProviderBinding& b) {
        switch (b.kind) {
            case ProviderBinding::Kind::Table:
                if (!ctx_.fixture) {
                    throw ConfigError("provider '" + name +
                                      "' is a table binding but no score fixture is configured");
                }
                return std::make_shared<TableProvider>(ctx_.fixture);
            case ProviderBinding::Kind::Keyword:
                return std::make_shared<KeywordProvider>(b.keywords, b.normalize, ctx_.matcher);
            case ProviderBinding::Kind::Threshold:
                if (b.inner.empty()) {
                    throw ConfigError("threshold provider '" + name + "' names no inner provider");
                }
                return std::make_shared<ThresholdProvider>(resolve(b.inner), b.tau);
            case ProviderBinding::Kind::Bm25:
                if (!ctx_.corpus) {
                    throw ConfigError("provider '" + name + "' needs corpus statistics");
                }
                return std::make_shared<Bm25Provider>(Bm25Stats::build(*ctx_.corpus, b.normalize),
                                                      ctx_.query, b.bm25, b.normalize);
            case ProviderBinding::Kind::Chat: {
                PromptTemplate tmpl;
                if (auto it = ctx_.templates.find(b.template_id); it != ctx_.templates.end()) {
                    tmpl = it->second;
                } else {
                    tmpl = builtin_template(b.template_id);
                }
                TranscriptStore* store = ctx_.fixture ? &ctx_.fixture->transcripts() : nullptr;
                return std::make_shared<ChatProvider>(ctx_.endpoint, tmpl, ctx_.query, ctx_.mode,
                                                      store, ctx_.transport);
            }
        }
        throw InternalError("unknown provider kind");
    }

    const std::map<std::string, ProviderBinding>& bindings_;
    const RegistryContext& ctx_;
    std::map<std::string, std::shared_ptr<ScoreProvider>> built_;
    std::set<std::string> in_progress_;
};

}  // namespace

ProviderRegistry ProviderRegistry::build(const std::map<std::string, ProviderBinding>& bindings,
                                         const RegistryContext& context) {
    ProviderRegistry registry;
    registry.fixture_ = context.fixture;
    if (context.fixture) registry.transcripts_ = &context.fixture->transcripts();
    Builder builder(bindings, context);
    for (const auto& [name, _] : bindings) {
        registry.providers_[name] = builder.resolve(name);
    }
    return registry;
}

void ProviderRegistry::add(const std::string& name, std::shared_ptr<ScoreProvider> provider) {
    providers_[name] = std::move(provider);
}

double ProviderRegistry::score(const Document& doc, const OptionThought& thought) const {
    if (thought.provider.empty()) {
        throw ConfigError("thought '" + thought.id + "' has no provider binding");
    }
    auto it = providers_.find(thought.provider);
    if (it == providers_.end()) {
        throw ConfigError("thought '" + thought.id + "' references unknown provider '" +
                          thought.provider + "'");
    }
    const double value = it->second->score(doc, thought);
    if (!std::isfinite(value) || value < 0.0) {
        throw ProviderError("provider '" + thought.provider +
                            "' produced a negative or non-finite score for ('" + doc.id + "', '" +
                            thought.id + "')");
    }
    if (thought.binary && value != 0.0 && value != 1.0) {
        throw ProviderError("thought '" + thought.id + "' is binary but provider '" +
                            thought.provider + "' scored " + std::to_string(value) + " for '" +
                            doc.id + "'");
    }
    return value;
}

}  // namespace strata
