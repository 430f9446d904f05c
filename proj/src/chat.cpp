// Copyright 2026 The Strata Authors
// SPDX-License-Identifier: Apache-2.0

#include "strata/chat.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <semaphore>
#include <thread>

#include <json.hpp>
#include <openssl/evp.h>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "strata/error.hpp"

namespace strata {

using nlohmann::json;

const char* to_string(RunMode mode) {
    switch (mode) {
        case RunMode::Live: return "live";
        case RunMode::Replay: return "replay";
        case RunMode::Record: return "record";
    }
    return "?";
}

RunMode run_mode_from_string(const std::string& name) {
    if (name == "live") return RunMode::Live;
    if (name == "replay") return RunMode::Replay;
    if (name == "record") return RunMode::Record;
    throw ConfigError("unknown run mode '" + name + "' (expected live, replay, or record)");
}

namespace {

const PromptTemplate kYesNoTemplate{
    "relevance-yesno",
    "You are a strict retrieval judge. Reply with exactly YES or NO and nothing else.",
    "Query:\n{query}\n\nCriterion:\n{criterion}\n\nDocument:\n{document}\n\n"
    "Does the document satisfy the criterion with respect to the query? Reply YES or NO.",
    ResponseContract::YesNo,
};

// The 0-100 rubric wording is this project's own; callers can replace it
// with a custom template in the configuration.
const PromptTemplate kScoreTemplate{
    "score-0-100",
    "You are a strict retrieval judge. Reply with a single line of the form "
    "'Score: N' where N is an integer between 0 and 100, and nothing else.",
    "Query:\n{query}\n\nCriterion:\n{criterion}\n\nDocument:\n{document}\n\n"
    "Rate from 0 (does not satisfy the criterion at all) to 100 (fully and "
    "unambiguously satisfies it). Reply with 'Score: N' only.",
    ResponseContract::Score,
};

std::string replace_all(std::string text, const std::string& needle, const std::string& value) {
    std::size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        text.replace(pos, needle.size(), value);
        pos += value.size();
    }
    return text;
}

std::string trimmed(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

std::string lowered(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool retryable_status(int status) { return status == 429 || status >= 500; }

}  // namespace

const PromptTemplate& builtin_template(const std::string& id) {
    if (id == kYesNoTemplate.id) return kYesNoTemplate;
    if (id == kScoreTemplate.id) return kScoreTemplate;
    throw ConfigError("unknown chat template '" + id + "'");
}

bool is_builtin_template(const std::string& id) {
    return id == kYesNoTemplate.id || id == kScoreTemplate.id;
}

std::string render_chat_request(const PromptTemplate& tmpl, const std::string& model,
                                const std::string& query, const std::string& criterion,
                                const std::string& document_text) {
    const auto fill = [&](const std::string& part) {
        return replace_all(replace_all(replace_all(part, "{query}", query), "{criterion}", criterion),
                           "{document}", document_text);
    };
    const json request = {
        {"model", model},
        {"messages",
         {{{"role", "system"}, {"content", fill(tmpl.system)}},
          {{"role", "user"}, {"content", fill(tmpl.user)}}}},
        {"temperature", 0},
        {"top_p", 1},
        {"frequency_penalty", 0},
        {"presence_penalty", 0},
    };
    return request.dump();
}

std::string request_digest(const std::string& canonical_request) {
    unsigned char hash[EVP_MAX_MD_SIZE];
    unsigned int hash_len = 0;
    if (EVP_Digest(canonical_request.data(), canonical_request.size(), hash, &hash_len,
                   EVP_sha256(), nullptr) != 1) {
        throw InternalError("sha-256 digest failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(hash_len * 2);
    for (unsigned int i = 0; i < hash_len; ++i) {
        out.push_back(hex[hash[i] >> 4]);
        out.push_back(hex[hash[i] & 0x0F]);
    }
    return out;
}

double parse_chat_response(const std::string& content, ResponseContract contract) {
    const std::string body = trimmed(content);
    if (contract == ResponseContract::YesNo) {
        std::string word = lowered(body);
        if (!word.empty() && word.back() == '.') word.pop_back();
        if (word == "yes") return 1.0;
        if (word == "no") return 0.0;
        throw ParseError("expected YES or NO, got: \"" + content + "\"");
    }
    // Score contract: first non-empty line, optional "Score:" prefix, integer 0..100.
    std::string line = body;
    if (const auto nl = line.find('\n'); nl != std::string::npos) line = trimmed(line.substr(0, nl));
    std::string value = line;
    const std::string prefix = lowered(value.substr(0, std::min<std::size_t>(value.size(), 6)));
    if (prefix == "score:") {
        value = trimmed(value.substr(6));
    } else if (lowered(value.substr(0, std::min<std::size_t>(value.size(), 5))) == "score") {
        const auto colon = value.find(':');
        if (colon == std::string::npos) throw ParseError("expected 'Score: N', got: \"" + content + "\"");
        value = trimmed(value.substr(colon + 1));
    }
    if (value.empty() || !std::all_of(value.begin(), value.end(), [](unsigned char c) {
            return std::isdigit(c);
        })) {
        throw ParseError("expected an integer score line, got: \"" + content + "\"");
    }
    const long parsed = std::strtol(value.c_str(), nullptr, 10);
    if (parsed < 0 || parsed > 100) {
        throw ParseError("score out of the 0..100 range: \"" + content + "\"");
    }
    return static_cast<double>(parsed);
}

// --- transport ------------------------------------------------------------

namespace {

class HttplibTransport : public HttpTransport {
public:
    HttplibTransport(std::string base_url, int timeout_ms) : client_(base_url.c_str()) {
        client_.set_connection_timeout(0, timeout_ms * 1000);
        client_.set_read_timeout(timeout_ms / 1000, (timeout_ms % 1000) * 1000);
        client_.set_write_timeout(timeout_ms / 1000, (timeout_ms % 1000) * 1000);
    }

    HttpResponse post(const std::string& path, const std::string& body,
                      const std::map<std::string, std::string>& headers) override {
        httplib::Headers hl(headers.begin(), headers.end());
        auto result = client_.Post(path.c_str(), hl, body, "application/json");
        if (!result) {
            return {0, "", httplib::to_string(result.error())};
        }
        return {result->status, result->body, ""};
    }

private:
    httplib::Client client_;
};

}  // namespace

struct ChatProvider::Limiter {
    explicit Limiter(int slots) : semaphore(std::max(1, slots)) {}
    std::counting_semaphore<4096> semaphore;
};

ChatProvider::ChatProvider(ChatEndpoint endpoint, PromptTemplate tmpl, std::string query,
                           RunMode mode, TranscriptStore* transcripts,
                           std::shared_ptr<HttpTransport> transport)
    : endpoint_(std::move(endpoint)),
      template_(std::move(tmpl)),
      query_(std::move(query)),
      mode_(mode),
      transcripts_(transcripts),
      transport_(std::move(transport)) {
    if (mode_ == RunMode::Replay) {
        if (!transcripts_) throw ConfigError("replay mode requires a transcript fixture");
        return;  // no transport, no credential: replay is offline by construction
    }
    if (!endpoint_.credential_env.empty()) {
        const char* value = std::getenv(endpoint_.credential_env.c_str());
        if (!value || *value == '\0') {
            throw ProviderError("credential environment variable '" + endpoint_.credential_env +
                                "' is not set");
        }
        credential_ = value;
    }
    if (!transport_) {
        if (endpoint_.base_url.empty()) throw ConfigError("chat endpoint base_url is empty");
        transport_ = std::make_shared<HttplibTransport>(endpoint_.base_url, endpoint_.timeout_ms);
    }
    limiter_ = std::make_unique<Limiter>(endpoint_.parallelism);
    if (mode_ == RunMode::Record && !transcripts_) {
        throw ConfigError("record mode requires a transcript store to write to");
    }
}

ChatProvider::~ChatProvider() = default;

std::string ChatProvider::complete(const std::string& request_body) {
    std::map<std::string, std::string> headers;
    if (!credential_.empty()) headers["Authorization"] = "Bearer " + credential_;

    HttpResponse last;
    const int attempts = std::max(1, endpoint_.max_retries);
    for (int attempt = 1; attempt <= attempts; ++attempt) {
        if (attempt > 1) {
            const auto delay = std::chrono::milliseconds(endpoint_.retry_backoff_ms) *
                               (1 << (attempt - 2));
            std::this_thread::sleep_for(delay);
        }
        limiter_->semaphore.acquire();
        last = transport_->post(endpoint_.path, request_body, headers);
        limiter_->semaphore.release();
        if (!last.error.empty() || retryable_status(last.status)) continue;
        break;
    }
    if (!last.error.empty()) {
        throw ProviderError("chat request failed after " + std::to_string(attempts) +
                            " attempts: " + last.error);
    }
    if (last.status != 200) {
        throw ProviderError("chat endpoint returned status " + std::to_string(last.status) +
                            (last.body.empty() ? "" : ": " + last.body));
    }
    json response;
    try {
        response = json::parse(last.body);
    } catch (const json::exception&) {
        throw ParseError("chat endpoint returned invalid JSON: \"" + last.body + "\"");
    }
    if (!response.contains("choices") || !response["choices"].is_array() ||
        response["choices"].empty() || !response["choices"][0].contains("message") ||
        !response["choices"][0]["message"].contains("content") ||
        !response["choices"][0]["message"]["content"].is_string()) {
        throw ParseError("chat response missing choices[0].message.content: \"" + last.body +
                         "\"");
    }
    return response["choices"][0]["message"]["content"].get<std::string>();
}

double ChatProvider::score(const Document& doc, const OptionThought& thought) {
    const std::string request =
        render_chat_request(template_, endpoint_.model, query_, thought.criterion, doc.text);
    const std::string digest = request_digest(request);

    if (mode_ == RunMode::Replay) {
        const auto content = transcripts_->lookup(digest);
        if (!content) {
            throw ProviderError("missing transcript entry (digest " + digest + ") for document '" +
                                doc.id + "' on thought '" + thought.id + "'");
        }
        return parse_chat_response(*content, template_.contract);
    }

    const std::string content = complete(request);
    if (mode_ == RunMode::Record) transcripts_->record(digest, content);
    return parse_chat_response(content, template_.contract);
}

}  // namespace strata
