// Copyright 2026 The Strata Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "strata/providers.hpp"

namespace strata {

/// How a run resolves chat scores. Replay runs never touch the network.
enum class RunMode { Live, Replay, Record };

const char* to_string(RunMode mode);
RunMode run_mode_from_string(const std::string& name);

/// What the model's reply must look like and how it maps to a score.
enum class ResponseContract {
    YesNo,  ///< exactly YES or NO -> 1 / 0
    Score,  ///< a line "Score: N" (or a bare integer), N in 0..100 -> N
};

/// A chat prompt with {query}, {criterion} and {document} placeholders.
struct PromptTemplate {
    std::string id;
    std::string system;
    std::string user;
    ResponseContract contract = ResponseContract::YesNo;
};

/// The built-in templates: "relevance-yesno" and "score-0-100".
const PromptTemplate& builtin_template(const std::string& id);
bool is_builtin_template(const std::string& id);

struct ChatEndpoint {
    std::string base_url;
    std::string path = "/v1/chat/completions";
    std::string model;
    std::string credential_env;  ///< name of the env var holding the key, optional
    int timeout_ms = 30000;
    int max_retries = 3;
    int retry_backoff_ms = 250;
    int parallelism = 4;  ///< max concurrent in-flight requests
};

struct HttpResponse {
    int status = 0;
    std::string body;
    std::string error;  ///< non-empty on transport failure
};

/// Transport seam so tests can exercise the provider without sockets.
class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    virtual HttpResponse post(const std::string& path, const std::string& body,
                              const std::map<std::string, std::string>& headers) = 0;
};

/// Renders the template into the wire-format request body (deterministic
/// decoding settings: temperature 0, top-p 1, both penalties 0).
std::string render_chat_request(const PromptTemplate& tmpl, const std::string& model,
                                const std::string& query, const std::string& criterion,
                                const std::string& document_text);

/// SHA-256 hex of the canonical rendered request; the transcript key.
std::string request_digest(const std::string& canonical_request);

/// Maps a model reply to a score per the contract; throws ParseError
/// carrying the raw text on any deviation.
double parse_chat_response(const std::string& content, ResponseContract contract);

/// Chat-completion scorer. Live and Record modes post to the endpoint with
/// bounded retries on transport failures; Record also appends transcripts.
/// Replay resolves from the transcript store alone and holds no transport.
class ChatProvider : public ScoreProvider {
public:
    ChatProvider(ChatEndpoint endpoint, PromptTemplate tmpl, std::string query, RunMode mode,
                 TranscriptStore* transcripts,
                 std::shared_ptr<HttpTransport> transport = nullptr);
    ~ChatProvider() override;

    double score(const Document& doc, const OptionThought& thought) override;

private:
    std::string complete(const std::string& request_body);

    struct Limiter;
    ChatEndpoint endpoint_;
    PromptTemplate template_;
    std::string query_;
    RunMode mode_;
    TranscriptStore* transcripts_;
    std::shared_ptr<HttpTransport> transport_;
    std::unique_ptr<Limiter> limiter_;
    std::string credential_;
};

}  // namespace strata
