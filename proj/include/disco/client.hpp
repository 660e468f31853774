#pragma once

#include <deque>
#include <functional>
#include <mutex>
#include <string>

#include "json.hpp"

namespace disco {

struct ChatRequest {
    std::string system;
    std::string user;
};

// Anything that can turn a (system, user) pair into completion text. complete()
// must be safe to call from several threads at once and throws ClientError on
// transport or model failure.
class GenerationClient {
public:
    virtual ~GenerationClient() = default;
    virtual std::string complete(const ChatRequest& request) = 0;
    virtual std::string model_label() const = 0;
};

struct RetryPolicy {
    int max_attempts = 3;
    int base_delay_ms = 200;  // doubles per retry; tests set 0
};

// Sleeps for the backoff step before retry `attempt` (1-based).
void retry_backoff(const RetryPolicy& policy, int attempt);

// OpenAI-style chat endpoint speaker. Reads the API key from the
// DISCO_API_KEY environment variable; keys never appear in config files.
class HttpChatClient : public GenerationClient {
public:
    // base_url like "http://localhost:8080/v1"; options are decoding
    // parameters (temperature, max_tokens, ...) passed through verbatim.
    HttpChatClient(std::string base_url, std::string model,
                   nlohmann::json options = nlohmann::json::object());

    std::string complete(const ChatRequest& request) override;
    std::string model_label() const override { return model_; }

private:
    std::string scheme_host_;
    std::string path_prefix_;
    std::string model_;
    nlohmann::json options_;
    std::string api_key_;
};

// Offline summarizer for --mock runs: composes a deterministic paragraph from
// the topic names in the user prompt, no counts or network involved.
class MockSummaryClient : public GenerationClient {
public:
    std::string complete(const ChatRequest& request) override;
    std::string model_label() const override { return "mock"; }
};

// Scripted response that simulates a transport failure. Spelled as two
// literals because a hex escape would greedily eat the 'f'.
inline constexpr const char* kScriptedFailure = "\x01" "fail";

// Replays canned responses in order; test double for extraction and
// summarization. An empty queue or a response of kScriptedFailure raises
// ClientError, which is how tests exercise the retry path.
class ScriptedClient : public GenerationClient {
public:
    explicit ScriptedClient(std::deque<std::string> responses, std::string label = "scripted")
        : responses_(std::move(responses)), label_(std::move(label)) {}

    std::string complete(const ChatRequest& request) override;
    std::string model_label() const override { return label_; }

    std::size_t calls() const { return calls_; }

private:
    std::mutex mu_;
    std::deque<std::string> responses_;
    std::string label_;
    std::size_t calls_ = 0;
};

inline constexpr const char* kApiKeyEnvVar = "DISCO_API_KEY";

}  // namespace disco
