#include "disco/client.hpp"

#include <chrono>
#include <cstdlib>
#include <set>
#include <thread>
#include <vector>

#include "disco/errors.hpp"
#include "disco/util.hpp"
#include "httplib.h"

namespace disco {

void retry_backoff(const RetryPolicy& policy, int attempt) {
    if (policy.base_delay_ms <= 0) return;
    long ms = policy.base_delay_ms;
    for (int i = 1; i < attempt; ++i) ms *= 2;
    std::this_thread::sleep_for(std::chrono::milliseconds(ms));
}

HttpChatClient::HttpChatClient(std::string base_url, std::string model, nlohmann::json options)
    : model_(std::move(model)), options_(std::move(options)) {
    auto scheme_end = base_url.find("://");
    if (scheme_end == std::string::npos)
        throw ConfigError("client: base_url must include a scheme: " + base_url);
    std::string scheme = base_url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https")
        throw ConfigError("client: unsupported scheme \"" + scheme + "\"");
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (scheme == "https")
        throw ConfigError("client: built without TLS support, use an http base_url");
#endif
    auto path_start = base_url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        scheme_host_ = base_url;
    } else {
        scheme_host_ = base_url.substr(0, path_start);
        path_prefix_ = base_url.substr(path_start);
        while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
    }
    if (const char* key = std::getenv(kApiKeyEnvVar)) api_key_ = key;
}

std::string HttpChatClient::complete(const ChatRequest& request) {
    nlohmann::json body;
    body["model"] = model_;
    body["messages"] = nlohmann::json::array({
        {{"role", "system"}, {"content", request.system}},
        {{"role", "user"}, {"content", request.user}},
    });
    if (options_.is_object())
        for (const auto& [k, v] : options_.items()) body[k] = v;

    // A client per call keeps this trivially safe under the extraction pool.
    httplib::Client http(scheme_host_);
    http.set_connection_timeout(30, 0);
    http.set_read_timeout(120, 0);
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

    auto res = http.Post(path_prefix_ + "/chat/completions", headers, body.dump(),
                         "application/json");
    if (!res)
        throw ClientError("client: " + httplib::to_string(res.error()) + " talking to " +
                          scheme_host_);
    if (res->status != 200)
        throw ClientError("client: http status " + std::to_string(res->status) + ": " +
                          res->body.substr(0, 200));

    nlohmann::json doc = nlohmann::json::parse(res->body, nullptr, false);
    if (doc.is_discarded()) throw ClientError("client: response is not JSON");
    try {
        return doc.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception&) {
        throw ClientError("client: response missing choices[0].message.content");
    }
}

namespace {

std::string humanize(std::string topic) {
    for (char& c : topic)
        if (c == '_') c = ' ';
    return topic;
}

std::string join_topics(const std::vector<std::string>& topics, std::size_t limit) {
    std::vector<std::string> names;
    for (const auto& t : topics) {
        if (names.size() == limit) break;
        names.push_back(humanize(t));
    }
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i > 0) out += (i + 1 == names.size()) ? " and " : ", ";
        out += names[i];
    }
    return out;
}

}  // namespace

std::string MockSummaryClient::complete(const ChatRequest& request) {
    // The user prompt renders each section as a JSON object whose topic keys
    // sit at indent 2, one per line: `  "topic": {`. Section headers start
    // with "###". That structure is all the mock needs.
    std::vector<std::string> most, more, missing_pos, missing_neg;
    std::vector<std::string>* current = &most;
    std::size_t pos = 0;
    std::set<std::string> seen;
    while (pos <= request.user.size()) {
        std::size_t eol = request.user.find('\n', pos);
        if (eol == std::string::npos) eol = request.user.size();
        std::string_view line(request.user.data() + pos, eol - pos);
        pos = eol + 1;
        if (line.rfind("###", 0) == 0) {
            if (line.find("more often") != std::string_view::npos)
                current = &more;
            else if (line.find("positive sentiment") != std::string_view::npos)
                current = &missing_pos;
            else if (line.find("negative sentiment") != std::string_view::npos)
                current = &missing_neg;
            else
                current = &most;
            continue;
        }
        if (line.size() > 5 && line.rfind("  \"", 0) == 0 && line.find("\": {") != std::string_view::npos) {
            std::string topic(line.substr(3, line.find("\": {") - 3));
            if (seen.insert(topic).second) current->push_back(std::move(topic));
        }
    }

    std::string text;
    if (most.empty()) {
        text = "Recent guests left little detailed feedback about this stay.";
    } else {
        text = "Guests staying here most often talk about " + join_topics(most, 4) + ".";
    }
    if (!more.empty())
        text += " Compared with similar accommodations nearby, reviewers bring up " +
                join_topics(more, 3) + " noticeably more often.";
    if (!missing_pos.empty())
        text += " Unlike its neighbours, this place draws little praise for " +
                join_topics(missing_pos, 3) + ".";
    if (!missing_neg.empty())
        text += " Guests also stay quiet about " + join_topics(missing_neg, 3) +
                ", a frequent complaint elsewhere.";
    text += " Overall the picture is consistent across recent stays.";
    return text;
}

std::string ScriptedClient::complete(const ChatRequest&) {
    std::lock_guard<std::mutex> lock(mu_);
    ++calls_;
    if (responses_.empty()) throw ClientError("scripted client: out of responses");
    std::string next = std::move(responses_.front());
    responses_.pop_front();
    if (next == kScriptedFailure) throw ClientError("scripted client: simulated transport failure");
    return next;
}

}  // namespace disco
