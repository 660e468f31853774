#include "disco/client.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

#include "disco/errors.hpp"
#include "doctest.h"
#include "httplib.h"
#include "json.hpp"

using namespace disco;

TEST_CASE("ScriptedClient replays in order and signals failures") {
    ScriptedClient client({"first", kScriptedFailure, "third"});
    CHECK(client.complete({"s", "u"}) == "first");
    CHECK_THROWS_AS(client.complete({"s", "u"}), ClientError);
    CHECK(client.complete({"s", "u"}) == "third");
    CHECK_THROWS_AS(client.complete({"s", "u"}), ClientError);  // queue exhausted
    CHECK(client.calls() == 4);
}

TEST_CASE("MockSummaryClient is deterministic and prompt-sensitive") {
    MockSummaryClient client;
    const std::string user = R"(### Most mentioned topics data:
{
  "cleanliness": {
    "positive": 3
  },
  "pool_size": {
    "positive": 2
  }
}

### Topics that are mentioned more often compared to similar accommodations:
{
  "pool_size": {
    "positive": 2
  }
}
)";
    const auto a = client.complete({"sys", user});
    const auto b = client.complete({"sys", user});
    CHECK(a == b);
    CHECK(a.find("cleanliness") != std::string::npos);
    CHECK(a.find("pool size") != std::string::npos);

    const auto other = client.complete({"sys", "### Most mentioned topics data:\n{\n  \"wifi\": {\n    \"positive\": 1\n  }\n}\n"});
    CHECK(other != a);
    CHECK(other.find("wifi") != std::string::npos);
}

TEST_CASE("HttpChatClient speaks the chat completions shape") {
    httplib::Server server;
    std::string seen_auth, seen_body;
    server.Post("/v1/chat/completions",
                [&](const httplib::Request& req, httplib::Response& res) {
                    seen_auth = req.get_header_value("Authorization");
                    seen_body = req.body;
                    nlohmann::json reply = {
                        {"choices",
                         {{{"message", {{"role", "assistant"}, {"content", "hello from test"}}}}}}};
                    res.set_content(reply.dump(), "application/json");
                });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread serve([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    setenv(kApiKeyEnvVar, "sk-test-123", 1);
    HttpChatClient client("http://127.0.0.1:" + std::to_string(port) + "/v1", "test-model",
                          {{"temperature", 0.0}});
    const auto text = client.complete({"be brief", "say hello"});
    CHECK(text == "hello from test");
    CHECK(seen_auth == "Bearer sk-test-123");

    const auto body = nlohmann::json::parse(seen_body);
    CHECK(body.at("model") == "test-model");
    CHECK(body.at("temperature") == 0.0);
    REQUIRE(body.at("messages").size() == 2);
    CHECK(body["messages"][0]["role"] == "system");
    CHECK(body["messages"][0]["content"] == "be brief");
    CHECK(body["messages"][1]["role"] == "user");
    CHECK(body["messages"][1]["content"] == "say hello");

    server.stop();
    serve.join();
    unsetenv(kApiKeyEnvVar);
}

TEST_CASE("HttpChatClient maps HTTP errors and bad payloads to ClientError") {
    httplib::Server server;
    std::atomic<int> mode{0};
    server.Post("/v1/chat/completions", [&](const httplib::Request&, httplib::Response& res) {
        if (mode == 0) {
            res.status = 500;
            res.set_content("boom", "text/plain");
        } else {
            res.set_content("{\"choices\": []}", "application/json");
        }
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread serve([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    HttpChatClient client("http://127.0.0.1:" + std::to_string(port) + "/v1", "m");
    CHECK_THROWS_AS(client.complete({"s", "u"}), ClientError);
    mode = 1;
    CHECK_THROWS_AS(client.complete({"s", "u"}), ClientError);

    server.stop();
    serve.join();
}

TEST_CASE("unreachable endpoint raises ClientError") {
    // TEST-NET-1 address; nothing listens there
    HttpChatClient client("http://127.0.0.1:9/v1", "m");
    CHECK_THROWS_AS(client.complete({"s", "u"}), ClientError);
}
