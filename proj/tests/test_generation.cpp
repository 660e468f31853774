#include "disco/generation.hpp"

#include <sstream>

#include "disco/errors.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace disco;

namespace {

PromptBundle bundle() {
    PromptBundle b;
    b.accommodation_id = "a1";
    b.variant = PromptVariant::disco;
    b.system = "sys";
    b.user = "usr";
    b.seed = 3;
    return b;
}

RetryPolicy fast_retry() {
    RetryPolicy r;
    r.base_delay_ms = 0;
    return r;
}

}  // namespace

TEST_CASE("generate_summary fills the record and ties it to the prompt") {
    ScriptedClient client({"A calm and tidy stay near the water."}, "test-model");
    const auto record = generate_summary(bundle(), client, fast_retry());
    CHECK(record.accommodation_id == "a1");
    CHECK(record.variant == PromptVariant::disco);
    CHECK(record.text == "A calm and tidy stay near the water.");
    CHECK(record.model == "test-model");
    CHECK(record.word_count == 8);
    CHECK(record.prompt_fingerprint == bundle().fingerprint());
    CHECK(record.created_at.size() == 20);
}

TEST_CASE("generate_summary retries transport errors and empty outputs") {
    SUBCASE("transient failure recovers") {
        ScriptedClient client({kScriptedFailure, "Recovered text here."});
        const auto record = generate_summary(bundle(), client, fast_retry());
        CHECK(record.text == "Recovered text here.");
        CHECK(client.calls() == 2);
    }
    SUBCASE("blank output is treated as failure") {
        ScriptedClient client({"   ", "Second try text."});
        const auto record = generate_summary(bundle(), client, fast_retry());
        CHECK(record.text == "Second try text.");
    }
    SUBCASE("permanent failure raises ClientError") {
        ScriptedClient client({kScriptedFailure, kScriptedFailure, kScriptedFailure});
        CHECK_THROWS_AS(generate_summary(bundle(), client, fast_retry()), ClientError);
        CHECK(client.calls() == 3);
    }
}

TEST_CASE("validate_summary flags the prompt-side guideline violations") {
    SummaryRecord record;
    record.text = "Guests praise the quiet rooms and friendly staff.";
    record.word_count = 8;

    SUBCASE("clean text passes") {
        const auto v = validate_summary(record);
        CHECK(v.clean());
        CHECK(v.notes.empty());
    }
    SUBCASE("over 120 words") {
        record.word_count = 121;
        const auto v = validate_summary(record);
        CHECK(v.over_length);
        CHECK_FALSE(v.clean());
    }
    SUBCASE("multiple paragraphs") {
        record.text = "First paragraph about rooms.\n\nSecond paragraph about food.";
        const auto v = validate_summary(record);
        CHECK(v.multi_paragraph);
        REQUIRE(v.notes.size() == 1);
    }
    SUBCASE("wrapped lines are still one paragraph") {
        record.text = "First line of one paragraph\nsecond line of the same paragraph";
        const auto v = validate_summary(record);
        CHECK_FALSE(v.multi_paragraph);
    }
    SUBCASE("raw figures are reported with the offending token") {
        record.text = "Mentioned by 85% of guests.";
        const auto v = validate_summary(record);
        CHECK(v.raw_numbers);
        REQUIRE(v.notes.size() == 1);
        CHECK(v.notes[0].find("85%") != std::string::npos);
    }
}

TEST_CASE("summary JSONL round-trips") {
    SummaryRecord a;
    a.accommodation_id = "a1";
    a.variant = PromptVariant::disco;
    a.text = "Nice quiet place to stay.";
    a.model = "mock";
    a.word_count = 5;
    a.created_at = "2026-08-14T12:00:00Z";
    a.prompt_fingerprint = "00000000deadbeef";
    SummaryRecord b = a;
    b.accommodation_id = "a2";
    b.variant = PromptVariant::baseline;
    b.text = "Friendly staff, good \"location\".";

    testsupport::TempDir dir("summaries");
    {
        std::ostringstream buf;
        append_summary_jsonl(a, buf);
        append_summary_jsonl(b, buf);
        testsupport::write_file(dir.file("summaries.jsonl"), buf.str());
    }
    const auto loaded = load_summaries(dir.file("summaries.jsonl"));
    REQUIRE(loaded.size() == 2);
    CHECK(loaded[0].accommodation_id == "a1");
    CHECK(loaded[0].variant == PromptVariant::disco);
    CHECK(loaded[0].text == a.text);
    CHECK(loaded[1].variant == PromptVariant::baseline);
    CHECK(loaded[1].text == b.text);  // embedded quotes survive

    testsupport::write_file(dir.file("bad.jsonl"), "{\"accommodation_id\": \"x\"}\n");
    CHECK_THROWS_AS(load_summaries(dir.file("bad.jsonl")), DataError);
}
