#include "disco/prompting.hpp"

#include <set>

#include "disco/errors.hpp"
#include "disco/prompt_text.hpp"
#include "disco/util.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace disco;

namespace {

AspectMention mention(std::string leaf, Sentiment s, std::string snippet) {
    AspectMention m;
    m.review_id = "r";
    m.aspect_parent = "T";
    m.aspect_leaf = std::move(leaf);
    m.sentiment = s;
    m.snippet = std::move(snippet);
    return m;
}

TopicSelection::Item item(std::string leaf, Sentiment s, double score, std::uint64_t count) {
    return {FeatureKey{std::move(leaf), s}, score, count};
}

// pool and wifi are mentioned; beach is conspicuously absent
struct Scenario {
    TopicSelection selection;
    std::vector<AspectMention> mentions;

    Scenario() {
        selection.k = 7;
        selection.most_mentioned = {item("pool", Sentiment::positive, 0.2, 3),
                                    item("wifi", Sentiment::negative, -0.1, 2)};
        selection.over_represented = {item("pool", Sentiment::positive, 0.2, 3)};
        selection.missing_common = {item("beach", Sentiment::positive, -0.3, 0),
                                    item("wifi", Sentiment::positive, -0.1, 0)};
        mentions = {
            mention("pool", Sentiment::positive, "pool was warm enough"),
            mention("pool", Sentiment::positive, "nice big pool"),
            mention("pool", Sentiment::negative, "pool closed early"),
            mention("wifi", Sentiment::negative, "wifi kept dropping"),
            mention("wifi", Sentiment::negative, "slow wifi in rooms"),
        };
    }
};

}  // namespace

TEST_CASE("sample_snippets filters single words and keeps order") {
    const std::vector<std::string> candidates = {"spotless", "very clean room", "ok",
                                                 "friendly staff at desk", "quiet street"};
    const auto small = sample_snippets(candidates, 10, 1);
    REQUIRE(small.size() == 3);
    CHECK(small[0] == "very clean room");
    CHECK(small[1] == "friendly staff at desk");
    CHECK(small[2] == "quiet street");
}

TEST_CASE("sample_snippets samples a deterministic ordered subset when over the limit") {
    std::vector<std::string> candidates;
    for (int i = 0; i < 50; ++i) candidates.push_back("snippet number " + std::to_string(i));

    const auto a = sample_snippets(candidates, 20, 42);
    const auto b = sample_snippets(candidates, 20, 42);
    REQUIRE(a.size() == 20);
    CHECK(a == b);

    // a uniform subset in original order, no duplicates
    std::set<std::string> unique(a.begin(), a.end());
    CHECK(unique.size() == 20);
    std::size_t cursor = 0;
    for (const auto& s : a) {
        auto at = std::find(candidates.begin() + cursor, candidates.end(), s);
        REQUIRE(at != candidates.end());
        cursor = static_cast<std::size_t>(at - candidates.begin()) + 1;
    }

    const auto other = sample_snippets(candidates, 20, 43);
    CHECK(other != a);  // seed matters
}

TEST_CASE("build_topic_entries dedups leaves and fills counts and flags") {
    const Scenario sc;
    const auto entries = build_topic_entries(sc.selection, sc.mentions, 7);
    REQUIRE(entries.size() == 3);  // pool, wifi, beach in selection order

    CHECK(entries[0].topic == "pool");
    CHECK(entries[0].positive == 2);
    CHECK(entries[0].negative == 1);
    CHECK(entries[0].neutral == 0);
    CHECK(entries[0].total == 3);
    CHECK(entries[0].mentioned_more_often);
    CHECK_FALSE(entries[0].missing_but_common);
    CHECK(entries[0].snippets.size() == 3);

    CHECK(entries[1].topic == "wifi");
    CHECK(entries[1].negative == 2);
    CHECK(entries[1].total == 2);
    CHECK_FALSE(entries[1].mentioned_more_often);
    CHECK(entries[1].missing_but_common);  // under-represented on the positive side

    CHECK(entries[2].topic == "beach");
    CHECK(entries[2].total == 0);
    CHECK(entries[2].positive == 0);
    CHECK(entries[2].negative == 0);
    CHECK(entries[2].neutral == 0);
    CHECK(entries[2].missing_but_common);
    CHECK_FALSE(entries[2].mentioned_more_often);
    CHECK(entries[2].snippets.empty());
}

TEST_CASE("per-topic snippet sampling ignores sibling topics") {
    std::vector<AspectMention> mentions;
    for (int i = 0; i < 40; ++i)
        mentions.push_back(mention("pool", Sentiment::positive,
                                   "pool snippet number " + std::to_string(i)));

    TopicSelection lone;
    lone.most_mentioned = {item("pool", Sentiment::positive, 0.1, 40)};
    TopicSelection paired = lone;
    paired.most_mentioned.push_back(item("wifi", Sentiment::negative, -0.1, 1));

    auto with_sibling = mentions;
    with_sibling.push_back(mention("wifi", Sentiment::negative, "wifi kept dropping"));

    const auto a = build_topic_entries(lone, mentions, 7);
    const auto b = build_topic_entries(paired, with_sibling, 7);
    REQUIRE(a[0].topic == "pool");
    REQUIRE(b[0].topic == "pool");
    CHECK(a[0].snippets.size() == kSnippetLimit);
    CHECK(a[0].snippets == b[0].snippets);

    // a different run seed reshuffles
    const auto c = build_topic_entries(lone, mentions, 8);
    CHECK(c[0].snippets != a[0].snippets);
}

TEST_CASE("render_topic_entry emits exactly seven keys in canonical order") {
    TopicEntry e;
    e.topic = "pool";
    e.positive = 2;
    e.negative = 1;
    e.total = 3;
    e.mentioned_more_often = true;
    e.snippets = {"nice big pool"};

    const auto j = render_topic_entry(e);
    const std::vector<std::string> expected = {"positive",             "negative",
                                               "neutral",              "total",
                                               "mentioned_more_often", "missing_but_common",
                                               "snippets"};
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == expected);
    CHECK(j["positive"] == 2);
    CHECK(j["mentioned_more_often"] == true);
    CHECK(j["missing_but_common"] == false);
    CHECK(j["snippets"].size() == 1);

    const auto muted = render_topic_entry(e, true);
    CHECK(muted["mentioned_more_often"] == false);
    CHECK(muted["missing_but_common"] == false);
    std::vector<std::string> muted_keys;
    for (const auto& [k, v] : muted.items()) muted_keys.push_back(k);
    CHECK(muted_keys == expected);
}

TEST_CASE("disco prompt fills all four sections against the canonical system text") {
    const Scenario sc;
    const auto entries = build_topic_entries(sc.selection, sc.mentions, 7);
    auto vocab = std::make_shared<FeatureVocabulary>(
        Taxonomy::from_json_text(R"({"parents": {"T": ["beach", "pool", "wifi"]}})"));
    const auto ref = reference_from_counts(std::vector<std::uint64_t>(9, 1), vocab, 1e-9,
                                           "beach", 4);

    const auto bundle = build_disco_prompt(entries, sc.selection, ref, "a1", 99);
    CHECK(bundle.variant == PromptVariant::disco);
    CHECK(bundle.accommodation_id == "a1");
    CHECK(bundle.seed == 99);
    CHECK(bundle.system == prompts::kSummarySystem);

    // all placeholders replaced
    CHECK(bundle.user.find('{') != std::string::npos);  // JSON braces remain
    CHECK(bundle.user.find("{most_mentioned_topics}") == std::string::npos);
    CHECK(bundle.user.find("{mentioned_more_often}") == std::string::npos);
    CHECK(bundle.user.find("{missing_but_common_positives}") == std::string::npos);
    CHECK(bundle.user.find("{missing_but_common_negatives}") == std::string::npos);

    // section contents: pool and wifi appear under most mentioned, beach and
    // wifi under missing positives, nothing under missing negatives
    const auto most = bundle.user.find("### Most mentioned topics data:");
    const auto more = bundle.user.find("### Topics that are mentioned more often");
    const auto miss_pos = bundle.user.find("positive sentiment for other accommodations");
    const auto miss_neg = bundle.user.find("negative sentiment for other accommodations");
    REQUIRE(most != std::string::npos);
    REQUIRE(more != std::string::npos);
    REQUIRE(miss_pos != std::string::npos);
    REQUIRE(miss_neg != std::string::npos);
    CHECK(bundle.user.substr(most, more - most).find("\"pool\"") != std::string::npos);
    CHECK(bundle.user.substr(most, more - most).find("\"wifi\"") != std::string::npos);
    CHECK(bundle.user.substr(more, miss_pos - more).find("\"pool\"") != std::string::npos);
    CHECK(bundle.user.substr(more, miss_pos - more).find("\"beach\"") == std::string::npos);
    CHECK(bundle.user.substr(miss_pos, miss_neg - miss_pos).find("\"beach\"") !=
          std::string::npos);
    CHECK(bundle.user.substr(miss_neg).find("{}") != std::string::npos);

    // the zeroed beach entry signals its absence
    const auto beach = bundle.user.find("\"beach\": {");
    REQUIRE(beach != std::string::npos);
    const auto beach_block = bundle.user.substr(beach, 240);
    CHECK(beach_block.find("\"total\": 0") != std::string::npos);
    CHECK(beach_block.find("\"missing_but_common\": true") != std::string::npos);

    CHECK_THROWS_AS(build_disco_prompt({}, sc.selection, ref, "a1", 99), DataError);
}

TEST_CASE("baseline prompt is presence-only") {
    const Scenario sc;
    const auto entries = build_topic_entries(sc.selection, sc.mentions, 7);
    const auto kept = restrict_to_most_mentioned(entries, sc.selection);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].topic == "pool");
    CHECK(kept[1].topic == "wifi");

    const auto bundle = build_baseline_prompt(kept, "a1", 99);
    CHECK(bundle.variant == PromptVariant::baseline);
    CHECK(bundle.system == baseline_system_prompt());

    // one section only, no comparison or absence content
    CHECK(bundle.user.rfind("### Most mentioned topics data:\n", 0) == 0);
    CHECK(bundle.user.find("more often") == std::string::npos);
    CHECK(bundle.user.find("missing") != std::string::npos);  // the JSON key itself stays
    CHECK(bundle.user.find("### Topics") == std::string::npos);
    CHECK(bundle.user.find("\"beach\"") == std::string::npos);
    CHECK(bundle.user.find("\"mentioned_more_often\": true") == std::string::npos);
    CHECK(bundle.user.find("\"missing_but_common\": true") == std::string::npos);

    CHECK_THROWS_AS(build_baseline_prompt({}, "a1", 99), DataError);
}

TEST_CASE("baseline system prompt drops the comparison guidance and renumbers") {
    const std::string& baseline = baseline_system_prompt();
    const std::string canonical(prompts::kSummarySystem);

    // removed material
    CHECK(baseline.find("- mentioned_more_often:") == std::string::npos);
    CHECK(baseline.find("- missing_but_common:") == std::string::npos);
    CHECK(baseline.find("Highlight unusual emphasis") == std::string::npos);
    CHECK(baseline.find("Interpret absences") == std::string::npos);
    CHECK(baseline.find("Always specify the comparison") == std::string::npos);

    // retained and renumbered material
    CHECK(baseline.find("*Reference group for comparison*") != std::string::npos);
    CHECK(baseline.find("1. *Summarize mentioned topics*") != std::string::npos);
    CHECK(baseline.find("2. *Do NOT*") != std::string::npos);
    CHECK(baseline.find("3. *Format*: Single cohesive paragraph (max 120 words)") !=
          std::string::npos);
    CHECK(baseline.find("5. *Do NOT*") == std::string::npos);
    CHECK(baseline.find("6. *Format*") == std::string::npos);

    CHECK(baseline.size() < canonical.size());
    // stable across calls
    CHECK(&baseline_system_prompt() == &baseline);
}

TEST_CASE("prompt bundles round-trip with a field-sensitive fingerprint") {
    testsupport::TempDir dir("bundle");
    PromptBundle bundle;
    bundle.accommodation_id = "a1";
    bundle.variant = PromptVariant::disco;
    bundle.system = "system text";
    bundle.user = "user text";
    bundle.seed = 1234;

    save_prompt_bundle(bundle, dir.file("p.json"));
    const auto loaded = load_prompt_bundle(dir.file("p.json"));
    CHECK(loaded == bundle);
    CHECK(loaded.fingerprint() == bundle.fingerprint());

    PromptBundle tweaked = bundle;
    tweaked.user += "!";
    CHECK(tweaked.fingerprint() != bundle.fingerprint());
    tweaked = bundle;
    tweaked.seed += 1;
    CHECK(tweaked.fingerprint() != bundle.fingerprint());
    tweaked = bundle;
    tweaked.variant = PromptVariant::baseline;
    CHECK(tweaked.fingerprint() != bundle.fingerprint());
}
