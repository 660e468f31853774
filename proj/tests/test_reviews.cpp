#include "disco/review.hpp"

#include "disco/errors.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace disco;
using testsupport::TempDir;
using testsupport::write_file;

namespace {

const char* kGoodCorpus =
    R"({"review_id": "r1", "accommodation_id": "a1", "domain": "beach", "title": "Nice", "liked": "clean room", "disliked": "noisy"}
{"review_id": "r2", "accommodation_id": "a1", "domain": "beach", "liked": "great pool"}
{"review_id": "r3", "accommodation_id": "a2", "domain": "city", "title": "Ok"}
)";

}  // namespace

TEST_CASE("load_reviews reads fields and defaults absent ones") {
    TempDir dir("reviews");
    write_file(dir.file("r.jsonl"), kGoodCorpus);
    const auto reviews = load_reviews(dir.file("r.jsonl"), true);
    REQUIRE(reviews.size() == 3);
    CHECK(reviews[0].review_id == "r1");
    CHECK(reviews[0].disliked == "noisy");
    CHECK(reviews[1].title == "");
    CHECK(reviews[1].disliked == "");
    CHECK(reviews[2].domain == "city");
}

TEST_CASE("lenient mode skips and reports, strict mode throws") {
    TempDir dir("reviews");
    const std::string corpus = std::string(kGoodCorpus) + "not json\n" +
                               R"({"review_id": "r4", "accommodation_id": 5, "domain": "beach"})" +
                               "\n";
    write_file(dir.file("r.jsonl"), corpus);

    IngestReport report;
    const auto reviews = load_reviews(dir.file("r.jsonl"), false, &report);
    CHECK(reviews.size() == 3);
    CHECK(report.loaded == 3);
    REQUIRE(report.skipped.size() == 2);
    CHECK(report.skipped[0].line_number == 4);
    CHECK(report.skipped[1].line_number == 5);

    CHECK_THROWS_AS(load_reviews(dir.file("r.jsonl"), true), DataError);
}

TEST_CASE("blank lines are not an error") {
    TempDir dir("reviews");
    write_file(dir.file("r.jsonl"), std::string("\n") + kGoodCorpus + "\n\n");
    CHECK(load_reviews(dir.file("r.jsonl"), true).size() == 3);
}

TEST_CASE("duplicate review ids reject the corpus in both modes") {
    TempDir dir("reviews");
    write_file(dir.file("r.jsonl"),
               R"({"review_id": "r1", "accommodation_id": "a1", "domain": "beach"}
{"review_id": "r1", "accommodation_id": "a2", "domain": "beach"}
)");
    CHECK_THROWS_AS(load_reviews(dir.file("r.jsonl"), true), DataError);
    CHECK_THROWS_AS(load_reviews(dir.file("r.jsonl"), false), DataError);
}

TEST_CASE("missing file is an error") {
    TempDir dir("reviews");
    CHECK_THROWS_AS(load_reviews(dir.file("absent.jsonl"), false), DataError);
}

TEST_CASE("grouping filters by domain and keeps insertion order") {
    TempDir dir("reviews");
    write_file(dir.file("r.jsonl"), kGoodCorpus);
    const auto reviews = load_reviews(dir.file("r.jsonl"), true);

    const auto groups = group_by_accommodation(reviews, "beach");
    REQUIRE(groups.size() == 1);
    REQUIRE(groups.count("a1") == 1);
    CHECK(groups.at("a1").size() == 2);
    CHECK(groups.at("a1")[0].review_id == "r1");
    CHECK(groups.at("a1")[1].review_id == "r2");

    CHECK_THROWS_AS(group_by_accommodation(reviews, "mountain"), DataError);
}

TEST_CASE("list_domains is sorted and distinct") {
    TempDir dir("reviews");
    write_file(dir.file("r.jsonl"), kGoodCorpus);
    const auto reviews = load_reviews(dir.file("r.jsonl"), true);
    CHECK(list_domains(reviews) == std::vector<std::string>{"beach", "city"});
}
