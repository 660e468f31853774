#include "disco/expectation.hpp"

#include <numeric>
#include <random>

#include "disco/errors.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace disco;

namespace {

VocabPtr make_vocab(std::size_t leaves) {
    return std::make_shared<FeatureVocabulary>(
        Taxonomy::from_json_text(testsupport::flat_taxonomy_json(leaves)));
}

AspectMention mention(std::string leaf, Sentiment s) {
    AspectMention m;
    m.review_id = "r";
    m.aspect_parent = "Topics";
    m.aspect_leaf = std::move(leaf);
    m.sentiment = s;
    m.snippet = "two words";
    return m;
}

}  // namespace

TEST_CASE("count_features tallies into vocabulary slots") {
    auto vocab = make_vocab(3);
    std::vector<AspectMention> mentions = {
        mention("t000", Sentiment::positive),
        mention("t000", Sentiment::positive),
        mention("t001", Sentiment::negative),
        mention("t002", Sentiment::neutral),
    };
    const auto counts = count_features(mentions, *vocab);
    REQUIRE(counts.size() == 9);
    CHECK(counts[*vocab->index_of("t000", Sentiment::positive)] == 2);
    CHECK(counts[*vocab->index_of("t001", Sentiment::negative)] == 1);
    CHECK(counts[*vocab->index_of("t002", Sentiment::neutral)] == 1);
    CHECK(std::accumulate(counts.begin(), counts.end(), 0ull) == 4);

    mentions.push_back(mention("t999", Sentiment::positive));
    CHECK_THROWS_AS(count_features(mentions, *vocab), DataError);
}

TEST_CASE("distribution_from_counts normalizes and keeps support") {
    auto vocab = make_vocab(2);
    std::vector<std::uint64_t> counts(6, 0);
    counts[0] = 3;
    counts[4] = 1;
    const auto dist = distribution_from_counts(counts, vocab);
    CHECK(dist.support_count == 4);
    CHECK(dist.probabilities[0] == doctest::Approx(0.75));
    CHECK(dist.probabilities[4] == doctest::Approx(0.25));
    const double total =
        std::accumulate(dist.probabilities.begin(), dist.probabilities.end(), 0.0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(distribution_from_counts(std::vector<std::uint64_t>(6, 0), vocab), DataError);
}

TEST_CASE("smoothed_distribution gives full support for positive epsilon") {
    auto vocab = make_vocab(2);
    std::vector<std::uint64_t> counts(6, 0);
    counts[1] = 10;
    const double eps = 1e-9;
    const auto dist = smoothed_distribution(counts, vocab, eps);
    for (double p : dist.probabilities) CHECK(p > 0.0);
    CHECK(dist.probabilities[1] == doctest::Approx((10 + eps) / (10 + 6 * eps)));
    CHECK(dist.probabilities[0] == doctest::Approx(eps / (10 + 6 * eps)));
    const double total =
        std::accumulate(dist.probabilities.begin(), dist.probabilities.end(), 0.0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    // epsilon 0 degrades to the plain frequencies
    const auto plain = smoothed_distribution(counts, vocab, 0.0);
    CHECK(plain.probabilities[1] == 1.0);
    CHECK(plain.probabilities[0] == 0.0);
    CHECK_THROWS_AS(smoothed_distribution(counts, vocab, -1e-9), DataError);
}

TEST_CASE("domain reference pools counts across accommodations") {
    auto vocab = make_vocab(2);
    MentionSet set;
    set.mentions = {
        mention("t000", Sentiment::positive),
        mention("t000", Sentiment::positive),
        mention("t001", Sentiment::negative),
    };
    const auto ref = domain_reference(set, vocab, kDefaultEpsilon, "beach", 2);
    CHECK(ref.domain == "beach");
    CHECK(ref.accommodation_count == 2);
    CHECK(ref.counts[*vocab->index_of("t000", Sentiment::positive)] == 2);
    CHECK(ref.distribution.support_count == 3);
    CHECK(ref.epsilon == kDefaultEpsilon);
}

TEST_CASE("leave-one-out subtracts own counts and validates them") {
    auto vocab = make_vocab(1);
    std::vector<std::uint64_t> pooled = {6, 3, 1};
    const auto ref = reference_from_counts(pooled, vocab, 0.0, "beach", 3);

    std::vector<std::uint64_t> own = {2, 1, 0};
    const auto loo = leave_one_out_reference(ref, own);
    CHECK(loo.counts == std::vector<std::uint64_t>{4, 2, 1});
    CHECK(loo.distribution.probabilities[0] == doctest::Approx(4.0 / 7.0));
    CHECK(loo.accommodation_count == 2);

    std::vector<std::uint64_t> too_many = {7, 0, 0};
    CHECK_THROWS_AS(leave_one_out_reference(ref, too_many), DataError);
}

TEST_CASE("reference save/load round-trips bytes and order") {
    testsupport::TempDir dir("reference");
    auto vocab = make_vocab(4);
    std::vector<std::uint64_t> counts(12, 0);
    counts[2] = 5;
    counts[7] = 2;
    const auto ref = reference_from_counts(counts, vocab, 1e-9, "beach", 3);
    save_reference(ref, dir.file("reference.json"));

    const auto loaded = load_reference(dir.file("reference.json"), vocab);
    CHECK(loaded.domain == ref.domain);
    CHECK(loaded.epsilon == ref.epsilon);
    CHECK(loaded.accommodation_count == ref.accommodation_count);
    CHECK(loaded.counts == ref.counts);
    CHECK(loaded.distribution.probabilities == ref.distribution.probabilities);
    CHECK(loaded.distribution.support_count == ref.distribution.support_count);

    // wrong vocabulary is rejected
    auto other = make_vocab(5);
    CHECK_THROWS_AS(load_reference(dir.file("reference.json"), other), DataError);
}

TEST_CASE("OpenMP batch normalization matches the serial reference bitwise") {
    auto vocab = make_vocab(20);
    std::mt19937_64 rng(99);
    std::vector<std::vector<std::uint64_t>> counts(64, std::vector<std::uint64_t>(60, 0));
    for (auto& row : counts) {
        row[rng() % row.size()] = 1 + rng() % 9;  // ensure nonzero total
        for (std::size_t j = 0; j < row.size(); ++j)
            if (rng() % 4 == 0) row[j] = rng() % 50;
    }

    const auto parallel = batch_distributions(counts, vocab);
    const auto serial = batch_distributions_serial(counts, vocab);
    REQUIRE(parallel.size() == serial.size());
    for (std::size_t i = 0; i < parallel.size(); ++i) {
        CHECK(parallel[i].support_count == serial[i].support_count);
        REQUIRE(parallel[i].probabilities.size() == serial[i].probabilities.size());
        for (std::size_t j = 0; j < parallel[i].probabilities.size(); ++j)
            CHECK(parallel[i].probabilities[j] == serial[i].probabilities[j]);
    }
}

TEST_CASE("batch errors surface from worker threads") {
    auto vocab = make_vocab(2);
    std::vector<std::vector<std::uint64_t>> counts(8, std::vector<std::uint64_t>(6, 1));
    counts[5] = std::vector<std::uint64_t>(6, 0);  // zero total in the middle
    CHECK_THROWS_AS(batch_distributions(counts, vocab), DataError);
    CHECK_THROWS_AS(batch_distributions_serial(counts, vocab), DataError);
}

TEST_CASE("pooled unsmoothed reference is the count-weighted mixture") {
    std::mt19937_64 rng(2024);
    for (int corpus = 0; corpus < 10; ++corpus) {
        const std::size_t leaves = 1 + rng() % 12;
        auto vocab = make_vocab(leaves);
        const std::size_t n = vocab->size();
        const std::size_t accommodations = 2 + rng() % 8;

        std::vector<std::vector<std::uint64_t>> counts(accommodations,
                                                       std::vector<std::uint64_t>(n, 0));
        std::vector<std::uint64_t> pooled(n, 0);
        for (auto& row : counts) {
            row[rng() % n] += 1;
            for (std::size_t j = 0; j < n; ++j)
                if (rng() % 3 == 0) row[j] += rng() % 20;
            for (std::size_t j = 0; j < n; ++j) pooled[j] += row[j];
        }

        const auto ref = reference_from_counts(pooled, vocab, 0.0, "synthetic", accommodations);
        const double total = static_cast<double>(ref.distribution.support_count);

        std::vector<double> mixture(n, 0.0);
        for (const auto& row : counts) {
            const auto dist = distribution_from_counts(row, vocab);
            const double weight = static_cast<double>(dist.support_count) / total;
            for (std::size_t j = 0; j < n; ++j) mixture[j] += weight * dist.probabilities[j];
        }

        for (std::size_t j = 0; j < n; ++j)
            CHECK(std::abs(mixture[j] - ref.distribution.probabilities[j]) < 1e-12);
    }
}
