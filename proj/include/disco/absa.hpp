#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "disco/cache.hpp"
#include "disco/client.hpp"
#include "disco/mentions.hpp"
#include "disco/prompt_bundle.hpp"
#include "disco/review.hpp"
#include "disco/taxonomy.hpp"

namespace disco {

// Extraction request for one review: the canonical system prompt plus the
// user template filled with the aspect listing and the review JSON.
PromptBundle build_extraction_prompt(const Review& review, const Taxonomy& taxonomy);

struct ParseOutcome {
    std::vector<AspectMention> mentions;
    std::vector<std::string> warnings;  // dropped elements, with reasons
};

// Parses model output for one review. The payload must be a JSON array
// (optionally wrapped in markdown code fences); elements that fail validation
// against the taxonomy are dropped with a warning rather than killing the
// batch. Unparseable payloads throw DataError.
ParseOutcome parse_extraction_response(std::string_view text, const Taxonomy& taxonomy,
                                       std::string_view review_id);

struct ExtractOptions {
    int concurrency = 4;
    RetryPolicy retry;
};

// Cache-aware batch extraction. Reviews already in the cache (same taxonomy
// fingerprint and model) are served from it; the rest go to the client on a
// small thread pool. Reviews that still fail after retries land in
// metadata.failed_review_ids with an empty mention list, and the failure is
// cached so warm reruns stay at zero client calls.
MentionSet extract_aspects(const std::vector<Review>& reviews, const Taxonomy& taxonomy,
                           GenerationClient& client, MentionCache& cache,
                           const ExtractOptions& options = {});

// Keyword rule for offline extraction: the leaf it maps to, and optionally a
// fixed sentiment overriding the section default (title -> neutral,
// liked -> positive, disliked -> negative).
struct LexiconRule {
    std::string leaf;
    std::optional<Sentiment> sentiment;
};

// Keyed by lowercase keyword; matching is case-insensitive on word boundaries.
using FixtureLexicon = std::map<std::string, LexiconRule>;

FixtureLexicon lexicon_from_file(const std::filesystem::path& path, const Taxonomy& taxonomy);

// Deterministic keyword extraction used by --mock runs and tests. Snippets
// are whole matched sentences, so they survive the multi-word snippet rule.
MentionSet fixture_extract(const std::vector<Review>& reviews, const FixtureLexicon& lexicon,
                           const Taxonomy& taxonomy);

struct AgreementMetrics {
    double micro_f1 = 0;
    double kappa = 0;
    double sentiment_accuracy = 0;
};

// Agreement between two mention lists over the same review set, scored on
// (review, leaf) presence. kappa uses every (review, leaf) cell as a binary
// decision; sentiment accuracy is scored on pairs both sides marked present,
// each side reduced to its majority sentiment (ties break positive <
// negative < neutral) and defaults to 1.0 when no pair is shared.
AgreementMetrics agreement_metrics(const std::vector<AspectMention>& predicted,
                                   const std::vector<AspectMention>& reference,
                                   const Taxonomy& taxonomy);

}  // namespace disco
