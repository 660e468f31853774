#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "disco/taxonomy.hpp"

namespace disco {

// One aspect hit inside one review, as produced by extraction.
struct AspectMention {
    std::string review_id;
    std::string aspect_parent;
    std::string aspect_leaf;
    Sentiment sentiment = Sentiment::neutral;
    std::string snippet;  // short verbatim quote from the review

    friend bool operator==(const AspectMention&, const AspectMention&) = default;
};

struct ExtractionMetadata {
    std::string model;
    std::size_t cache_hits = 0;
    std::size_t client_calls = 0;  // physical calls, retries included
    std::vector<std::string> failed_review_ids;
    std::vector<std::string> warnings;
};

// Extraction output for a batch of reviews. Every mention's review_id is a
// member of source_review_ids (which also lists reviews that yielded nothing).
struct MentionSet {
    std::vector<AspectMention> mentions;
    std::set<std::string> source_review_ids;
    ExtractionMetadata metadata;
};

}  // namespace disco
