#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace disco {

// One guest review. liked/disliked may legitimately be empty; absent fields
// in the source JSON load as "".
struct Review {
    std::string review_id;
    std::string accommodation_id;
    std::string domain;
    std::string title;
    std::string liked;
    std::string disliked;
};

struct IngestReport {
    struct SkippedLine {
        std::size_t line_number = 0;  // 1-based
        std::string reason;
    };
    std::vector<SkippedLine> skipped;
    std::size_t loaded = 0;
};

// Reads a JSONL corpus. strict=true throws on the first malformed line;
// otherwise bad lines are skipped and reported. A duplicate review_id is a
// corpus-level inconsistency and rejects the file in both modes.
std::vector<Review> load_reviews(const std::filesystem::path& path, bool strict,
                                 IngestReport* report = nullptr);

// Reviews of one domain, keyed by accommodation, insertion order preserved
// inside each group. Unknown domain (no reviews match) is an error.
std::map<std::string, std::vector<Review>> group_by_accommodation(
    const std::vector<Review>& reviews, std::string_view domain);

// Distinct domains present in the corpus, sorted.
std::vector<std::string> list_domains(const std::vector<Review>& reviews);

}  // namespace disco
