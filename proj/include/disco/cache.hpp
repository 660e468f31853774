#pragma once

#include <filesystem>
#include <map>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "disco/mentions.hpp"

namespace disco {

// One cached extraction result. Failures are cached too, so a warm rerun does
// not hammer the endpoint with reviews that already exhausted their retries.
struct CacheEntry {
    std::string review_id;
    std::string taxonomy_fp;
    std::string model;
    std::vector<AspectMention> mentions;
    bool failed = false;
};

// JSONL-backed store keyed by (review_id, taxonomy fingerprint, model).
// Reads may run concurrently; writes take an exclusive lock.
class MentionCache {
public:
    MentionCache() = default;
    // Movable so load() can hand one back; the mutex itself is not moved.
    MentionCache(MentionCache&& other);
    MentionCache& operator=(MentionCache&& other);
    MentionCache(const MentionCache&) = delete;
    MentionCache& operator=(const MentionCache&) = delete;

    // Absent file loads as an empty cache; a malformed file is an error.
    static MentionCache load(const std::filesystem::path& path);
    // One JSON object per line, sorted by review_id for reproducible bytes.
    void save(const std::filesystem::path& path) const;

    // nullptr on miss. The pointer stays valid until the next put().
    const CacheEntry* find(std::string_view review_id, std::string_view taxonomy_fp,
                           std::string_view model) const;
    void put(CacheEntry entry);
    std::size_t size() const;

private:
    static std::string key_of(std::string_view review_id, std::string_view taxonomy_fp,
                              std::string_view model);

    mutable std::shared_mutex mu_;
    std::map<std::string, CacheEntry> entries_;
};

}  // namespace disco
