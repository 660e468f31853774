#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace disco {

// 64-bit FNV-1a. Stable across platforms and runs, which is all the cache keys
// and artifact fingerprints need.
constexpr std::uint64_t fnv1a64(std::string_view bytes,
                                std::uint64_t seed = 14695981039346656037ull) {
    std::uint64_t h = seed;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// 16 lowercase hex digits, zero padded.
std::string to_hex(std::uint64_t value);

// Child seed for a labelled piece of work (a topic, an accommodation). Keeps
// sampling independent of processing order and of sibling items.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label);

// mt19937_64 is fully specified by the standard; the bounded draw avoids
// std::uniform_int_distribution, whose mapping is implementation defined.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, n) via rejection sampling; n must be positive.
    std::uint64_t below(std::uint64_t n);

private:
    std::mt19937_64 engine_;
};

// Shortest decimal that round-trips the exact double value.
std::string format_double(double v);

std::string lower_ascii(std::string_view s);
std::string trim(std::string_view s);

// Sentence-ish fragments: split on . ! ? ; and newlines, trimmed, empties dropped.
std::vector<std::string> split_sentences(std::string_view text);

std::size_t count_words(std::string_view text);

// A usable snippet has at least two words once trimmed.
bool is_multiword(std::string_view snippet);

// True if `needle` occurs in `haystack` delimited by non-alphanumerics,
// compared case-insensitively (ASCII).
bool contains_word(std::string_view haystack, std::string_view needle);

// "2026-08-14T12:00:00Z" style UTC stamp.
std::string utc_timestamp();

}  // namespace disco
