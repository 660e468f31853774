#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace disco {

enum class Sentiment : std::uint8_t { positive = 0, negative = 1, neutral = 2 };

std::string_view to_string(Sentiment s);
std::optional<Sentiment> parse_sentiment(std::string_view s);

// A sentiment-qualified topic leaf. Ordering is lexicographic by leaf, then
// positive < negative < neutral; every deterministic tie-break in the pipeline
// leans on this.
struct FeatureKey {
    std::string leaf;
    Sentiment sentiment = Sentiment::positive;

    // "breakfast_quality_positive" style label for charts and logs.
    std::string label() const;

    friend bool operator==(const FeatureKey&, const FeatureKey&) = default;
    friend bool operator<(const FeatureKey& a, const FeatureKey& b) {
        if (a.leaf != b.leaf) return a.leaf < b.leaf;
        return a.sentiment < b.sentiment;
    }
};

// Two-level aspect hierarchy: parent categories, each with leaf aspects.
// Parents keep document order from the JSON; leaf names are globally unique.
class Taxonomy {
public:
    static Taxonomy from_json_text(std::string_view text);
    static Taxonomy from_file(const std::filesystem::path& path);
    // The built-in accommodation taxonomy (21 parents, 138 leaves).
    static const Taxonomy& default_taxonomy();

    const std::vector<std::string>& parents() const { return parents_; }
    const std::vector<std::string>& leaves_of(std::string_view parent) const;
    // nullptr when the leaf is unknown.
    const std::string* parent_of(std::string_view leaf) const;
    bool has_leaf(std::string_view leaf) const { return parent_of(leaf) != nullptr; }
    std::size_t leaf_count() const { return leaf_to_parent_.size(); }

    std::string to_json_text() const;

private:
    std::vector<std::string> parents_;
    std::map<std::string, std::vector<std::string>, std::less<>> leaves_by_parent_;
    std::map<std::string, std::string, std::less<>> leaf_to_parent_;
};

// Flat feature space: every (leaf, sentiment) pair in canonical order. All
// distributions and divergence profiles index into this.
class FeatureVocabulary {
public:
    explicit FeatureVocabulary(const Taxonomy& taxonomy);

    std::size_t size() const { return keys_.size(); }
    const FeatureKey& key(std::size_t i) const { return keys_[i]; }
    const std::vector<FeatureKey>& keys() const { return keys_; }
    std::optional<std::size_t> index_of(std::string_view leaf, Sentiment s) const;

    // Hash of the ordered key list; stamped into mention caches so stale
    // extractions are detected when the taxonomy changes.
    const std::string& fingerprint() const { return fingerprint_; }

private:
    std::vector<FeatureKey> keys_;
    std::map<std::string, std::size_t, std::less<>> leaf_base_;
    std::string fingerprint_;
};

using VocabPtr = std::shared_ptr<const FeatureVocabulary>;

std::vector<FeatureKey> feature_vocabulary(const Taxonomy& taxonomy);

}  // namespace disco
