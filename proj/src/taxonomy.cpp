#include "disco/taxonomy.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "disco/errors.hpp"
#include "disco/taxonomy_data.hpp"
#include "disco/util.hpp"
#include "json.hpp"

namespace disco {

using OrderedJson = nlohmann::ordered_json;

std::string_view to_string(Sentiment s) {
    switch (s) {
        case Sentiment::positive: return "positive";
        case Sentiment::negative: return "negative";
        case Sentiment::neutral: return "neutral";
    }
    return "neutral";
}

std::optional<Sentiment> parse_sentiment(std::string_view s) {
    if (s == "positive") return Sentiment::positive;
    if (s == "negative") return Sentiment::negative;
    if (s == "neutral") return Sentiment::neutral;
    return std::nullopt;
}

std::string FeatureKey::label() const {
    std::string out = leaf;
    out += '_';
    out += to_string(sentiment);
    return out;
}

Taxonomy Taxonomy::from_json_text(std::string_view text) {
    OrderedJson doc = OrderedJson::parse(text, nullptr, false);
    if (doc.is_discarded()) throw DataError("taxonomy: invalid JSON");
    if (!doc.is_object() || !doc.contains("parents") || !doc["parents"].is_object())
        throw DataError("taxonomy: expected an object with a \"parents\" map");

    Taxonomy t;
    for (const auto& [parent, leaves] : doc["parents"].items()) {
        if (!leaves.is_array())
            throw DataError("taxonomy: leaves of \"" + parent + "\" must be an array");
        if (t.leaves_by_parent_.count(parent))
            throw DataError("taxonomy: duplicate parent \"" + parent + "\"");
        std::vector<std::string> leaf_list;
        for (const auto& leaf : leaves) {
            if (!leaf.is_string())
                throw DataError("taxonomy: non-string leaf under \"" + parent + "\"");
            std::string name = leaf.get<std::string>();
            if (name.empty()) throw DataError("taxonomy: empty leaf name under \"" + parent + "\"");
            auto [it, inserted] = t.leaf_to_parent_.emplace(name, parent);
            if (!inserted)
                throw DataError("taxonomy: leaf \"" + name + "\" appears under both \"" +
                                it->second + "\" and \"" + parent + "\"");
            leaf_list.push_back(std::move(name));
        }
        if (leaf_list.empty()) throw DataError("taxonomy: parent \"" + parent + "\" has no leaves");
        t.parents_.push_back(parent);
        t.leaves_by_parent_.emplace(parent, std::move(leaf_list));
    }
    if (t.parents_.empty()) throw DataError("taxonomy: no parents defined");
    return t;
}

Taxonomy Taxonomy::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("taxonomy: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

const Taxonomy& Taxonomy::default_taxonomy() {
    static const Taxonomy t = from_json_text(kDefaultTaxonomyJson);
    return t;
}

const std::vector<std::string>& Taxonomy::leaves_of(std::string_view parent) const {
    auto it = leaves_by_parent_.find(parent);
    if (it == leaves_by_parent_.end())
        throw DataError("taxonomy: unknown parent \"" + std::string(parent) + "\"");
    return it->second;
}

const std::string* Taxonomy::parent_of(std::string_view leaf) const {
    auto it = leaf_to_parent_.find(leaf);
    return it == leaf_to_parent_.end() ? nullptr : &it->second;
}

std::string Taxonomy::to_json_text() const {
    OrderedJson parents = OrderedJson::object();
    for (const auto& p : parents_) parents[p] = leaves_by_parent_.at(p);
    OrderedJson doc;
    doc["parents"] = std::move(parents);
    return doc.dump(2) + "\n";
}

std::vector<FeatureKey> feature_vocabulary(const Taxonomy& taxonomy) {
    std::vector<std::string> leaves;
    leaves.reserve(taxonomy.leaf_count());
    for (const auto& parent : taxonomy.parents())
        for (const auto& leaf : taxonomy.leaves_of(parent)) leaves.push_back(leaf);
    std::sort(leaves.begin(), leaves.end());

    std::vector<FeatureKey> keys;
    keys.reserve(leaves.size() * 3);
    for (auto& leaf : leaves)
        for (Sentiment s : {Sentiment::positive, Sentiment::negative, Sentiment::neutral})
            keys.push_back(FeatureKey{leaf, s});
    return keys;
}

FeatureVocabulary::FeatureVocabulary(const Taxonomy& taxonomy)
    : keys_(feature_vocabulary(taxonomy)) {
    std::uint64_t h = fnv1a64("feature-vocabulary-v1");
    for (std::size_t i = 0; i < keys_.size(); ++i) {
        if (i % 3 == 0) leaf_base_.emplace(keys_[i].leaf, i);
        h = fnv1a64(keys_[i].leaf, h);
        h = fnv1a64(to_string(keys_[i].sentiment), h);
        h = fnv1a64("|", h);
    }
    fingerprint_ = to_hex(h);
}

std::optional<std::size_t> FeatureVocabulary::index_of(std::string_view leaf, Sentiment s) const {
    auto it = leaf_base_.find(leaf);
    if (it == leaf_base_.end()) return std::nullopt;
    return it->second + static_cast<std::size_t>(s);
}

}  // namespace disco
