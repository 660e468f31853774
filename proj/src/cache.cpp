#include "disco/cache.hpp"

#include <fstream>
#include <mutex>

#include "disco/errors.hpp"
#include "json.hpp"

namespace disco {

using OrderedJson = nlohmann::ordered_json;

namespace {

OrderedJson mention_to_json(const AspectMention& m) {
    OrderedJson j;
    j["aspect_parent"] = m.aspect_parent;
    j["aspect_leaf"] = m.aspect_leaf;
    j["sentiment"] = to_string(m.sentiment);
    j["snippet"] = m.snippet;
    return j;
}

AspectMention mention_from_json(const OrderedJson& j, const std::string& review_id) {
    AspectMention m;
    m.review_id = review_id;
    m.aspect_parent = j.at("aspect_parent").get<std::string>();
    m.aspect_leaf = j.at("aspect_leaf").get<std::string>();
    auto s = parse_sentiment(j.at("sentiment").get<std::string>());
    if (!s) throw DataError("mention cache: bad sentiment for review " + review_id);
    m.sentiment = *s;
    m.snippet = j.at("snippet").get<std::string>();
    return m;
}

}  // namespace

MentionCache::MentionCache(MentionCache&& other) {
    std::unique_lock lock(other.mu_);
    entries_ = std::move(other.entries_);
}

MentionCache& MentionCache::operator=(MentionCache&& other) {
    if (this != &other) {
        std::scoped_lock lock(mu_, other.mu_);
        entries_ = std::move(other.entries_);
    }
    return *this;
}

std::string MentionCache::key_of(std::string_view review_id, std::string_view taxonomy_fp,
                                 std::string_view model) {
    std::string key;
    key.reserve(review_id.size() + taxonomy_fp.size() + model.size() + 2);
    key.append(review_id);
    key.push_back('\x1f');
    key.append(taxonomy_fp);
    key.push_back('\x1f');
    key.append(model);
    return key;
}

MentionCache MentionCache::load(const std::filesystem::path& path) {
    MentionCache cache;
    std::ifstream in(path);
    if (!in) return cache;  // cold cache

    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        OrderedJson doc = OrderedJson::parse(line, nullptr, false);
        if (doc.is_discarded() || !doc.is_object())
            throw DataError("mention cache: " + path.string() + " line " +
                            std::to_string(line_number) + ": invalid JSON");
        try {
            CacheEntry e;
            e.review_id = doc.at("review_id").get<std::string>();
            e.taxonomy_fp = doc.at("taxonomy_fp").get<std::string>();
            e.model = doc.at("model").get<std::string>();
            e.failed = doc.at("failed").get<bool>();
            for (const auto& m : doc.at("mentions"))
                e.mentions.push_back(mention_from_json(m, e.review_id));
            cache.put(std::move(e));
        } catch (const OrderedJson::exception& ex) {
            throw DataError("mention cache: " + path.string() + " line " +
                            std::to_string(line_number) + ": " + ex.what());
        }
    }
    return cache;
}

void MentionCache::save(const std::filesystem::path& path) const {
    std::shared_lock lock(mu_);
    std::ofstream out(path);
    if (!out) throw DataError("mention cache: cannot write " + path.string());
    // std::map iteration is already sorted by key, and keys start with the
    // review_id, so the file comes out ordered.
    for (const auto& [key, e] : entries_) {
        OrderedJson doc;
        doc["review_id"] = e.review_id;
        doc["taxonomy_fp"] = e.taxonomy_fp;
        doc["model"] = e.model;
        OrderedJson mentions = OrderedJson::array();
        for (const auto& m : e.mentions) mentions.push_back(mention_to_json(m));
        doc["mentions"] = std::move(mentions);
        doc["failed"] = e.failed;
        out << doc.dump() << "\n";
    }
}

const CacheEntry* MentionCache::find(std::string_view review_id, std::string_view taxonomy_fp,
                                     std::string_view model) const {
    std::shared_lock lock(mu_);
    auto it = entries_.find(key_of(review_id, taxonomy_fp, model));
    return it == entries_.end() ? nullptr : &it->second;
}

void MentionCache::put(CacheEntry entry) {
    std::unique_lock lock(mu_);
    std::string key = key_of(entry.review_id, entry.taxonomy_fp, entry.model);
    entries_.insert_or_assign(std::move(key), std::move(entry));
}

std::size_t MentionCache::size() const {
    std::shared_lock lock(mu_);
    return entries_.size();
}

}  // namespace disco
