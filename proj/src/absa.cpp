#include "disco/absa.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "disco/errors.hpp"
#include "disco/prompt_text.hpp"
#include "disco/util.hpp"
#include "json.hpp"

namespace disco {

using OrderedJson = nlohmann::ordered_json;

namespace {

std::string render_aspect_listing(const Taxonomy& taxonomy) {
    std::string out;
    for (const auto& parent : taxonomy.parents()) {
        if (!out.empty()) out += '\n';
        out += parent;
        out += ": ";
        const auto& leaves = taxonomy.leaves_of(parent);
        for (std::size_t i = 0; i < leaves.size(); ++i) {
            if (i > 0) out += ", ";
            out += leaves[i];
        }
    }
    return out;
}

std::string render_review_json(const Review& review) {
    OrderedJson j;
    j["title"] = review.title;
    j["liked"] = review.liked;
    j["disliked"] = review.disliked;
    return j.dump(2);
}

void replace_placeholder(std::string& text, std::string_view placeholder,
                         std::string_view value) {
    auto pos = text.find(placeholder);
    if (pos == std::string::npos)
        throw DataError("prompt template: missing placeholder " + std::string(placeholder));
    text.replace(pos, placeholder.size(), value);
}

// Models love wrapping JSON in ``` fences; strip one layer if present.
std::string_view strip_code_fence(std::string_view text) {
    std::size_t b = 0, e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    std::string_view body = text.substr(b, e - b);
    if (body.size() >= 6 && body.substr(0, 3) == "```" && body.substr(body.size() - 3) == "```") {
        body.remove_suffix(3);
        body.remove_prefix(3);
        // optional language tag on the opening fence
        auto nl = body.find('\n');
        if (nl != std::string_view::npos) {
            std::string_view tag = body.substr(0, nl);
            bool tag_like = !tag.empty() && tag.find_first_of("{}[]\"") == std::string_view::npos;
            if (tag_like) body.remove_prefix(nl + 1);
        }
    }
    return body;
}

}  // namespace

PromptBundle build_extraction_prompt(const Review& review, const Taxonomy& taxonomy) {
    PromptBundle bundle;
    bundle.accommodation_id = review.accommodation_id;
    bundle.variant = PromptVariant::extraction;
    bundle.system = std::string(prompts::kExtractionSystem);
    std::string user(prompts::kExtractionUserTemplate);
    replace_placeholder(user, "{aspects}", render_aspect_listing(taxonomy));
    replace_placeholder(user, "{review}", render_review_json(review));
    bundle.user = std::move(user);
    return bundle;
}

ParseOutcome parse_extraction_response(std::string_view text, const Taxonomy& taxonomy,
                                       std::string_view review_id) {
    std::string_view body = strip_code_fence(text);
    OrderedJson doc = OrderedJson::parse(body, nullptr, false);
    if (doc.is_discarded())
        throw DataError("extraction response for review " + std::string(review_id) +
                        ": not valid JSON");
    if (!doc.is_array())
        throw DataError("extraction response for review " + std::string(review_id) +
                        ": top level is not an array");

    ParseOutcome outcome;
    std::size_t index = 0;
    auto drop = [&](const std::string& why) {
        outcome.warnings.push_back("review " + std::string(review_id) + " element " +
                                   std::to_string(index) + ": " + why);
    };
    for (const auto& el : doc) {
        const std::size_t current = index++;
        (void)current;
        if (!el.is_object()) {
            drop("not an object");
            continue;
        }
        std::string parent, leaf, sentiment_text, snippet;
        auto field = [&](const char* name, std::string& dst) {
            auto it = el.find(name);
            if (it == el.end() || !it->is_string()) return false;
            dst = it->get<std::string>();
            return true;
        };
        if (!field("aspect_parent", parent) || !field("aspect_leaf", leaf) ||
            !field("sentiment", sentiment_text) || !field("snippet", snippet)) {
            drop("missing or non-string field");
            continue;
        }
        auto sentiment = parse_sentiment(sentiment_text);
        if (!sentiment) {
            drop("unknown sentiment \"" + sentiment_text + "\"");
            continue;
        }
        const std::string* expected_parent = taxonomy.parent_of(leaf);
        if (!expected_parent) {
            drop("leaf \"" + leaf + "\" not in taxonomy");
            continue;
        }
        if (*expected_parent != parent) {
            drop("leaf \"" + leaf + "\" belongs to \"" + *expected_parent + "\", not \"" +
                 parent + "\"");
            continue;
        }
        if (trim(snippet).empty()) {
            drop("empty snippet");
            continue;
        }
        AspectMention m;
        m.review_id = std::string(review_id);
        m.aspect_parent = parent;
        m.aspect_leaf = leaf;
        m.sentiment = *sentiment;
        m.snippet = trim(snippet);
        outcome.mentions.push_back(std::move(m));
    }
    return outcome;
}

MentionSet extract_aspects(const std::vector<Review>& reviews, const Taxonomy& taxonomy,
                           GenerationClient& client, MentionCache& cache,
                           const ExtractOptions& options) {
    const std::string taxonomy_fp = FeatureVocabulary(taxonomy).fingerprint();
    const std::string model = client.model_label();

    MentionSet out;
    out.metadata.model = model;

    // Slot-indexed results keep output order equal to input order no matter
    // how the pool schedules the work.
    struct Slot {
        std::vector<AspectMention> mentions;
        std::vector<std::string> warnings;
        bool failed = false;
        bool from_cache = false;
        std::size_t calls = 0;
    };
    std::vector<Slot> slots(reviews.size());

    std::atomic<std::size_t> next{0};
    std::mutex cache_mu;

    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= reviews.size()) return;
            const Review& review = reviews[i];
            Slot& slot = slots[i];

            if (const CacheEntry* hit = cache.find(review.review_id, taxonomy_fp, model)) {
                slot.mentions = hit->mentions;
                slot.failed = hit->failed;
                slot.from_cache = true;
                continue;
            }

            PromptBundle prompt = build_extraction_prompt(review, taxonomy);
            ChatRequest request{prompt.system, prompt.user};
            std::string failure;
            for (int attempt = 1; attempt <= options.retry.max_attempts; ++attempt) {
                if (attempt > 1) retry_backoff(options.retry, attempt - 1);
                try {
                    ++slot.calls;
                    std::string response = client.complete(request);
                    ParseOutcome parsed =
                        parse_extraction_response(response, taxonomy, review.review_id);
                    slot.mentions = std::move(parsed.mentions);
                    slot.warnings = std::move(parsed.warnings);
                    failure.clear();
                    break;
                } catch (const ClientError& e) {
                    failure = e.what();
                } catch (const DataError& e) {
                    failure = e.what();
                }
            }
            slot.failed = !failure.empty();
            if (slot.failed) {
                slot.mentions.clear();
                slot.warnings.push_back("review " + review.review_id +
                                        " failed after retries: " + failure);
            }

            CacheEntry entry;
            entry.review_id = review.review_id;
            entry.taxonomy_fp = taxonomy_fp;
            entry.model = model;
            entry.mentions = slot.mentions;
            entry.failed = slot.failed;
            std::lock_guard<std::mutex> lock(cache_mu);
            cache.put(std::move(entry));
        }
    };

    int pool = std::max(1, options.concurrency);
    pool = static_cast<int>(std::min<std::size_t>(pool, std::max<std::size_t>(reviews.size(), 1)));
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(pool));
    for (int i = 0; i < pool; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    for (std::size_t i = 0; i < reviews.size(); ++i) {
        Slot& slot = slots[i];
        out.source_review_ids.insert(reviews[i].review_id);
        if (slot.from_cache) ++out.metadata.cache_hits;
        out.metadata.client_calls += slot.calls;
        if (slot.failed) out.metadata.failed_review_ids.push_back(reviews[i].review_id);
        for (auto& w : slot.warnings) out.metadata.warnings.push_back(std::move(w));
        for (auto& m : slot.mentions) out.mentions.push_back(std::move(m));
    }
    return out;
}

FixtureLexicon lexicon_from_file(const std::filesystem::path& path, const Taxonomy& taxonomy) {
    std::ifstream in(path);
    if (!in) throw DataError("lexicon: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    OrderedJson doc = OrderedJson::parse(buf.str(), nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        throw DataError("lexicon: " + path.string() + " is not a JSON object");

    FixtureLexicon lex;
    for (const auto& [keyword, rule] : doc.items()) {
        LexiconRule r;
        if (rule.is_string()) {
            r.leaf = rule.get<std::string>();
        } else if (rule.is_object()) {
            r.leaf = rule.value("leaf", "");
            if (rule.contains("sentiment")) {
                auto s = parse_sentiment(rule["sentiment"].get<std::string>());
                if (!s)
                    throw DataError("lexicon: bad sentiment for keyword \"" + keyword + "\"");
                r.sentiment = *s;
            }
        } else {
            throw DataError("lexicon: rule for \"" + keyword + "\" must be a string or object");
        }
        if (!taxonomy.has_leaf(r.leaf))
            throw DataError("lexicon: keyword \"" + keyword + "\" maps to unknown leaf \"" +
                            r.leaf + "\"");
        lex.emplace(lower_ascii(keyword), std::move(r));
    }
    return lex;
}

MentionSet fixture_extract(const std::vector<Review>& reviews, const FixtureLexicon& lexicon,
                           const Taxonomy& taxonomy) {
    for (const auto& [keyword, rule] : lexicon)
        if (!taxonomy.has_leaf(rule.leaf))
            throw DataError("lexicon: keyword \"" + keyword + "\" maps to unknown leaf \"" +
                            rule.leaf + "\"");

    MentionSet out;
    out.metadata.model = "fixture";
    struct Section {
        const std::string* text;
        Sentiment fallback;
    };
    for (const auto& review : reviews) {
        out.source_review_ids.insert(review.review_id);
        const Section sections[] = {
            {&review.title, Sentiment::neutral},
            {&review.liked, Sentiment::positive},
            {&review.disliked, Sentiment::negative},
        };
        for (const auto& section : sections) {
            for (const auto& sentence : split_sentences(*section.text)) {
                // lexicon is a sorted map, so keyword order is deterministic
                for (const auto& [keyword, rule] : lexicon) {
                    if (!contains_word(sentence, keyword)) continue;
                    AspectMention m;
                    m.review_id = review.review_id;
                    m.aspect_leaf = rule.leaf;
                    m.aspect_parent = *taxonomy.parent_of(rule.leaf);
                    m.sentiment = rule.sentiment.value_or(section.fallback);
                    m.snippet = sentence;
                    out.mentions.push_back(std::move(m));
                }
            }
        }
    }
    return out;
}

AgreementMetrics agreement_metrics(const std::vector<AspectMention>& predicted,
                                   const std::vector<AspectMention>& reference,
                                   const Taxonomy& taxonomy) {
    std::set<std::string> review_ids;
    for (const auto& m : predicted) review_ids.insert(m.review_id);
    for (const auto& m : reference) review_ids.insert(m.review_id);
    if (review_ids.empty()) throw DataError("agreement: empty review set");

    using Pair = std::pair<std::string, std::string>;  // (review_id, leaf)
    auto presence = [&](const std::vector<AspectMention>& mentions) {
        std::set<Pair> present;
        for (const auto& m : mentions) {
            if (!taxonomy.has_leaf(m.aspect_leaf))
                throw DataError("agreement: leaf \"" + m.aspect_leaf + "\" not in taxonomy");
            present.emplace(m.review_id, m.aspect_leaf);
        }
        return present;
    };
    const std::set<Pair> pred = presence(predicted);
    const std::set<Pair> gold = presence(reference);

    double tp = 0, fp = 0, fn = 0;
    for (const auto& p : pred) (gold.count(p) ? tp : fp) += 1;
    for (const auto& g : gold)
        if (!pred.count(g)) fn += 1;

    AgreementMetrics out;
    out.micro_f1 = (2 * tp + fp + fn) == 0 ? 0.0 : 2 * tp / (2 * tp + fp + fn);

    // Kappa over the full (review, leaf) grid: every cell is a binary
    // present/absent decision by each annotator.
    const double total =
        static_cast<double>(review_ids.size()) * static_cast<double>(taxonomy.leaf_count());
    const double tn = total - tp - fp - fn;
    const double po = (tp + tn) / total;
    const double pred_yes = (tp + fp) / total;
    const double gold_yes = (tp + fn) / total;
    const double pe = pred_yes * gold_yes + (1 - pred_yes) * (1 - gold_yes);
    out.kappa = (1 - pe) == 0 ? 1.0 : (po - pe) / (1 - pe);

    // Majority sentiment per agreed (review, leaf) pair on each side.
    auto majority = [&](const std::vector<AspectMention>& mentions) {
        std::map<Pair, std::array<int, 3>> votes;
        for (const auto& m : mentions)
            ++votes[{m.review_id, m.aspect_leaf}][static_cast<std::size_t>(m.sentiment)];
        std::map<Pair, Sentiment> labels;
        for (const auto& [key, v] : votes) {
            std::size_t best = 0;
            for (std::size_t s = 1; s < 3; ++s)
                if (v[s] > v[best]) best = s;  // ties keep the lower index
            labels[key] = static_cast<Sentiment>(best);
        }
        return labels;
    };
    const auto pred_labels = majority(predicted);
    const auto gold_labels = majority(reference);
    double agreed = 0, matched = 0;
    for (const auto& p : pred) {
        if (!gold.count(p)) continue;
        agreed += 1;
        if (pred_labels.at(p) == gold_labels.at(p)) matched += 1;
    }
    out.sentiment_accuracy = agreed == 0 ? 1.0 : matched / agreed;
    return out;
}

}  // namespace disco
