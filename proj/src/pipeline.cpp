#include "disco/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include "disco/absa.hpp"
#include "disco/cache.hpp"
#include "disco/errors.hpp"
#include "disco/generation.hpp"
#include "disco/lvs.hpp"
#include "disco/prompting.hpp"
#include "disco/ratings.hpp"
#include "disco/util.hpp"

namespace disco {

using OrderedJson = nlohmann::ordered_json;

namespace {

// -------- small shared helpers --------

std::filesystem::path resolve_against(const std::filesystem::path& base,
                                      const std::string& value) {
    std::filesystem::path p(value);
    if (p.is_absolute()) return p;
    return base / p;
}

Taxonomy load_taxonomy_for(const RunConfig& config) {
    if (config.taxonomy_path.empty()) return Taxonomy::default_taxonomy();
    return Taxonomy::from_file(config.taxonomy_path);
}

std::string effective_domain(const RunConfig& config, const std::vector<Review>& reviews) {
    if (!config.domain.empty()) return config.domain;
    auto domains = list_domains(reviews);
    if (domains.size() == 1) return domains[0];
    std::string listing;
    for (const auto& d : domains) listing += (listing.empty() ? "" : ", ") + d;
    throw ConfigError("corpus spans several domains (" + listing + "); pass --domain");
}

std::string extraction_model(const RunConfig& config) {
    return config.mock ? "fixture" : config.model;
}

struct Corpus {
    Taxonomy taxonomy;
    VocabPtr vocabulary;
    std::vector<Review> reviews;            // selected domain only
    std::string domain;
    std::map<std::string, std::vector<Review>> groups;
    IngestReport ingest;
};

Corpus load_corpus(const RunConfig& config) {
    Corpus c;
    c.taxonomy = load_taxonomy_for(config);
    c.vocabulary = std::make_shared<FeatureVocabulary>(c.taxonomy);
    auto all = load_reviews(config.reviews_path, config.strict, &c.ingest);
    if (all.empty()) throw DataError("reviews: no usable reviews in " +
                                     config.reviews_path.string());
    c.domain = effective_domain(config, all);
    c.groups = group_by_accommodation(all, c.domain);
    for (const auto& [id, group] : c.groups)
        c.reviews.insert(c.reviews.end(), group.begin(), group.end());
    return c;
}

std::filesystem::path mentions_path(const RunConfig& c) { return c.out_dir / "mentions.jsonl"; }
std::filesystem::path reference_path(const RunConfig& c) { return c.out_dir / "reference.json"; }
std::filesystem::path summaries_path(const RunConfig& c) { return c.out_dir / "summaries.jsonl"; }

// Mentions for the run, keyed by review id, pulled out of the cache file a
// previous extract stage wrote. Strict about gaps: analysis must never run on
// a partially extracted corpus without the operator noticing.
std::map<std::string, std::vector<AspectMention>> mentions_by_review(
    const RunConfig& config, const Corpus& corpus) {
    auto path = mentions_path(config);
    if (!std::filesystem::exists(path))
        throw DataError("no mention cache at " + path.string() + "; run extract first");
    MentionCache cache = MentionCache::load(path);
    const std::string fp = corpus.vocabulary->fingerprint();
    const std::string model = extraction_model(config);

    std::map<std::string, std::vector<AspectMention>> by_review;
    for (const auto& review : corpus.reviews) {
        const CacheEntry* entry = cache.find(review.review_id, fp, model);
        if (!entry)
            throw DataError("mention cache has no entry for review " + review.review_id +
                            " (model " + model + "); re-run extract");
        by_review[review.review_id] = entry->mentions;
    }
    return by_review;
}

struct AccommodationData {
    std::string id;
    std::vector<AspectMention> mentions;
    std::vector<std::uint64_t> counts;
};

// Per-accommodation mentions and counts, zero-mention ones split out.
std::pair<std::vector<AccommodationData>, std::vector<std::string>> collect_accommodations(
    const Corpus& corpus, const std::map<std::string, std::vector<AspectMention>>& by_review) {
    std::vector<AccommodationData> active;
    std::vector<std::string> silent;
    for (const auto& [id, reviews] : corpus.groups) {
        AccommodationData acc;
        acc.id = id;
        for (const auto& review : reviews) {
            const auto& ms = by_review.at(review.review_id);
            acc.mentions.insert(acc.mentions.end(), ms.begin(), ms.end());
        }
        if (acc.mentions.empty()) {
            silent.push_back(id);
            continue;
        }
        acc.counts = count_features(acc.mentions, *corpus.vocabulary);
        active.push_back(std::move(acc));
    }
    return {std::move(active), std::move(silent)};
}

void write_manifest(const RunConfig& config, const Corpus& corpus, std::string_view stage) {
    OrderedJson snapshot;
    snapshot["reviews"] = config.reviews_path.string();
    snapshot["taxonomy"] = config.taxonomy_path.empty() ? std::string("<built-in>")
                                                        : config.taxonomy_path.string();
    snapshot["lexicon"] = config.lexicon_path.string();
    snapshot["domain"] = corpus.domain;
    snapshot["epsilon"] = config.epsilon;
    snapshot["k"] = config.k;
    snapshot["seed"] = config.seed;
    snapshot["model"] = extraction_model(config);
    snapshot["base_url"] = config.base_url;
    snapshot["mock"] = config.mock;
    snapshot["leave_one_out"] = config.leave_one_out;
    snapshot["strict"] = config.strict;

    OrderedJson doc;
    doc["stage"] = std::string(stage);
    doc["config"] = std::move(snapshot);
    doc["taxonomy_fingerprint"] = corpus.vocabulary->fingerprint();
    doc["vocabulary_size"] = corpus.vocabulary->size();
    doc["created_at"] = utc_timestamp();

    std::ofstream out(config.out_dir / "manifest.json");
    if (!out) throw DataError("manifest: cannot write under " + config.out_dir.string());
    out << doc.dump(2) << "\n";
}

void ensure_out_dir(const RunConfig& config) {
    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + config.out_dir.string());
}

}  // namespace

std::string sanitize_id(std::string_view id) {
    std::string out;
    out.reserve(id.size());
    for (char c : id) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                  c == '-' || c == '_' || c == '.';
        out.push_back(ok ? c : '_');
    }
    return out.empty() ? "unnamed" : out;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    OrderedJson doc = OrderedJson::parse(buf.str(), nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        throw ConfigError("config: " + path.string() + " is not a JSON object");

    const std::filesystem::path base = path.parent_path();
    RunConfig config;
    for (const auto& [key, value] : doc.items()) {
        try {
            if (key == "taxonomy")
                config.taxonomy_path = resolve_against(base, value.get<std::string>());
            else if (key == "reviews")
                config.reviews_path = resolve_against(base, value.get<std::string>());
            else if (key == "lexicon")
                config.lexicon_path = resolve_against(base, value.get<std::string>());
            else if (key == "ratings")
                config.ratings_path = resolve_against(base, value.get<std::string>());
            else if (key == "out")
                config.out_dir = resolve_against(base, value.get<std::string>());
            else if (key == "domain")
                config.domain = value.get<std::string>();
            else if (key == "epsilon")
                config.epsilon = value.get<double>();
            else if (key == "k")
                config.k = value.get<int>();
            else if (key == "seed")
                config.seed = value.get<std::uint64_t>();
            else if (key == "model")
                config.model = value.get<std::string>();
            else if (key == "base_url")
                config.base_url = value.get<std::string>();
            else if (key == "client_options")
                config.client_options = value;
            else if (key == "mock")
                config.mock = value.get<bool>();
            else if (key == "leave_one_out")
                config.leave_one_out = value.get<bool>();
            else if (key == "strict")
                config.strict = value.get<bool>();
            else if (key == "concurrency")
                config.concurrency = value.get<int>();
            else if (key == "regenerate_on_warning")
                config.regenerate_on_warning = value.get<bool>();
            else if (key == "audit")
                config.audit = value.get<bool>();
            else if (key == "api_key" || key == "apikey" || key == "token")
                throw ConfigError("config: API keys do not belong in config files; export " +
                                  std::string(kApiKeyEnvVar) + " instead");
            else
                throw ConfigError("config: unknown key \"" + key + "\"");
        } catch (const OrderedJson::exception& e) {
            throw ConfigError("config: bad value for \"" + key + "\": " + e.what());
        }
    }
    return config;
}

void validate_config(const RunConfig& config) {
    if (config.k < 1) throw ConfigError("k must be at least 1");
    if (!(config.epsilon >= 0)) throw ConfigError("epsilon must be nonnegative");
    if (config.concurrency < 1) throw ConfigError("concurrency must be at least 1");
    if (config.out_dir.empty()) throw ConfigError("output directory must be set");
    if (!config.mock && config.base_url.empty())
        throw ConfigError("live mode needs a base_url (or pass --mock)");
}

void cmd_extract(const RunConfig& config, std::ostream& log) {
    validate_config(config);
    if (config.reviews_path.empty()) throw ConfigError("extract: reviews path must be set");
    ensure_out_dir(config);

    Corpus corpus = load_corpus(config);
    write_manifest(config, corpus, "extract");
    log << "domain " << corpus.domain << ": " << corpus.groups.size() << " accommodations, "
        << corpus.reviews.size() << " reviews";
    if (!corpus.ingest.skipped.empty())
        log << " (" << corpus.ingest.skipped.size() << " lines skipped)";
    log << "\n";

    {
        OrderedJson skips = OrderedJson::array();
        for (const auto& s : corpus.ingest.skipped) {
            OrderedJson row;
            row["line"] = s.line_number;
            row["reason"] = s.reason;
            skips.push_back(std::move(row));
        }
        OrderedJson doc;
        doc["loaded"] = corpus.ingest.loaded;
        doc["skipped"] = std::move(skips);
        std::ofstream out(config.out_dir / "skip_report.json");
        out << doc.dump(2) << "\n";
    }

    MentionCache cache = MentionCache::load(mentions_path(config));
    const std::string fp = corpus.vocabulary->fingerprint();

    std::size_t client_calls = 0, cache_hits = 0, mention_count = 0;
    std::vector<std::string> failed;
    if (config.mock) {
        if (config.lexicon_path.empty())
            throw ConfigError("mock extraction needs a lexicon file");
        FixtureLexicon lexicon = lexicon_from_file(config.lexicon_path, corpus.taxonomy);

        // Route fixture results through the cache so the artifact format and
        // warm-rerun behavior match the live path exactly.
        std::map<std::string, std::vector<AspectMention>> fresh;
        std::vector<const Review*> misses;
        for (const auto& review : corpus.reviews) {
            if (const CacheEntry* hit = cache.find(review.review_id, fp, "fixture")) {
                ++cache_hits;
                mention_count += hit->mentions.size();
            } else {
                misses.push_back(&review);
            }
        }
        if (!misses.empty()) {
            std::vector<Review> pending;
            pending.reserve(misses.size());
            for (const Review* r : misses) pending.push_back(*r);
            MentionSet extracted = fixture_extract(pending, lexicon, corpus.taxonomy);
            for (const auto& m : extracted.mentions) fresh[m.review_id].push_back(m);
            for (const Review* r : misses) {
                CacheEntry entry;
                entry.review_id = r->review_id;
                entry.taxonomy_fp = fp;
                entry.model = "fixture";
                entry.mentions = fresh[r->review_id];
                mention_count += entry.mentions.size();
                cache.put(std::move(entry));
            }
        }
    } else {
        HttpChatClient client(config.base_url, config.model, config.client_options);
        ExtractOptions options;
        options.concurrency = config.concurrency;
        MentionSet extracted =
            extract_aspects(corpus.reviews, corpus.taxonomy, client, cache, options);
        client_calls = extracted.metadata.client_calls;
        cache_hits = extracted.metadata.cache_hits;
        mention_count = extracted.mentions.size();
        failed = extracted.metadata.failed_review_ids;
        for (const auto& w : extracted.metadata.warnings) log << "warning: " << w << "\n";
    }

    cache.save(mentions_path(config));
    log << "mentions: " << mention_count << ", client calls: " << client_calls
        << ", cache hits: " << cache_hits << "\n";
    if (!failed.empty()) {
        log << "failed reviews (" << failed.size() << "):";
        for (const auto& id : failed) log << " " << id;
        log << "\n";
    }
}

void cmd_analyze(const RunConfig& config, std::ostream& log) {
    validate_config(config);
    if (config.reviews_path.empty()) throw ConfigError("analyze: reviews path must be set");
    ensure_out_dir(config);

    Corpus corpus = load_corpus(config);
    write_manifest(config, corpus, "analyze");
    auto by_review = mentions_by_review(config, corpus);
    auto [accommodations, silent] = collect_accommodations(corpus, by_review);
    for (const auto& id : silent)
        log << "accommodation " << id << ": zero mentions, skipped\n";
    if (accommodations.empty()) throw DataError("analyze: every accommodation is empty");

    std::vector<std::uint64_t> pooled(corpus.vocabulary->size(), 0);
    for (const auto& acc : accommodations)
        for (std::size_t i = 0; i < pooled.size(); ++i) pooled[i] += acc.counts[i];
    DomainReference reference = reference_from_counts(
        pooled, corpus.vocabulary, config.epsilon, corpus.domain, accommodations.size());
    save_reference(reference, reference_path(config));

    std::filesystem::create_directories(config.out_dir / "profiles");
    std::filesystem::create_directories(config.out_dir / "charts");

    std::vector<std::string> ids;
    std::vector<std::vector<std::uint64_t>> counts;
    for (const auto& acc : accommodations) {
        ids.push_back(acc.id);
        counts.push_back(acc.counts);
    }
    std::vector<FeatureDistribution> dists = batch_distributions(counts, corpus.vocabulary);

    std::vector<DivergenceProfile> profiles;
    if (config.leave_one_out) {
        profiles.resize(ids.size());
        for (std::size_t i = 0; i < ids.size(); ++i) {
            DomainReference loo = leave_one_out_reference(reference, counts[i]);
            profiles[i] = divergence_profile(ids[i], dists[i], loo);
        }
    } else {
        profiles = batch_profiles(ids, dists, reference);
    }

    for (const auto& profile : profiles) {
        const std::string sid = sanitize_id(profile.accommodation_id);
        save_profile(profile, config.out_dir / "profiles" / (sid + ".json"));
        export_deviation_chart(profile, config.out_dir / "charts" / (sid + ".csv"));
    }
    log << "reference over " << accommodations.size() << " accommodations, "
        << reference.distribution.support_count << " mentions\n";
    log << "profiles written: " << profiles.size() << "\n";
}

namespace {

struct PreparedPrompts {
    std::vector<PromptBundle> bundles;  // baseline and disco per accommodation
};

PreparedPrompts prepare_prompts(const RunConfig& config, const Corpus& corpus,
                                std::ostream& log) {
    auto by_review = mentions_by_review(config, corpus);
    auto [accommodations, silent] = collect_accommodations(corpus, by_review);
    for (const auto& id : silent)
        log << "accommodation " << id << ": zero mentions, no prompts\n";

    DomainReference reference = load_reference(reference_path(config), corpus.vocabulary);

    PreparedPrompts out;
    for (const auto& acc : accommodations) {
        const std::string sid = sanitize_id(acc.id);
        DivergenceProfile profile =
            load_profile(config.out_dir / "profiles" / (sid + ".json"), corpus.vocabulary);
        TopicSelection selection = select_topics(profile, acc.counts, config.k);
        const std::uint64_t acc_seed = derive_seed(config.seed, acc.id);
        std::vector<TopicEntry> entries =
            build_topic_entries(selection, acc.mentions, acc_seed);
        out.bundles.push_back(
            build_disco_prompt(entries, selection, reference, acc.id, acc_seed));
        out.bundles.push_back(build_baseline_prompt(
            restrict_to_most_mentioned(entries, selection), acc.id, acc_seed));
    }
    return out;
}

}  // namespace

void cmd_prompts(const RunConfig& config, std::ostream& log) {
    validate_config(config);
    if (config.reviews_path.empty()) throw ConfigError("prompts: reviews path must be set");
    ensure_out_dir(config);

    Corpus corpus = load_corpus(config);
    write_manifest(config, corpus, "prompts");
    PreparedPrompts prepared = prepare_prompts(config, corpus, log);

    std::filesystem::create_directories(config.out_dir / "prompts");
    for (const auto& bundle : prepared.bundles) {
        const std::string name =
            sanitize_id(bundle.accommodation_id) + "." + std::string(to_string(bundle.variant)) +
            ".json";
        save_prompt_bundle(bundle, config.out_dir / "prompts" / name);
    }
    log << "prompt bundles written: " << prepared.bundles.size() << "\n";
}

void cmd_summarize(const RunConfig& config, std::ostream& log) {
    validate_config(config);
    ensure_out_dir(config);

    const auto prompts_dir = config.out_dir / "prompts";
    if (!std::filesystem::exists(prompts_dir))
        throw DataError("no prompt bundles under " + prompts_dir.string() +
                        "; run prompts first");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(prompts_dir))
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw DataError("prompt directory is empty: " + prompts_dir.string());

    std::vector<PromptBundle> bundles;
    bundles.reserve(files.size());
    for (const auto& f : files) bundles.push_back(load_prompt_bundle(f));

    MockSummaryClient mock_client;
    std::unique_ptr<HttpChatClient> http_client;
    GenerationClient* client = &mock_client;
    if (!config.mock) {
        http_client = std::make_unique<HttpChatClient>(config.base_url, config.model,
                                                       config.client_options);
        client = http_client.get();
    }

    // Bounded concurrency with slot-indexed results, same scheme as extract.
    std::vector<SummaryRecord> records(bundles.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= bundles.size()) return;
            try {
                records[i] = generate_summary(bundles[i], *client);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    int pool = std::max(1, std::min<int>(config.concurrency,
                                         static_cast<int>(bundles.size())));
    std::vector<std::thread> threads;
    for (int i = 0; i < pool; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);

    std::size_t flagged = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        SummaryValidation v = validate_summary(records[i]);
        if (v.clean()) continue;
        ++flagged;
        for (const auto& note : v.notes)
            log << records[i].accommodation_id << " (" << to_string(records[i].variant)
                << "): " << note << "\n";
        if (config.regenerate_on_warning) {
            records[i] = generate_summary(bundles[i], *client);
            log << records[i].accommodation_id << ": regenerated once\n";
        }
    }

    std::ofstream out(summaries_path(config));
    if (!out) throw DataError("summaries: cannot write " + summaries_path(config).string());
    for (const auto& record : records) append_summary_jsonl(record, out);
    log << "summaries written: " << records.size() << " (" << flagged << " flagged)\n";

    if (config.audit) {
        std::ofstream audit(config.out_dir / "audit.md");
        audit << "# Prompt and summary audit\n\n";
        for (std::size_t i = 0; i < records.size(); ++i) {
            audit << "## " << records[i].accommodation_id << " ("
                  << to_string(records[i].variant) << ")\n\n";
            audit << "### Prompt\n\n````\n" << bundles[i].user << "\n````\n\n";
            audit << "### Summary\n\n" << records[i].text << "\n\n";
        }
    }
}

void cmd_report(const RunConfig& config, std::ostream& log) {
    validate_config(config);
    if (config.reviews_path.empty()) throw ConfigError("report: reviews path must be set");
    ensure_out_dir(config);

    Corpus corpus = load_corpus(config);
    auto by_review = mentions_by_review(config, corpus);
    auto [accommodations, silent] = collect_accommodations(corpus, by_review);
    DomainReference reference = load_reference(reference_path(config), corpus.vocabulary);

    std::map<std::string, std::map<std::string, std::string>> summaries;  // id -> variant -> text
    if (std::filesystem::exists(summaries_path(config)))
        for (const auto& s : load_summaries(summaries_path(config)))
            summaries[s.accommodation_id][std::string(to_string(s.variant))] = s.text;

    const FeatureVocabulary& vocab = *corpus.vocabulary;
    std::ostringstream md;
    md << "# Run report: domain " << corpus.domain << "\n\n";
    md << accommodations.size() << " accommodations profiled against a reference of "
       << reference.distribution.support_count << " mentions";
    if (!silent.empty()) md << " (" << silent.size() << " silent accommodations skipped)";
    md << ".\n\n";

    md << "## Domain expectation profile\n\n";
    md << "Most expected features in this domain:\n\n";
    md << "| Feature | Share | Mentions |\n|---|---|---|\n";
    {
        std::vector<std::size_t> order(vocab.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (reference.counts[a] != reference.counts[b])
                return reference.counts[a] > reference.counts[b];
            return vocab.key(a) < vocab.key(b);
        });
        for (std::size_t row = 0; row < std::min<std::size_t>(10, order.size()); ++row) {
            std::size_t i = order[row];
            if (reference.counts[i] == 0) break;
            std::ostringstream share;
            share.setf(std::ios::fixed);
            share.precision(1);
            share << 100.0 * reference.distribution.probabilities[i] << "%";
            md << "| " << vocab.key(i).label() << " | " << share.str() << " | "
               << reference.counts[i] << " |\n";
        }
    }
    md << "\n";

    for (const auto& acc : accommodations) {
        const std::string sid = sanitize_id(acc.id);
        DivergenceProfile profile =
            load_profile(config.out_dir / "profiles" / (sid + ".json"), corpus.vocabulary);
        TopicSelection selection = select_topics(profile, acc.counts, config.k);

        md << "## " << acc.id << "\n\n";
        std::ostringstream jsd_text;
        jsd_text.precision(4);
        jsd_text << profile.total_jsd;
        md << profile.support_count << " mentions; divergence from domain expectation "
           << jsd_text.str() << " bits.\n\n";

        auto emit_items = [&](const char* title,
                              const std::vector<TopicSelection::Item>& items) {
            md << "**" << title << "**\n\n";
            if (items.empty()) {
                md << "- none\n\n";
                return;
            }
            for (const auto& item : items) {
                std::ostringstream score;
                score.precision(3);
                score << item.signed_score;
                md << "- " << item.feature.label() << " (score " << score.str() << ", "
                   << item.count << " mentions)\n";
            }
            md << "\n";
        };
        emit_items("Mentioned more often than expected", selection.over_represented);
        emit_items("Expected but missing or rare", selection.missing_common);
        md << "Full deviation chart: `charts/" << sid << ".csv`\n\n";

        auto s = summaries.find(acc.id);
        if (s != summaries.end()) {
            md << "**Summaries**\n\n";
            for (const char* variant : {"baseline", "disco"}) {
                auto v = s->second.find(variant);
                if (v == s->second.end()) continue;
                md << "- *" << variant << "*: " << v->second << "\n";
            }
            md << "\n";
        }
    }

    std::ofstream out(config.out_dir / "report.md");
    if (!out) throw DataError("report: cannot write under " + config.out_dir.string());
    out << md.str();
    log << "report written: " << (config.out_dir / "report.md").string() << "\n";
}

void cmd_stats(const RunConfig& config, std::ostream& log) {
    if (config.ratings_path.empty()) throw ConfigError("stats: ratings path must be set");
    ensure_out_dir(config);

    RatingsReport report = analyze_ratings(config.ratings_path);
    std::ofstream md(config.out_dir / "stats.md");
    if (!md) throw DataError("stats: cannot write under " + config.out_dir.string());
    md << render_markdown(report);
    std::ofstream js(config.out_dir / "stats.json");
    js << report_to_json(report).dump(2) << "\n";

    for (const auto& w : report.warnings) log << "warning: " << w << "\n";
    for (const auto& pref : report.preferences) {
        std::ostringstream p;
        p.precision(4);
        p << pref.p_value;
        log << "preference " << pref.domain << ": " << pref.disco_preferred << "/"
            << pref.pairs << " (binomial p = " << p.str() << ")\n";
    }
    if (report.has_chi_square) {
        std::ostringstream line;
        line.precision(4);
        line << "chi-square(" << report.chi_square.df << ") = " << report.chi_square.statistic
             << ", p = " << report.chi_square.p_value;
        log << line.str() << "\n";
    }
    log << "stats written: " << (config.out_dir / "stats.md").string() << "\n";
}

void cmd_all(const RunConfig& config, std::ostream& log) {
    cmd_extract(config, log);
    cmd_analyze(config, log);
    cmd_prompts(config, log);
    cmd_summarize(config, log);
    cmd_report(config, log);
    if (!config.ratings_path.empty()) cmd_stats(config, log);
}

}  // namespace disco
