#include "disco/lvs.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "disco/errors.hpp"
#include "disco/util.hpp"
#include "json.hpp"

namespace disco {

using OrderedJson = nlohmann::ordered_json;

namespace {

void require_comparable(const FeatureDistribution& p, const FeatureDistribution& r) {
    if (!p.vocabulary || !r.vocabulary) throw DataError("jsd: null vocabulary");
    if (p.vocabulary != r.vocabulary &&
        p.vocabulary->fingerprint() != r.vocabulary->fingerprint())
        throw DataError("jsd: distributions use different vocabularies");
    if (p.probabilities.size() != r.probabilities.size())
        throw DataError("jsd: length mismatch");
}

// x * log2(x / y) with the 0 * log(0) = 0 convention. y is a mixture weight
// and is zero only where x is zero too.
inline double xlog2x_over(double x, double y) {
    if (x <= 0.0) return 0.0;
    return x * std::log2(x / y);
}

}  // namespace

double jsd(std::span<const double> p, std::span<const double> r) {
    if (p.size() != r.size()) throw DataError("jsd: length mismatch");
    // KL(p||m)/2 + KL(r||m)/2, each KL accumulated whole. The per-feature
    // decomposition below regroups the same terms; keeping the two routes
    // separate makes the additivity test meaningful.
    double kl_pm = 0.0, kl_rm = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double m = 0.5 * (p[i] + r[i]);
        kl_pm += xlog2x_over(p[i], m);
        kl_rm += xlog2x_over(r[i], m);
    }
    double value = 0.5 * kl_pm + 0.5 * kl_rm;
    // Guard the analytic bounds against rounding drift.
    if (value < 0.0) value = 0.0;
    if (value > 1.0) value = 1.0;
    return value;
}

double jsd(const FeatureDistribution& p, const FeatureDistribution& r) {
    require_comparable(p, r);
    return jsd(std::span<const double>(p.probabilities), std::span<const double>(r.probabilities));
}

std::vector<double> feature_contributions(std::span<const double> p, std::span<const double> r) {
    if (p.size() != r.size()) throw DataError("feature_contributions: length mismatch");
    std::vector<double> contributions(p.size(), 0.0);
    for (std::size_t i = 0; i < contributions.size(); ++i) {
        const double m = 0.5 * (p[i] + r[i]);
        double c = 0.5 * xlog2x_over(p[i], m) + 0.5 * xlog2x_over(r[i], m);
        // Each term is nonnegative by the log-sum inequality; clamp the
        // occasional -1e-17 from rounding so downstream sign logic is clean.
        contributions[i] = c < 0.0 ? 0.0 : c;
    }
    return contributions;
}

std::vector<double> feature_contributions(const FeatureDistribution& p,
                                          const FeatureDistribution& r) {
    require_comparable(p, r);
    return feature_contributions(std::span<const double>(p.probabilities),
                                 std::span<const double>(r.probabilities));
}

DivergenceProfile divergence_profile(std::string accommodation_id,
                                     const FeatureDistribution& p, const DomainReference& ref) {
    const FeatureDistribution& r = ref.distribution;
    std::vector<double> contributions = feature_contributions(p, r);

    DivergenceProfile profile;
    profile.accommodation_id = std::move(accommodation_id);
    profile.vocabulary = p.vocabulary;
    profile.support_count = p.support_count;
    profile.total_jsd = jsd(p, r);
    profile.entries.resize(contributions.size());
    for (std::size_t i = 0; i < contributions.size(); ++i) {
        ProfileEntry& e = profile.entries[i];
        e.p = p.probabilities[i];
        e.r = r.probabilities[i];
        e.contribution = contributions[i];
        const double diff = e.p - e.r;
        e.signed_score = diff < 0 ? -e.contribution : e.contribution;
    }
    return profile;
}

TopicSelection select_topics(const DivergenceProfile& profile,
                             std::span<const std::uint64_t> counts, int k) {
    if (k <= 0) throw DataError("select_topics: k must be positive");
    if (counts.size() != profile.entries.size())
        throw DataError("select_topics: counts length does not match the profile");
    const FeatureVocabulary& vocab = *profile.vocabulary;

    auto item = [&](std::size_t i) {
        return TopicSelection::Item{vocab.key(i), profile.entries[i].signed_score, counts[i]};
    };
    auto take = [&](std::vector<std::size_t> idx, auto&& better) {
        // stable partial selection: sort all candidates, keep the first k
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            if (better(a, b)) return true;
            if (better(b, a)) return false;
            return vocab.key(a) < vocab.key(b);
        });
        if (idx.size() > static_cast<std::size_t>(k)) idx.resize(static_cast<std::size_t>(k));
        std::vector<TopicSelection::Item> out;
        out.reserve(idx.size());
        for (std::size_t i : idx) out.push_back(item(i));
        return out;
    };

    std::vector<std::size_t> mentioned, over, missing;
    for (std::size_t i = 0; i < profile.entries.size(); ++i) {
        if (counts[i] > 0) mentioned.push_back(i);
        if (profile.entries[i].signed_score > 0) over.push_back(i);
        if (profile.entries[i].signed_score < 0) missing.push_back(i);
    }

    TopicSelection selection;
    selection.k = k;
    selection.most_mentioned =
        take(std::move(mentioned), [&](std::size_t a, std::size_t b) { return counts[a] > counts[b]; });
    selection.over_represented = take(std::move(over), [&](std::size_t a, std::size_t b) {
        return profile.entries[a].signed_score > profile.entries[b].signed_score;
    });
    selection.missing_common = take(std::move(missing), [&](std::size_t a, std::size_t b) {
        return profile.entries[a].signed_score < profile.entries[b].signed_score;
    });
    return selection;
}

void export_deviation_chart(const DivergenceProfile& profile,
                            const std::filesystem::path& path) {
    const FeatureVocabulary& vocab = *profile.vocabulary;
    std::vector<std::size_t> order(profile.entries.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (profile.entries[a].signed_score != profile.entries[b].signed_score)
            return profile.entries[a].signed_score > profile.entries[b].signed_score;
        return vocab.key(a) < vocab.key(b);
    });

    std::ofstream out(path);
    if (!out) throw DataError("chart: cannot write " + path.string());
    out << "feature,leaf,sentiment,p,r,signed_score\n";
    for (std::size_t i : order) {
        const FeatureKey& key = vocab.key(i);
        const ProfileEntry& e = profile.entries[i];
        out << key.label() << ',' << key.leaf << ',' << to_string(key.sentiment) << ','
            << format_double(e.p) << ',' << format_double(e.r) << ','
            << format_double(e.signed_score) << '\n';
    }
}

void save_profile(const DivergenceProfile& profile, const std::filesystem::path& path) {
    const FeatureVocabulary& vocab = *profile.vocabulary;
    OrderedJson features = OrderedJson::array();
    for (std::size_t i = 0; i < profile.entries.size(); ++i) {
        const ProfileEntry& e = profile.entries[i];
        OrderedJson f;
        f["leaf"] = vocab.key(i).leaf;
        f["sentiment"] = to_string(vocab.key(i).sentiment);
        f["p"] = e.p;
        f["r"] = e.r;
        f["contribution"] = e.contribution;
        f["signed_score"] = e.signed_score;
        features.push_back(std::move(f));
    }
    OrderedJson doc;
    doc["accommodation_id"] = profile.accommodation_id;
    doc["total_jsd"] = profile.total_jsd;
    doc["support_count"] = profile.support_count;
    doc["features"] = std::move(features);
    std::ofstream out(path);
    if (!out) throw DataError("profile: cannot write " + path.string());
    out << doc.dump(2) << "\n";
}

DivergenceProfile load_profile(const std::filesystem::path& path, VocabPtr vocabulary) {
    if (!vocabulary) throw DataError("profile: null vocabulary");
    std::ifstream in(path);
    if (!in) throw DataError("profile: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    OrderedJson doc = OrderedJson::parse(buf.str(), nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        throw DataError("profile: invalid JSON in " + path.string());
    try {
        DivergenceProfile profile;
        profile.accommodation_id = doc.at("accommodation_id").get<std::string>();
        profile.total_jsd = doc.at("total_jsd").get<double>();
        profile.support_count = doc.at("support_count").get<std::uint64_t>();
        const auto& features = doc.at("features");
        if (!features.is_array() || features.size() != vocabulary->size())
            throw DataError("profile: feature list does not match the vocabulary");
        profile.entries.resize(vocabulary->size());
        for (std::size_t i = 0; i < vocabulary->size(); ++i) {
            const auto& f = features[i];
            auto sentiment = parse_sentiment(f.at("sentiment").get<std::string>());
            if (!sentiment || f.at("leaf").get<std::string>() != vocabulary->key(i).leaf ||
                *sentiment != vocabulary->key(i).sentiment)
                throw DataError("profile: feature order does not match the vocabulary");
            ProfileEntry& e = profile.entries[i];
            e.p = f.at("p").get<double>();
            e.r = f.at("r").get<double>();
            e.contribution = f.at("contribution").get<double>();
            e.signed_score = f.at("signed_score").get<double>();
        }
        profile.vocabulary = std::move(vocabulary);
        return profile;
    } catch (const OrderedJson::exception& e) {
        throw DataError("profile: " + path.string() + ": " + e.what());
    }
}

std::vector<DivergenceProfile> batch_profiles_serial(
    const std::vector<std::string>& ids, const std::vector<FeatureDistribution>& dists,
    const DomainReference& ref) {
    if (ids.size() != dists.size()) throw DataError("batch_profiles: ids/distributions mismatch");
    std::vector<DivergenceProfile> out(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i)
        out[i] = divergence_profile(ids[i], dists[i], ref);
    return out;
}

std::vector<DivergenceProfile> batch_profiles(const std::vector<std::string>& ids,
                                              const std::vector<FeatureDistribution>& dists,
                                              const DomainReference& ref) {
    if (ids.size() != dists.size()) throw DataError("batch_profiles: ids/distributions mismatch");
    std::vector<DivergenceProfile> out(ids.size());
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < ids.size(); ++i) {
        try {
            out[i] = divergence_profile(ids[i], dists[i], ref);
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace disco
