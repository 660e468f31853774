#include "disco/expectation.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "disco/errors.hpp"
#include "disco/util.hpp"
#include "json.hpp"

namespace disco {

using OrderedJson = nlohmann::ordered_json;

namespace {

void require_vocab(const VocabPtr& vocabulary) {
    if (!vocabulary) throw DataError("distribution: null vocabulary");
}

}  // namespace

std::vector<std::uint64_t> count_features(const std::vector<AspectMention>& mentions,
                                          const FeatureVocabulary& vocabulary) {
    std::vector<std::uint64_t> counts(vocabulary.size(), 0);
    for (const auto& m : mentions) {
        auto idx = vocabulary.index_of(m.aspect_leaf, m.sentiment);
        if (!idx)
            throw DataError("count_features: mention leaf \"" + m.aspect_leaf +
                            "\" not in vocabulary");
        ++counts[*idx];
    }
    return counts;
}

FeatureDistribution distribution_from_counts(std::span<const std::uint64_t> counts,
                                             VocabPtr vocabulary) {
    require_vocab(vocabulary);
    if (counts.size() != vocabulary->size())
        throw DataError("distribution: counts length does not match vocabulary");
    std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    if (total == 0) throw DataError("distribution: zero total count");

    FeatureDistribution d;
    d.vocabulary = std::move(vocabulary);
    d.support_count = total;
    d.probabilities.resize(counts.size());
    const double denom = static_cast<double>(total);
    for (std::size_t i = 0; i < counts.size(); ++i)
        d.probabilities[i] = static_cast<double>(counts[i]) / denom;
    return d;
}

FeatureDistribution accommodation_distribution(const std::vector<AspectMention>& mentions,
                                               VocabPtr vocabulary) {
    require_vocab(vocabulary);
    auto counts = count_features(mentions, *vocabulary);
    return distribution_from_counts(counts, std::move(vocabulary));
}

FeatureDistribution smoothed_distribution(std::span<const std::uint64_t> counts,
                                          VocabPtr vocabulary, double epsilon) {
    require_vocab(vocabulary);
    if (counts.size() != vocabulary->size())
        throw DataError("distribution: counts length does not match vocabulary");
    if (!(epsilon >= 0)) throw DataError("distribution: epsilon must be nonnegative");
    std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    if (total == 0) throw DataError("distribution: zero total count");

    FeatureDistribution d;
    d.vocabulary = std::move(vocabulary);
    d.support_count = total;
    d.probabilities.resize(counts.size());
    const double denom =
        static_cast<double>(total) + epsilon * static_cast<double>(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        d.probabilities[i] = (static_cast<double>(counts[i]) + epsilon) / denom;
    return d;
}

DomainReference reference_from_counts(std::vector<std::uint64_t> counts, VocabPtr vocabulary,
                                      double epsilon, std::string domain,
                                      std::size_t accommodation_count) {
    DomainReference ref;
    ref.distribution = smoothed_distribution(counts, vocabulary, epsilon);
    ref.counts = std::move(counts);
    ref.epsilon = epsilon;
    ref.domain = std::move(domain);
    ref.accommodation_count = accommodation_count;
    return ref;
}

DomainReference domain_reference(const MentionSet& mentions, VocabPtr vocabulary,
                                 double epsilon, std::string domain,
                                 std::size_t accommodation_count) {
    require_vocab(vocabulary);
    auto counts = count_features(mentions.mentions, *vocabulary);
    return reference_from_counts(std::move(counts), std::move(vocabulary), epsilon,
                                 std::move(domain), accommodation_count);
}

DomainReference leave_one_out_reference(const DomainReference& pooled,
                                        std::span<const std::uint64_t> own_counts) {
    if (own_counts.size() != pooled.counts.size())
        throw DataError("leave-one-out: counts length mismatch");
    std::vector<std::uint64_t> rest(pooled.counts.size());
    for (std::size_t i = 0; i < rest.size(); ++i) {
        if (own_counts[i] > pooled.counts[i])
            throw DataError("leave-one-out: accommodation counts exceed pooled counts");
        rest[i] = pooled.counts[i] - own_counts[i];
    }
    std::size_t remaining =
        pooled.accommodation_count > 0 ? pooled.accommodation_count - 1 : 0;
    return reference_from_counts(std::move(rest), pooled.distribution.vocabulary,
                                 pooled.epsilon, pooled.domain, remaining);
}

void save_reference(const DomainReference& reference, const std::filesystem::path& path) {
    const auto& vocab = *reference.distribution.vocabulary;
    OrderedJson features = OrderedJson::array();
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        OrderedJson f;
        f["leaf"] = vocab.key(i).leaf;
        f["sentiment"] = to_string(vocab.key(i).sentiment);
        f["p"] = reference.distribution.probabilities[i];
        f["count"] = reference.counts[i];
        features.push_back(std::move(f));
    }
    OrderedJson doc;
    doc["domain"] = reference.domain;
    doc["epsilon"] = reference.epsilon;
    doc["accommodation_count"] = reference.accommodation_count;
    doc["features"] = std::move(features);
    std::ofstream out(path);
    if (!out) throw DataError("reference: cannot write " + path.string());
    out << doc.dump(2) << "\n";
}

DomainReference load_reference(const std::filesystem::path& path, VocabPtr vocabulary) {
    require_vocab(vocabulary);
    std::ifstream in(path);
    if (!in) throw DataError("reference: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    OrderedJson doc = OrderedJson::parse(buf.str(), nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        throw DataError("reference: invalid JSON in " + path.string());

    try {
        DomainReference ref;
        ref.domain = doc.at("domain").get<std::string>();
        ref.epsilon = doc.at("epsilon").get<double>();
        ref.accommodation_count = doc.at("accommodation_count").get<std::size_t>();
        const auto& features = doc.at("features");
        if (!features.is_array() || features.size() != vocabulary->size())
            throw DataError("reference: feature list does not match the vocabulary");
        ref.counts.resize(vocabulary->size());
        FeatureDistribution d;
        d.vocabulary = vocabulary;
        d.probabilities.resize(vocabulary->size());
        for (std::size_t i = 0; i < vocabulary->size(); ++i) {
            const auto& f = features[i];
            auto sentiment = parse_sentiment(f.at("sentiment").get<std::string>());
            if (!sentiment || f.at("leaf").get<std::string>() != vocabulary->key(i).leaf ||
                *sentiment != vocabulary->key(i).sentiment)
                throw DataError("reference: feature order does not match the vocabulary");
            d.probabilities[i] = f.at("p").get<double>();
            ref.counts[i] = f.at("count").get<std::uint64_t>();
        }
        d.support_count =
            std::accumulate(ref.counts.begin(), ref.counts.end(), std::uint64_t{0});
        ref.distribution = std::move(d);
        return ref;
    } catch (const OrderedJson::exception& e) {
        throw DataError("reference: " + path.string() + ": " + e.what());
    }
}

std::vector<FeatureDistribution> batch_distributions_serial(
    const std::vector<std::vector<std::uint64_t>>& counts, VocabPtr vocabulary) {
    std::vector<FeatureDistribution> out(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        out[i] = distribution_from_counts(counts[i], vocabulary);
    return out;
}

std::vector<FeatureDistribution> batch_distributions(
    const std::vector<std::vector<std::uint64_t>>& counts, VocabPtr vocabulary) {
    std::vector<FeatureDistribution> out(counts.size());
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < counts.size(); ++i) {
        try {
            out[i] = distribution_from_counts(counts[i], vocabulary);
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace disco
