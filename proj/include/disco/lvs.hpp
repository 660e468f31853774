#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "disco/expectation.hpp"
#include "disco/taxonomy.hpp"

namespace disco {

// Jensen-Shannon divergence in bits: jsd(p, r) = KL(p||m)/2 + KL(r||m)/2 with
// m = (p + r)/2 and 0 * log(0/x) taken as 0. Symmetric, bounded to [0, 1],
// exactly 1 on disjoint supports. The span overloads are the bare kernel over
// probability vectors of equal length; the FeatureDistribution overloads
// additionally require a shared vocabulary.
double jsd(std::span<const double> p, std::span<const double> r);
double jsd(const FeatureDistribution& p, const FeatureDistribution& r);

// Additive per-feature split of the same quantity:
//   c_f = p_f/2 * log2(p_f / m_f) + r_f/2 * log2(r_f / m_f)
// Each c_f is nonnegative and the vector sums to jsd(p, r). Deliberately
// computed feature by feature rather than by reusing jsd(), so the
// decomposition identity is a real cross-check and not a tautology.
std::vector<double> feature_contributions(std::span<const double> p, std::span<const double> r);
std::vector<double> feature_contributions(const FeatureDistribution& p,
                                          const FeatureDistribution& r);

struct ProfileEntry {
    double p = 0;             // accommodation probability
    double r = 0;             // reference probability
    double contribution = 0;  // nonnegative share of the total divergence
    double signed_score = 0;  // contribution, negated when the feature is under-represented
};

// Where one accommodation's review mass sits relative to its domain: the
// total divergence and its per-feature split, in vocabulary order.
struct DivergenceProfile {
    std::string accommodation_id;
    VocabPtr vocabulary;
    double total_jsd = 0;
    std::vector<ProfileEntry> entries;
    std::uint64_t support_count = 0;
};

DivergenceProfile divergence_profile(std::string accommodation_id,
                                     const FeatureDistribution& p, const DomainReference& ref);

struct TopicSelection {
    struct Item {
        FeatureKey feature;
        double signed_score = 0;
        std::uint64_t count = 0;  // this accommodation's mentions of the feature
    };
    std::vector<Item> most_mentioned;    // top k by count, count > 0
    std::vector<Item> over_represented;  // top k by signed score, score > 0
    std::vector<Item> missing_common;    // bottom k by signed score, score < 0
    int k = 7;
};

// Ties inside every list break lexicographically by (leaf, sentiment), so
// equal inputs always select the same topics. counts must align to the
// profile's vocabulary.
TopicSelection select_topics(const DivergenceProfile& profile,
                             std::span<const std::uint64_t> counts, int k = 7);

// CSV of the full profile, most over-represented first; feeds the deviation
// bar charts.
void export_deviation_chart(const DivergenceProfile& profile,
                            const std::filesystem::path& path);

void save_profile(const DivergenceProfile& profile, const std::filesystem::path& path);
DivergenceProfile load_profile(const std::filesystem::path& path, VocabPtr vocabulary);

// Profile every accommodation against the same reference. OpenMP is the
// production path; the serial twin is the test reference and must produce
// bit-identical output.
std::vector<DivergenceProfile> batch_profiles(const std::vector<std::string>& ids,
                                              const std::vector<FeatureDistribution>& dists,
                                              const DomainReference& ref);
std::vector<DivergenceProfile> batch_profiles_serial(
    const std::vector<std::string>& ids, const std::vector<FeatureDistribution>& dists,
    const DomainReference& ref);

}  // namespace disco
