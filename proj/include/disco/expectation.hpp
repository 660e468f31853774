#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "disco/mentions.hpp"
#include "disco/taxonomy.hpp"

namespace disco {

// Probability vector over the feature vocabulary. support_count is the raw
// number of mentions it was estimated from.
struct FeatureDistribution {
    VocabPtr vocabulary;
    std::vector<double> probabilities;
    std::uint64_t support_count = 0;
};

inline constexpr double kDefaultEpsilon = 1e-9;

// Mention tallies aligned to the vocabulary. A mention whose (leaf, sentiment)
// is not in the vocabulary is an error.
std::vector<std::uint64_t> count_features(const std::vector<AspectMention>& mentions,
                                          const FeatureVocabulary& vocabulary);

// Plain relative frequencies; zero total is an error.
FeatureDistribution distribution_from_counts(std::span<const std::uint64_t> counts,
                                             VocabPtr vocabulary);

FeatureDistribution accommodation_distribution(const std::vector<AspectMention>& mentions,
                                               VocabPtr vocabulary);

// Smoothed reference: (count_f + epsilon) / (total + epsilon * V). Any
// epsilon > 0 gives the reference full support, which keeps divergences
// finite no matter how lopsided an accommodation is; epsilon = 0 degrades to
// plain relative frequencies.
FeatureDistribution smoothed_distribution(std::span<const std::uint64_t> counts,
                                          VocabPtr vocabulary, double epsilon);

// What "normal" looks like in one domain: mention counts pooled over every
// accommodation, smoothed.
struct DomainReference {
    std::string domain;
    FeatureDistribution distribution;
    std::vector<std::uint64_t> counts;  // pooled, unsmoothed
    double epsilon = kDefaultEpsilon;
    std::size_t accommodation_count = 0;
};

DomainReference domain_reference(const MentionSet& mentions, VocabPtr vocabulary,
                                 double epsilon, std::string domain,
                                 std::size_t accommodation_count);

DomainReference reference_from_counts(std::vector<std::uint64_t> counts, VocabPtr vocabulary,
                                      double epsilon, std::string domain,
                                      std::size_t accommodation_count);

// Reference with one accommodation's own counts subtracted out, so it is not
// compared against itself.
DomainReference leave_one_out_reference(const DomainReference& pooled,
                                        std::span<const std::uint64_t> own_counts);

void save_reference(const DomainReference& reference, const std::filesystem::path& path);
DomainReference load_reference(const std::filesystem::path& path, VocabPtr vocabulary);

// Batch normalization of per-accommodation count vectors. The OpenMP variant
// is the production path; the serial one is the reference implementation the
// tests compare against (outputs must match bit for bit).
std::vector<FeatureDistribution> batch_distributions(
    const std::vector<std::vector<std::uint64_t>>& counts, VocabPtr vocabulary);
std::vector<FeatureDistribution> batch_distributions_serial(
    const std::vector<std::vector<std::uint64_t>>& counts, VocabPtr vocabulary);

}  // namespace disco
