#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "disco/prompt_bundle.hpp"
#include "disco/stats.hpp"

#include "json.hpp"

namespace disco {

// One study row: one participant rating one variant of one accommodation on
// the five Likert dimensions, plus the A/B preference flag.
struct RatingsRecord {
    std::string participant_id;
    std::string domain;
    std::string accommodation_id;
    PromptVariant variant = PromptVariant::baseline;
    int relevance = 0;
    int detail = 0;
    int helpfulness = 0;  // also covers "persuasive impact" in older sheets
    int decision_support = 0;
    int ease = 0;
    bool preferred = false;
};

inline constexpr const char* kRatingsHeader =
    "participant_id,domain,accommodation_id,variant,relevance,detail,helpfulness,"
    "decision_support,ease,preferred";

// Malformed rows are skipped and reported with their line numbers.
std::vector<RatingsRecord> load_ratings_csv(const std::filesystem::path& path,
                                            std::vector<std::string>* warnings);

// Per-dimension comparison within one scope (a domain or the pooled set).
// When a dimension is degenerate (all differences zero) the test is absent
// and `degenerate` is set; infinite t (constant nonzero shift) reports p = 0
// and no d_z.
struct DimensionStats {
    std::string dimension;
    double baseline_mean = 0;
    double disco_mean = 0;
    bool degenerate = false;
    stats::TestResult t;       // effect_size carries d_z when finite
    bool has_dz = false;
    double d_z = 0;
    double d_pooled = 0;
    bool has_d_pooled = false;
};

struct PreferenceStats {
    std::string domain;
    std::size_t pairs = 0;
    std::size_t disco_preferred = 0;
    double p_value = 1.0;
};

struct RatingsReport {
    std::vector<std::string> domains;  // sorted
    // per domain plus the pooled "all" scope, five dimensions each
    std::map<std::string, std::vector<DimensionStats>> scopes;
    std::vector<PreferenceStats> preferences;  // per domain, then overall
    bool has_chi_square = false;
    stats::TestResult chi_square;  // preference x domain independence
    std::vector<std::string> warnings;
    std::size_t pairs_total = 0;
};

RatingsReport analyze_ratings(const std::filesystem::path& path);

std::string render_markdown(const RatingsReport& report);
nlohmann::ordered_json report_to_json(const RatingsReport& report);

// *, **, *** per the usual .05/.01/.001 thresholds; empty when n.s.
std::string significance_stars(double p);

}  // namespace disco
