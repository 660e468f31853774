#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "disco/expectation.hpp"
#include "disco/lvs.hpp"
#include "disco/mentions.hpp"
#include "disco/prompt_bundle.hpp"

#include "json.hpp"

namespace disco {

inline constexpr std::size_t kSnippetLimit = 20;

// Up to `limit` snippets for one topic. Single-word candidates are dropped
// first; if the survivors fit, they all go through in order, otherwise a
// seeded uniform sample without replacement is taken (original order kept).
std::vector<std::string> sample_snippets(const std::vector<std::string>& candidates,
                                         std::size_t limit, std::uint64_t seed);

// The per-topic record fed to the summarizer. For a topic the accommodation
// never mentions, every count is zero and snippets is empty; the flags are
// what tell the model the silence is meaningful.
struct TopicEntry {
    std::string topic;  // leaf name
    std::uint64_t positive = 0;
    std::uint64_t negative = 0;
    std::uint64_t neutral = 0;
    std::uint64_t total = 0;
    bool mentioned_more_often = false;
    bool missing_but_common = false;
    std::vector<std::string> snippets;
};

// One entry per distinct leaf across the three selection lists, in selection
// order (most mentioned, then over-represented, then missing). Counts come
// from this accommodation's own mentions; each topic samples snippets with a
// seed derived from (seed, leaf) so sibling topics do not interact.
std::vector<TopicEntry> build_topic_entries(const TopicSelection& selection,
                                            const std::vector<AspectMention>& mentions,
                                            std::uint64_t seed);

// Exactly seven keys, in this order: positive, negative, neutral, total,
// mentioned_more_often, missing_but_common, snippets. force_presence_only
// renders both booleans as false (the baseline condition).
nlohmann::ordered_json render_topic_entry(const TopicEntry& entry,
                                          bool force_presence_only = false);

// Full treatment prompt: canonical system text plus the four-section user
// text (most mentioned, over-represented, missing-positive, missing-negative).
PromptBundle build_disco_prompt(const std::vector<TopicEntry>& entries,
                                const TopicSelection& selection, const DomainReference& ref,
                                std::string accommodation_id, std::uint64_t seed);

// Control prompt: absence and comparison guidance stripped from the system
// text, user text reduced to the most-mentioned section, booleans forced off.
PromptBundle build_baseline_prompt(const std::vector<TopicEntry>& entries,
                                   std::string accommodation_id, std::uint64_t seed);

// Entries whose leaf is in selection.most_mentioned, order preserved; the
// baseline prompt is built from this subset.
std::vector<TopicEntry> restrict_to_most_mentioned(const std::vector<TopicEntry>& entries,
                                                   const TopicSelection& selection);

// The baseline system text, derived from the canonical prompt by deleting the
// comparison/absence guidance (guidelines 2-4 and the two boolean field
// bullets) and renumbering the survivors.
const std::string& baseline_system_prompt();

}  // namespace disco
