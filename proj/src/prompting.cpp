#include "disco/prompting.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "disco/errors.hpp"
#include "disco/prompt_text.hpp"
#include "disco/util.hpp"

namespace disco {

using OrderedJson = nlohmann::ordered_json;

std::vector<std::string> sample_snippets(const std::vector<std::string>& candidates,
                                         std::size_t limit, std::uint64_t seed) {
    std::vector<std::string> eligible;
    for (const auto& c : candidates)
        if (is_multiword(c)) eligible.push_back(c);
    if (eligible.size() <= limit) return eligible;

    // Partial Fisher-Yates over the index space, then restore input order so
    // the selection is a uniform subset and reads naturally.
    std::vector<std::size_t> idx(eligible.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    SeededRng rng(seed);
    for (std::size_t i = 0; i < limit; ++i) {
        std::size_t j = i + rng.below(idx.size() - i);
        std::swap(idx[i], idx[j]);
    }
    idx.resize(limit);
    std::sort(idx.begin(), idx.end());
    std::vector<std::string> out;
    out.reserve(limit);
    for (std::size_t i : idx) out.push_back(eligible[i]);
    return out;
}

std::vector<TopicEntry> build_topic_entries(const TopicSelection& selection,
                                            const std::vector<AspectMention>& mentions,
                                            std::uint64_t seed) {
    // Selection order, deduplicated by leaf: a leaf that is both heavily
    // mentioned and over-represented still gets a single entry.
    std::vector<std::string> leaf_order;
    std::set<std::string> seen;
    std::set<std::string> over_leaves, missing_leaves;
    auto visit = [&](const std::vector<TopicSelection::Item>& items, std::set<std::string>* mark) {
        for (const auto& it : items) {
            if (mark) mark->insert(it.feature.leaf);
            if (seen.insert(it.feature.leaf).second) leaf_order.push_back(it.feature.leaf);
        }
    };
    visit(selection.most_mentioned, nullptr);
    visit(selection.over_represented, &over_leaves);
    visit(selection.missing_common, &missing_leaves);

    std::map<std::string, std::array<std::uint64_t, 3>> counts;
    std::map<std::string, std::vector<std::string>> snippets;
    for (const auto& m : mentions) {
        if (!seen.count(m.aspect_leaf)) continue;
        ++counts[m.aspect_leaf][static_cast<std::size_t>(m.sentiment)];
        snippets[m.aspect_leaf].push_back(m.snippet);
    }

    std::vector<TopicEntry> entries;
    entries.reserve(leaf_order.size());
    for (const auto& leaf : leaf_order) {
        TopicEntry e;
        e.topic = leaf;
        const auto& c = counts[leaf];
        e.positive = c[0];
        e.negative = c[1];
        e.neutral = c[2];
        e.total = e.positive + e.negative + e.neutral;
        e.mentioned_more_often = over_leaves.count(leaf) > 0;
        e.missing_but_common = !e.mentioned_more_often && missing_leaves.count(leaf) > 0;
        e.snippets = sample_snippets(snippets[leaf], kSnippetLimit, derive_seed(seed, leaf));
        entries.push_back(std::move(e));
    }
    return entries;
}

OrderedJson render_topic_entry(const TopicEntry& entry, bool force_presence_only) {
    OrderedJson j;
    j["positive"] = entry.positive;
    j["negative"] = entry.negative;
    j["neutral"] = entry.neutral;
    j["total"] = entry.total;
    j["mentioned_more_often"] = force_presence_only ? false : entry.mentioned_more_often;
    j["missing_but_common"] = force_presence_only ? false : entry.missing_but_common;
    j["snippets"] = entry.snippets;
    return j;
}

namespace {

std::string render_section(const std::vector<const TopicEntry*>& entries,
                           bool force_presence_only) {
    OrderedJson section = OrderedJson::object();
    for (const TopicEntry* e : entries)
        section[e->topic] = render_topic_entry(*e, force_presence_only);
    return section.dump(2);
}

const TopicEntry* find_entry(const std::vector<TopicEntry>& entries, const std::string& leaf) {
    for (const auto& e : entries)
        if (e.topic == leaf) return &e;
    return nullptr;
}

// Entries for the leaves of `items`, deduplicated, in entry order.
std::vector<const TopicEntry*> entries_for(const std::vector<TopicEntry>& entries,
                                           const std::vector<TopicSelection::Item>& items) {
    std::set<std::string> wanted;
    for (const auto& it : items) wanted.insert(it.feature.leaf);
    std::vector<const TopicEntry*> out;
    for (const auto& e : entries)
        if (wanted.count(e.topic)) out.push_back(&e);
    return out;
}

}  // namespace

PromptBundle build_disco_prompt(const std::vector<TopicEntry>& entries,
                                const TopicSelection& selection, const DomainReference& ref,
                                std::string accommodation_id, std::uint64_t seed) {
    (void)ref;  // the reference shaped the selection; nothing else is needed here
    if (entries.empty()) throw DataError("disco prompt: no topic entries");

    std::vector<TopicSelection::Item> missing_pos, missing_neg;
    for (const auto& it : selection.missing_common) {
        if (it.feature.sentiment == Sentiment::positive) missing_pos.push_back(it);
        if (it.feature.sentiment == Sentiment::negative) missing_neg.push_back(it);
    }

    std::string user(prompts::kSummaryUserTemplate);
    auto fill = [&user](std::string_view placeholder, const std::string& value) {
        auto pos = user.find(placeholder);
        if (pos == std::string::npos)
            throw DataError("summary template: missing placeholder " + std::string(placeholder));
        user.replace(pos, placeholder.size(), value);
    };
    fill("{most_mentioned_topics}", render_section(entries_for(entries, selection.most_mentioned), false));
    fill("{mentioned_more_often}", render_section(entries_for(entries, selection.over_represented), false));
    fill("{missing_but_common_positives}", render_section(entries_for(entries, missing_pos), false));
    fill("{missing_but_common_negatives}", render_section(entries_for(entries, missing_neg), false));

    PromptBundle bundle;
    bundle.accommodation_id = std::move(accommodation_id);
    bundle.variant = PromptVariant::disco;
    bundle.system = std::string(prompts::kSummarySystem);
    bundle.user = std::move(user);
    bundle.seed = seed;
    return bundle;
}

std::vector<TopicEntry> restrict_to_most_mentioned(const std::vector<TopicEntry>& entries,
                                                   const TopicSelection& selection) {
    std::set<std::string> wanted;
    for (const auto& it : selection.most_mentioned) wanted.insert(it.feature.leaf);
    std::vector<TopicEntry> out;
    for (const auto& e : entries)
        if (wanted.count(e.topic)) out.push_back(e);
    return out;
}

PromptBundle build_baseline_prompt(const std::vector<TopicEntry>& entries,
                                   std::string accommodation_id, std::uint64_t seed) {
    if (entries.empty()) throw DataError("baseline prompt: no topic entries");

    std::vector<const TopicEntry*> ptrs;
    ptrs.reserve(entries.size());
    for (const auto& e : entries) ptrs.push_back(&e);

    // First section of the shared template, presence-only data.
    std::string user = "### Most mentioned topics data:\n";
    user += render_section(ptrs, true);

    PromptBundle bundle;
    bundle.accommodation_id = std::move(accommodation_id);
    bundle.variant = PromptVariant::baseline;
    bundle.system = baseline_system_prompt();
    bundle.user = std::move(user);
    bundle.seed = seed;
    return bundle;
}

const std::string& baseline_system_prompt() {
    static const std::string derived = [] {
        // Walk the canonical prompt line by line, dropping the two boolean
        // field bullets and guideline items 2-4, then renumber 5 and 6.
        std::string out;
        std::size_t pos = 0;
        bool in_cut_block = false;
        const std::string_view src = prompts::kSummarySystem;
        while (pos <= src.size()) {
            std::size_t eol = src.find('\n', pos);
            bool last = eol == std::string_view::npos;
            std::string_view line = src.substr(pos, (last ? src.size() : eol) - pos);
            pos = last ? src.size() + 1 : eol + 1;

            if (line.rfind("- mentioned_more_often:", 0) == 0 ||
                line.rfind("- missing_but_common:", 0) == 0)
                continue;
            if (line.rfind("2. *Highlight unusual emphasis*", 0) == 0) in_cut_block = true;
            if (line.rfind("5. *Do NOT*", 0) == 0) in_cut_block = false;
            if (in_cut_block) continue;

            std::string text(line);
            if (line.rfind("5. *Do NOT*", 0) == 0) text[0] = '2';
            if (line.rfind("6. *Format*", 0) == 0) text[0] = '3';
            out += text;
            if (!last) out += '\n';
        }
        return out;
    }();
    return derived;
}

}  // namespace disco
