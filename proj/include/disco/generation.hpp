#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "disco/client.hpp"
#include "disco/prompt_bundle.hpp"

namespace disco {

struct SummaryRecord {
    std::string accommodation_id;
    PromptVariant variant = PromptVariant::disco;
    std::string text;
    std::string model;
    std::size_t word_count = 0;
    std::string created_at;          // UTC, informational only
    std::string prompt_fingerprint;  // ties the output to its exact prompt
};

// One client round-trip with the shared retry policy. Empty model output and
// transport failure after retries both raise ClientError.
SummaryRecord generate_summary(const PromptBundle& bundle, GenerationClient& client,
                               const RetryPolicy& retry = {});

// Advisory checks against the prompt-side guidelines; nothing here rejects a
// summary, the operator decides what to do with warnings.
struct SummaryValidation {
    bool over_length = false;     // word_count > 120
    bool multi_paragraph = false; // blank-line separated paragraphs
    bool raw_numbers = false;     // digits or percent patterns in the text
    std::vector<std::string> notes;

    bool clean() const { return !over_length && !multi_paragraph && !raw_numbers; }
};

SummaryValidation validate_summary(const SummaryRecord& record);

void append_summary_jsonl(const SummaryRecord& record, std::ostream& out);
std::vector<SummaryRecord> load_summaries(const std::filesystem::path& path);

}  // namespace disco
