#include "disco/generation.hpp"

#include <cctype>
#include <fstream>
#include <ostream>

#include "disco/errors.hpp"
#include "disco/util.hpp"
#include "json.hpp"

namespace disco {

using OrderedJson = nlohmann::ordered_json;

SummaryRecord generate_summary(const PromptBundle& bundle, GenerationClient& client,
                               const RetryPolicy& retry) {
    ChatRequest request{bundle.system, bundle.user};
    std::string text;
    std::string failure;
    for (int attempt = 1; attempt <= retry.max_attempts; ++attempt) {
        if (attempt > 1) retry_backoff(retry, attempt - 1);
        try {
            text = client.complete(request);
            if (trim(text).empty()) {
                failure = "model returned empty output";
                continue;
            }
            failure.clear();
            break;
        } catch (const ClientError& e) {
            failure = e.what();
        }
    }
    if (!failure.empty())
        throw ClientError("summary for " + bundle.accommodation_id +
                          " failed after retries: " + failure);

    SummaryRecord record;
    record.accommodation_id = bundle.accommodation_id;
    record.variant = bundle.variant;
    record.text = std::move(text);
    record.model = client.model_label();
    record.word_count = count_words(record.text);
    record.created_at = utc_timestamp();
    record.prompt_fingerprint = bundle.fingerprint();
    return record;
}

SummaryValidation validate_summary(const SummaryRecord& record) {
    SummaryValidation v;
    if (record.word_count > 120) {
        v.over_length = true;
        v.notes.push_back("summary runs " + std::to_string(record.word_count) +
                          " words, limit is 120");
    }

    // A blank line (possibly with stray spaces) splits paragraphs.
    std::size_t pos = 0;
    int paragraphs = 0;
    bool in_paragraph = false;
    bool blank_pending = false;
    while (pos <= record.text.size()) {
        std::size_t eol = record.text.find('\n', pos);
        bool last = eol == std::string::npos;
        std::string_view line(record.text.data() + pos,
                              (last ? record.text.size() : eol) - pos);
        pos = last ? record.text.size() + 1 : eol + 1;
        bool blank = trim(line).empty();
        if (blank) {
            if (in_paragraph) blank_pending = true;
        } else {
            if (!in_paragraph || blank_pending) ++paragraphs;
            in_paragraph = true;
            blank_pending = false;
        }
    }
    if (paragraphs > 1) {
        v.multi_paragraph = true;
        v.notes.push_back("summary has " + std::to_string(paragraphs) +
                          " paragraphs, expected one");
    }

    for (std::size_t i = 0; i < record.text.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(record.text[i]))) {
            v.raw_numbers = true;
            std::size_t end = i;
            while (end < record.text.size() &&
                   (std::isdigit(static_cast<unsigned char>(record.text[end])) ||
                    record.text[end] == '%' || record.text[end] == '.'))
                ++end;
            v.notes.push_back("summary quotes a raw figure: \"" +
                              record.text.substr(i, end - i) + "\"");
            break;
        }
    }
    return v;
}

void append_summary_jsonl(const SummaryRecord& record, std::ostream& out) {
    OrderedJson doc;
    doc["accommodation_id"] = record.accommodation_id;
    doc["variant"] = to_string(record.variant);
    doc["text"] = record.text;
    doc["model"] = record.model;
    doc["word_count"] = record.word_count;
    doc["created_at"] = record.created_at;
    doc["prompt_fingerprint"] = record.prompt_fingerprint;
    out << doc.dump() << "\n";
}

std::vector<SummaryRecord> load_summaries(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("summaries: cannot open " + path.string());
    std::vector<SummaryRecord> out;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        OrderedJson doc = OrderedJson::parse(line, nullptr, false);
        if (doc.is_discarded() || !doc.is_object())
            throw DataError("summaries: " + path.string() + " line " +
                            std::to_string(line_number) + ": invalid JSON");
        try {
            SummaryRecord r;
            r.accommodation_id = doc.at("accommodation_id").get<std::string>();
            auto variant = parse_variant(doc.at("variant").get<std::string>());
            if (!variant)
                throw DataError("summaries: unknown variant at line " +
                                std::to_string(line_number));
            r.variant = *variant;
            r.text = doc.at("text").get<std::string>();
            r.model = doc.at("model").get<std::string>();
            r.word_count = doc.at("word_count").get<std::size_t>();
            r.created_at = doc.at("created_at").get<std::string>();
            r.prompt_fingerprint = doc.at("prompt_fingerprint").get<std::string>();
            out.push_back(std::move(r));
        } catch (const OrderedJson::exception& e) {
            throw DataError("summaries: " + path.string() + " line " +
                            std::to_string(line_number) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace disco
