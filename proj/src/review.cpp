#include "disco/review.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "disco/errors.hpp"
#include "json.hpp"

namespace disco {
namespace {

using nlohmann::json;

// Returns the parse failure reason, or empty on success.
std::string parse_review_line(const std::string& line, Review& out) {
    json doc = json::parse(line, nullptr, false);
    if (doc.is_discarded()) return "invalid JSON";
    if (!doc.is_object()) return "not a JSON object";

    auto required = [&](const char* field, std::string& dst) -> std::string {
        auto it = doc.find(field);
        if (it == doc.end()) return std::string("missing field \"") + field + "\"";
        if (!it->is_string()) return std::string("field \"") + field + "\" is not a string";
        dst = it->get<std::string>();
        if (dst.empty()) return std::string("field \"") + field + "\" is empty";
        return "";
    };
    auto optional_text = [&](const char* field, std::string& dst) -> std::string {
        auto it = doc.find(field);
        if (it == doc.end() || it->is_null()) {
            dst.clear();
            return "";
        }
        if (!it->is_string()) return std::string("field \"") + field + "\" is not a string";
        dst = it->get<std::string>();
        return "";
    };

    for (auto err : {required("review_id", out.review_id),
                     required("accommodation_id", out.accommodation_id),
                     required("domain", out.domain)})
        if (!err.empty()) return err;
    for (auto err : {optional_text("title", out.title), optional_text("liked", out.liked),
                     optional_text("disliked", out.disliked)})
        if (!err.empty()) return err;
    return "";
}

}  // namespace

std::vector<Review> load_reviews(const std::filesystem::path& path, bool strict,
                                 IngestReport* report) {
    std::ifstream in(path);
    if (!in) throw DataError("reviews: cannot open " + path.string());

    std::vector<Review> reviews;
    std::set<std::string> seen_ids;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        Review r;
        std::string reason = parse_review_line(line, r);
        if (!reason.empty()) {
            if (strict)
                throw DataError("reviews: line " + std::to_string(line_number) + ": " + reason);
            if (report) report->skipped.push_back({line_number, reason});
            continue;
        }
        if (!seen_ids.insert(r.review_id).second)
            throw DataError("reviews: line " + std::to_string(line_number) +
                            ": duplicate review_id \"" + r.review_id + "\"");
        reviews.push_back(std::move(r));
    }
    if (report) report->loaded = reviews.size();
    return reviews;
}

std::map<std::string, std::vector<Review>> group_by_accommodation(
    const std::vector<Review>& reviews, std::string_view domain) {
    std::map<std::string, std::vector<Review>> groups;
    for (const auto& r : reviews)
        if (r.domain == domain) groups[r.accommodation_id].push_back(r);
    if (groups.empty())
        throw DataError("no reviews in domain \"" + std::string(domain) + "\"");
    return groups;
}

std::vector<std::string> list_domains(const std::vector<Review>& reviews) {
    std::set<std::string> domains;
    for (const auto& r : reviews) domains.insert(r.domain);
    return {domains.begin(), domains.end()};
}

}  // namespace disco
