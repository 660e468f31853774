#include "disco/ratings.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "disco/errors.hpp"
#include "disco/util.hpp"

namespace disco {

using OrderedJson = nlohmann::ordered_json;

namespace {

const char* const kDimensions[] = {"relevance", "detail", "helpfulness", "decision_support",
                                   "ease"};

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    fields.push_back(field);
    return fields;
}

bool parse_score(const std::string& text, int& out) {
    if (text.empty()) return false;
    for (char c : text)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    out = std::stoi(text);
    return out >= 1 && out <= 5;
}

bool parse_bool(const std::string& text, bool& out) {
    std::string t = lower_ascii(text);
    if (t == "true" || t == "1") {
        out = true;
        return true;
    }
    if (t == "false" || t == "0") {
        out = false;
        return true;
    }
    return false;
}

int score_of(const RatingsRecord& r, const std::string& dimension) {
    if (dimension == "relevance") return r.relevance;
    if (dimension == "detail") return r.detail;
    if (dimension == "helpfulness") return r.helpfulness;
    if (dimension == "decision_support") return r.decision_support;
    return r.ease;
}

}  // namespace

std::vector<RatingsRecord> load_ratings_csv(const std::filesystem::path& path,
                                            std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw DataError("ratings: cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw DataError("ratings: empty file " + path.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kRatingsHeader)
        throw DataError("ratings: unexpected header, want \"" + std::string(kRatingsHeader) +
                        "\"");

    std::vector<RatingsRecord> records;
    std::size_t line_number = 1;
    auto warn = [&](const std::string& why) {
        if (warnings)
            warnings->push_back("ratings line " + std::to_string(line_number) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 10) {
            warn("expected 10 fields, got " + std::to_string(fields.size()));
            continue;
        }
        RatingsRecord r;
        r.participant_id = fields[0];
        r.domain = fields[1];
        r.accommodation_id = fields[2];
        if (r.participant_id.empty() || r.domain.empty() || r.accommodation_id.empty()) {
            warn("empty identifier field");
            continue;
        }
        auto variant = parse_variant(fields[3]);
        if (!variant || *variant == PromptVariant::extraction) {
            warn("variant must be baseline or disco");
            continue;
        }
        r.variant = *variant;
        if (!parse_score(fields[4], r.relevance) || !parse_score(fields[5], r.detail) ||
            !parse_score(fields[6], r.helpfulness) ||
            !parse_score(fields[7], r.decision_support) || !parse_score(fields[8], r.ease)) {
            warn("scores must be integers in [1,5]");
            continue;
        }
        if (!parse_bool(fields[9], r.preferred)) {
            warn("preferred must be true/false");
            continue;
        }
        records.push_back(std::move(r));
    }
    return records;
}

RatingsReport analyze_ratings(const std::filesystem::path& path) {
    RatingsReport report;
    auto records = load_ratings_csv(path, &report.warnings);

    // Pair rows by (participant, accommodation): exactly one baseline and one
    // disco row, exactly one of them preferred. Anything else is excluded.
    struct Pair {
        const RatingsRecord* baseline = nullptr;
        const RatingsRecord* disco = nullptr;
        std::string domain;
    };
    std::map<std::pair<std::string, std::string>, Pair> pairs;
    std::set<std::pair<std::string, std::string>> broken;
    for (const auto& r : records) {
        auto key = std::make_pair(r.participant_id, r.accommodation_id);
        Pair& p = pairs[key];
        auto& slot = r.variant == PromptVariant::baseline ? p.baseline : p.disco;
        if (slot) {
            broken.insert(key);
            continue;
        }
        slot = &r;
        p.domain = r.domain;
    }

    std::vector<const Pair*> usable;
    for (auto& [key, p] : pairs) {
        if (broken.count(key)) {
            report.warnings.push_back("pair (" + key.first + ", " + key.second +
                                      "): duplicate variant rows, excluded");
            continue;
        }
        if (!p.baseline || !p.disco) {
            report.warnings.push_back("pair (" + key.first + ", " + key.second +
                                      "): missing one variant, excluded");
            continue;
        }
        if (p.baseline->domain != p.disco->domain) {
            report.warnings.push_back("pair (" + key.first + ", " + key.second +
                                      "): domain mismatch, excluded");
            continue;
        }
        if (p.baseline->preferred == p.disco->preferred) {
            report.warnings.push_back("pair (" + key.first + ", " + key.second +
                                      "): preference flags not exclusive, excluded");
            continue;
        }
        usable.push_back(&p);
    }
    if (usable.empty()) throw DataError("ratings: no usable pairs in " + path.string());
    report.pairs_total = usable.size();

    std::set<std::string> domain_set;
    for (const Pair* p : usable) domain_set.insert(p->domain);
    report.domains.assign(domain_set.begin(), domain_set.end());

    auto analyze_scope = [&](const std::string& scope,
                             const std::vector<const Pair*>& scoped) {
        std::vector<DimensionStats> rows;
        for (const char* dim : kDimensions) {
            DimensionStats ds;
            ds.dimension = dim;
            std::vector<double> x, y;
            x.reserve(scoped.size());
            y.reserve(scoped.size());
            for (const Pair* p : scoped) {
                x.push_back(score_of(*p->baseline, dim));
                y.push_back(score_of(*p->disco, dim));
            }
            double sx = 0, sy = 0;
            for (double v : x) sx += v;
            for (double v : y) sy += v;
            ds.baseline_mean = sx / static_cast<double>(x.size());
            ds.disco_mean = sy / static_cast<double>(y.size());
            try {
                ds.t = stats::paired_t_test(x, y);
                if (std::isfinite(ds.t.effect_size)) {
                    ds.has_dz = true;
                    ds.d_z = ds.t.effect_size;
                }
            } catch (const DataError&) {
                ds.degenerate = true;  // identical ratings on this dimension
            }
            try {
                ds.d_pooled = stats::cohens_d(x, y, stats::DVariant::pooled);
                ds.has_d_pooled = true;
            } catch (const DataError&) {
                ds.has_d_pooled = false;
            }
            rows.push_back(std::move(ds));
        }
        report.scopes.emplace(scope, std::move(rows));
    };

    std::vector<std::vector<double>> preference_table(2);  // row 0 baseline, row 1 disco
    for (const auto& domain : report.domains) {
        std::vector<const Pair*> scoped;
        for (const Pair* p : usable)
            if (p->domain == domain) scoped.push_back(p);
        analyze_scope(domain, scoped);

        PreferenceStats pref;
        pref.domain = domain;
        pref.pairs = scoped.size();
        for (const Pair* p : scoped)
            if (p->disco->preferred) ++pref.disco_preferred;
        pref.p_value =
            stats::exact_binomial_test(pref.disco_preferred, pref.pairs).p_value;
        preference_table[0].push_back(
            static_cast<double>(pref.pairs - pref.disco_preferred));
        preference_table[1].push_back(static_cast<double>(pref.disco_preferred));
        report.preferences.push_back(pref);
    }
    analyze_scope("all", usable);

    PreferenceStats overall;
    overall.domain = "all";
    for (const auto& pref : report.preferences) {
        overall.pairs += pref.pairs;
        overall.disco_preferred += pref.disco_preferred;
    }
    overall.p_value =
        stats::exact_binomial_test(overall.disco_preferred, overall.pairs).p_value;
    report.preferences.push_back(overall);

    if (report.domains.size() >= 2) {
        try {
            report.chi_square = stats::chi_square_independence(preference_table);
            report.has_chi_square = true;
        } catch (const DataError& e) {
            report.warnings.push_back(std::string("chi-square skipped: ") + e.what());
        }
    }
    return report;
}

std::string significance_stars(double p) {
    if (p < 0.001) return "***";
    if (p < 0.01) return "**";
    if (p < 0.05) return "*";
    return "";
}

namespace {

std::string fixed(double v, int places) {
    if (std::isnan(v)) return "n/a";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(places);
    os << v;
    return os.str();
}

std::string pretty_dimension(const std::string& d) {
    if (d == "relevance") return "Relevance";
    if (d == "detail") return "Detail";
    if (d == "helpfulness") return "Helpfulness";
    if (d == "decision_support") return "Decision support";
    return "Ease of use";
}

std::string pretty_scope(const std::string& s) {
    if (s == "all") return "All domains";
    std::string out = s;
    if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    return out;
}

void render_scope_table(std::ostringstream& md, const std::string& scope,
                        const std::vector<DimensionStats>& rows) {
    md << "## Ratings: " << pretty_scope(scope) << "\n\n";
    md << "| Dimension | Baseline M | DiSCo M | t | p | d (pooled) | d_z |\n";
    md << "|---|---|---|---|---|---|---|\n";
    for (const auto& r : rows) {
        md << "| " << pretty_dimension(r.dimension) << " | " << fixed(r.baseline_mean, 2)
           << " | " << fixed(r.disco_mean, 2) << " | ";
        if (r.degenerate) {
            md << "n/a | n/a | ";
        } else {
            md << fixed(r.t.statistic, 2) << " | " << fixed(r.t.p_value, 4)
               << significance_stars(r.t.p_value) << " | ";
        }
        md << (r.has_d_pooled ? fixed(r.d_pooled, 2) : "n/a") << " | "
           << (r.has_dz ? fixed(r.d_z, 2) : "n/a") << " |\n";
    }
    md << "\n";
}

}  // namespace

std::string render_markdown(const RatingsReport& report) {
    std::ostringstream md;
    md << "# Summary ratings analysis\n\n";
    md << "Paired comparison of baseline and DiSCo summaries over "
       << report.pairs_total << " (participant, accommodation) pairs.\n\n";

    for (const auto& domain : report.domains)
        render_scope_table(md, domain, report.scopes.at(domain));
    render_scope_table(md, "all", report.scopes.at("all"));

    md << "## Preference (A/B choice)\n\n";
    md << "| Domain | Pairs | DiSCo preferred | Share | Binomial p |\n";
    md << "|---|---|---|---|---|\n";
    for (const auto& pref : report.preferences) {
        double share = pref.pairs == 0
                           ? 0.0
                           : static_cast<double>(pref.disco_preferred) /
                                 static_cast<double>(pref.pairs);
        md << "| " << pretty_scope(pref.domain) << " | " << pref.pairs << " | "
           << pref.disco_preferred << " | " << fixed(100.0 * share, 1) << "% | "
           << fixed(pref.p_value, 4) << significance_stars(pref.p_value) << " |\n";
    }
    md << "\n";
    if (report.has_chi_square) {
        md << "Preference x domain independence: chi-square("
           << fixed(report.chi_square.df, 0) << ") = " << fixed(report.chi_square.statistic, 2)
           << ", p = " << fixed(report.chi_square.p_value, 4)
           << significance_stars(report.chi_square.p_value) << ".\n\n";
    }
    if (!report.warnings.empty()) {
        md << "## Warnings\n\n";
        for (const auto& w : report.warnings) md << "- " << w << "\n";
        md << "\n";
    }
    return md.str();
}

nlohmann::ordered_json report_to_json(const RatingsReport& report) {
    OrderedJson doc;
    doc["pairs_total"] = report.pairs_total;
    doc["domains"] = report.domains;

    OrderedJson scopes = OrderedJson::object();
    auto scope_json = [](const std::vector<DimensionStats>& rows) {
        OrderedJson out = OrderedJson::array();
        for (const auto& r : rows) {
            OrderedJson row;
            row["dimension"] = r.dimension;
            row["baseline_mean"] = r.baseline_mean;
            row["disco_mean"] = r.disco_mean;
            if (r.degenerate) {
                row["t"] = nullptr;
                row["p"] = nullptr;
            } else if (std::isinf(r.t.statistic)) {
                row["t"] = nullptr;  // JSON has no infinity; p carries the verdict
                row["p"] = r.t.p_value;
            } else {
                row["t"] = r.t.statistic;
                row["p"] = r.t.p_value;
            }
            row["df"] = r.degenerate ? OrderedJson(nullptr) : OrderedJson(r.t.df);
            row["d_pooled"] = r.has_d_pooled ? OrderedJson(r.d_pooled) : OrderedJson(nullptr);
            row["d_z"] = r.has_dz ? OrderedJson(r.d_z) : OrderedJson(nullptr);
            out.push_back(std::move(row));
        }
        return out;
    };
    for (const auto& [scope, rows] : report.scopes) scopes[scope] = scope_json(rows);
    doc["scopes"] = std::move(scopes);

    OrderedJson prefs = OrderedJson::array();
    for (const auto& pref : report.preferences) {
        OrderedJson row;
        row["domain"] = pref.domain;
        row["pairs"] = pref.pairs;
        row["disco_preferred"] = pref.disco_preferred;
        row["p"] = pref.p_value;
        prefs.push_back(std::move(row));
    }
    doc["preference"] = std::move(prefs);

    if (report.has_chi_square) {
        OrderedJson chi;
        chi["statistic"] = report.chi_square.statistic;
        chi["df"] = report.chi_square.df;
        chi["p"] = report.chi_square.p_value;
        doc["chi_square"] = std::move(chi);
    } else {
        doc["chi_square"] = nullptr;
    }
    doc["warnings"] = report.warnings;
    return doc;
}

}  // namespace disco
