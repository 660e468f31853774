#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "disco/expectation.hpp"

#include "json.hpp"

namespace disco {

// Everything a run needs, assembled from the config file and CLI flags.
// The API key is deliberately absent: it comes from DISCO_API_KEY only.
struct RunConfig {
    std::filesystem::path taxonomy_path;  // empty -> built-in taxonomy
    std::filesystem::path reviews_path;
    std::filesystem::path lexicon_path;  // keyword rules for mock extraction
    std::filesystem::path ratings_path;  // stats subcommand input
    std::string domain;                  // empty is fine for single-domain corpora
    double epsilon = kDefaultEpsilon;
    int k = 7;
    std::uint64_t seed = 0;
    std::string model = "mock";
    std::string base_url;
    nlohmann::json client_options = nlohmann::json::object();
    std::filesystem::path out_dir = "out";
    bool mock = true;
    bool leave_one_out = false;
    bool strict = false;
    int concurrency = 4;
    bool regenerate_on_warning = false;
    bool audit = false;
};

// Parses a JSON config; relative paths resolve against the file's directory.
// Unknown keys are rejected, and so is any attempt to put an API key here.
RunConfig load_config(const std::filesystem::path& path);

// Sanity checks shared by every stage (k >= 1, epsilon >= 0, paths present
// where the stage needs them). Throws ConfigError.
void validate_config(const RunConfig& config);

// Stage drivers. Each writes its artifacts under config.out_dir, appends
// human-readable progress to `log`, and throws on hard errors (the CLI maps
// exception type to exit code).
void cmd_extract(const RunConfig& config, std::ostream& log);
void cmd_analyze(const RunConfig& config, std::ostream& log);
void cmd_prompts(const RunConfig& config, std::ostream& log);
void cmd_summarize(const RunConfig& config, std::ostream& log);
void cmd_report(const RunConfig& config, std::ostream& log);
void cmd_stats(const RunConfig& config, std::ostream& log);
void cmd_all(const RunConfig& config, std::ostream& log);

// Filesystem-safe rendering of an accommodation id.
std::string sanitize_id(std::string_view id);

}  // namespace disco
