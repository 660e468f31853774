// disco: expectation-based review summarization pipeline.
//
// Stages are separate subcommands chained through files in the output
// directory, so each one can be cached, inspected, and re-run on its own.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "disco/errors.hpp"
#include "disco/pipeline.hpp"

namespace {

struct CliArgs {
    std::string config;
    std::string taxonomy, reviews, lexicon, ratings, out;
    std::string domain, model, base_url;
    double epsilon = 0;
    int k = 0;
    std::uint64_t seed = 0;
    int concurrency = 0;
    bool mock = false, live = false, leave_one_out = false, strict = false;
    bool regenerate_on_warning = false, audit = false;
};

// Shared flag set; every subcommand accepts the same knobs and ignores the
// ones it does not use.
void add_common_options(CLI::App* cmd, CliArgs& args) {
    cmd->add_option("--config", args.config, "JSON config file; flags override its values");
    cmd->add_option("--taxonomy", args.taxonomy, "taxonomy JSON (default: built-in)");
    cmd->add_option("--reviews", args.reviews, "review corpus JSONL");
    cmd->add_option("--lexicon", args.lexicon, "keyword lexicon for mock extraction");
    cmd->add_option("--ratings", args.ratings, "ratings CSV for the stats stage");
    cmd->add_option("--out", args.out, "output directory (default: out)");
    cmd->add_option("--domain", args.domain, "domain to analyze");
    cmd->add_option("--model", args.model, "model label for the live client");
    cmd->add_option("--base-url", args.base_url, "chat endpoint base URL");
    cmd->add_option("--epsilon", args.epsilon, "reference smoothing pseudo-count");
    cmd->add_option("--k", args.k, "topics per selection list (default 7)");
    cmd->add_option("--seed", args.seed, "run seed for all sampling");
    cmd->add_option("--concurrency", args.concurrency, "max concurrent client calls");
    cmd->add_flag("--mock", args.mock, "offline mode: fixture extraction, mock summarizer");
    cmd->add_flag("--live", args.live, "force live client mode");
    cmd->add_flag("--leave-one-out", args.leave_one_out,
                  "exclude each accommodation from its own reference");
    cmd->add_flag("--strict", args.strict, "fail on the first malformed review line");
    cmd->add_flag("--regenerate-on-warning", args.regenerate_on_warning,
                  "retry generation once when validation flags a summary");
    cmd->add_flag("--audit", args.audit, "write prompt/summary pairs for manual review");
}

disco::RunConfig assemble_config(const CLI::App* cmd, const CliArgs& args) {
    disco::RunConfig config;
    if (!args.config.empty()) config = disco::load_config(args.config);

    auto given = [&](const char* name) { return cmd->count(name) > 0; };
    if (given("--taxonomy")) config.taxonomy_path = args.taxonomy;
    if (given("--reviews")) config.reviews_path = args.reviews;
    if (given("--lexicon")) config.lexicon_path = args.lexicon;
    if (given("--ratings")) config.ratings_path = args.ratings;
    if (given("--out")) config.out_dir = args.out;
    if (given("--domain")) config.domain = args.domain;
    if (given("--model")) config.model = args.model;
    if (given("--base-url")) config.base_url = args.base_url;
    if (given("--epsilon")) config.epsilon = args.epsilon;
    if (given("--k")) config.k = args.k;
    if (given("--seed")) config.seed = args.seed;
    if (given("--concurrency")) config.concurrency = args.concurrency;
    if (given("--mock")) config.mock = true;
    if (given("--live")) config.mock = false;
    if (given("--leave-one-out")) config.leave_one_out = true;
    if (given("--strict")) config.strict = true;
    if (given("--regenerate-on-warning")) config.regenerate_on_warning = true;
    if (given("--audit")) config.audit = true;
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"expectation-based review summarization pipeline"};
    app.require_subcommand(1);

    CliArgs args;
    using Stage = void (*)(const disco::RunConfig&, std::ostream&);
    struct Sub {
        const char* name;
        const char* help;
        Stage stage;
        CLI::App* cmd = nullptr;
    };
    Sub subs[] = {
        {"extract", "extract aspect mentions from reviews", disco::cmd_extract},
        {"analyze", "build the domain reference and divergence profiles", disco::cmd_analyze},
        {"prompts", "assemble disco and baseline prompt bundles", disco::cmd_prompts},
        {"summarize", "generate summaries from prompt bundles", disco::cmd_summarize},
        {"report", "render the run report", disco::cmd_report},
        {"stats", "analyze a ratings CSV", disco::cmd_stats},
        {"all", "run every stage in order", disco::cmd_all},
    };
    for (auto& sub : subs) {
        sub.cmd = app.add_subcommand(sub.name, sub.help);
        add_common_options(sub.cmd, args);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // fold CLI11's parse-error codes into "usage error"
    }

    for (const auto& sub : subs) {
        if (!sub.cmd->parsed()) continue;
        try {
            disco::RunConfig config = assemble_config(sub.cmd, args);
            sub.stage(config, std::cout);
            return 0;
        } catch (const disco::ConfigError& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return 1;
        } catch (const disco::ClientError& e) {
            std::cerr << "client error: " << e.what() << "\n";
            return 3;
        } catch (const disco::DataError& e) {
            std::cerr << "data error: " << e.what() << "\n";
            return 2;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }
    return 1;
}
