// Compares the OpenMP batch kernels against their serial reference
// implementations on synthetic per-accommodation count data, checking that
// the outputs agree bit for bit while timing both.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "disco/expectation.hpp"
#include "disco/lvs.hpp"
#include "disco/taxonomy.hpp"
#include "disco/util.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool same_profiles(const std::vector<disco::DivergenceProfile>& a,
                   const std::vector<disco::DivergenceProfile>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].total_jsd != b[i].total_jsd) return false;
        for (std::size_t j = 0; j < a[i].entries.size(); ++j)
            if (a[i].entries[j].contribution != b[i].entries[j].contribution ||
                a[i].entries[j].signed_score != b[i].entries[j].signed_score)
                return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    int accommodations = 2000;
    int repeats = 5;
    std::uint64_t seed = 1;

    CLI::App app{"benchmark: OpenMP batch kernels vs serial reference"};
    app.add_option("--accommodations", accommodations, "synthetic accommodations per run");
    app.add_option("--repeats", repeats, "timing repetitions");
    app.add_option("--seed", seed, "data generation seed");
    CLI11_PARSE(app, argc, argv);

    const disco::Taxonomy& taxonomy = disco::Taxonomy::default_taxonomy();
    auto vocab = std::make_shared<disco::FeatureVocabulary>(taxonomy);

    disco::SeededRng rng(seed);
    std::vector<std::vector<std::uint64_t>> counts(accommodations);
    std::vector<std::string> ids(accommodations);
    std::vector<std::uint64_t> pooled(vocab->size(), 0);
    for (int a = 0; a < accommodations; ++a) {
        ids[a] = "acc_" + std::to_string(a);
        counts[a].assign(vocab->size(), 0);
        // sparse profiles: roughly 40 active features each
        for (int hit = 0; hit < 40; ++hit) {
            std::size_t f = rng.below(vocab->size());
            std::uint64_t c = 1 + rng.below(50);
            counts[a][f] += c;
            pooled[f] += c;
        }
    }
    disco::DomainReference reference = disco::reference_from_counts(
        pooled, vocab, disco::kDefaultEpsilon, "bench", counts.size());

#ifdef _OPENMP
    std::cout << "OpenMP threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "built without OpenMP; both paths run serial\n";
#endif
    std::cout << "accommodations: " << accommodations << ", features: " << vocab->size()
              << ", repeats: " << repeats << "\n\n";

    auto bench = [&](const char* label, auto&& fn) {
        double best = 1e100;
        for (int r = 0; r < repeats; ++r) {
            auto start = Clock::now();
            fn();
            best = std::min(best, seconds_since(start));
        }
        std::cout << label << ": " << best * 1e3 << " ms (best of " << repeats << ")\n";
        return best;
    };

    std::vector<disco::FeatureDistribution> dists;
    double t_dist_serial = bench("distributions  serial", [&] {
        dists = disco::batch_distributions_serial(counts, vocab);
    });
    std::vector<disco::FeatureDistribution> dists_omp;
    double t_dist_omp = bench("distributions  openmp", [&] {
        dists_omp = disco::batch_distributions(counts, vocab);
    });

    std::vector<disco::DivergenceProfile> profiles_serial;
    double t_prof_serial = bench("profiles       serial", [&] {
        profiles_serial = disco::batch_profiles_serial(ids, dists, reference);
    });
    std::vector<disco::DivergenceProfile> profiles_omp;
    double t_prof_omp = bench("profiles       openmp", [&] {
        profiles_omp = disco::batch_profiles(ids, dists, reference);
    });

    bool dists_match = true;
    for (std::size_t i = 0; i < dists.size() && dists_match; ++i)
        dists_match = dists[i].probabilities == dists_omp[i].probabilities;
    bool profiles_match = same_profiles(profiles_serial, profiles_omp);

    std::cout << "\nspeedup distributions: " << t_dist_serial / t_dist_omp << "x\n";
    std::cout << "speedup profiles:      " << t_prof_serial / t_prof_omp << "x\n";
    std::cout << "outputs identical:     " << (dists_match && profiles_match ? "yes" : "NO")
              << "\n";
    return dists_match && profiles_match ? 0 : 1;
}
