#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace disco {

enum class PromptVariant : std::uint8_t { disco = 0, baseline = 1, extraction = 2 };

std::string_view to_string(PromptVariant v);
std::optional<PromptVariant> parse_variant(std::string_view s);

// A fully assembled prompt, ready to send. Serialized per accommodation so a
// run's inputs can be inspected and replayed.
struct PromptBundle {
    std::string accommodation_id;
    PromptVariant variant = PromptVariant::extraction;
    std::string system;
    std::string user;
    std::uint64_t seed = 0;

    // Stable hash over every field; summaries carry it so an output can be
    // traced back to the exact prompt that produced it.
    std::string fingerprint() const;

    friend bool operator==(const PromptBundle&, const PromptBundle&) = default;
};

void save_prompt_bundle(const PromptBundle& bundle, const std::filesystem::path& path);
PromptBundle load_prompt_bundle(const std::filesystem::path& path);

}  // namespace disco
