#include "disco/prompt_bundle.hpp"

#include <fstream>
#include <sstream>

#include "disco/errors.hpp"
#include "disco/util.hpp"
#include "json.hpp"

namespace disco {

using OrderedJson = nlohmann::ordered_json;

std::string_view to_string(PromptVariant v) {
    switch (v) {
        case PromptVariant::disco: return "disco";
        case PromptVariant::baseline: return "baseline";
        case PromptVariant::extraction: return "extraction";
    }
    return "extraction";
}

std::optional<PromptVariant> parse_variant(std::string_view s) {
    if (s == "disco") return PromptVariant::disco;
    if (s == "baseline") return PromptVariant::baseline;
    if (s == "extraction") return PromptVariant::extraction;
    return std::nullopt;
}

std::string PromptBundle::fingerprint() const {
    std::uint64_t h = fnv1a64("prompt-bundle-v1");
    h = fnv1a64(accommodation_id, h);
    h = fnv1a64("\x1f", h);
    h = fnv1a64(to_string(variant), h);
    h = fnv1a64("\x1f", h);
    h = fnv1a64(system, h);
    h = fnv1a64("\x1f", h);
    h = fnv1a64(user, h);
    h = fnv1a64("\x1f", h);
    h = fnv1a64(std::to_string(seed), h);
    return to_hex(h);
}

void save_prompt_bundle(const PromptBundle& bundle, const std::filesystem::path& path) {
    OrderedJson doc;
    doc["accommodation_id"] = bundle.accommodation_id;
    doc["variant"] = to_string(bundle.variant);
    doc["system"] = bundle.system;
    doc["user"] = bundle.user;
    doc["seed"] = bundle.seed;
    std::ofstream out(path);
    if (!out) throw DataError("prompt bundle: cannot write " + path.string());
    out << doc.dump(2) << "\n";
}

PromptBundle load_prompt_bundle(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("prompt bundle: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    OrderedJson doc = OrderedJson::parse(buf.str(), nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        throw DataError("prompt bundle: invalid JSON in " + path.string());
    PromptBundle b;
    try {
        b.accommodation_id = doc.at("accommodation_id").get<std::string>();
        auto v = parse_variant(doc.at("variant").get<std::string>());
        if (!v) throw DataError("prompt bundle: unknown variant in " + path.string());
        b.variant = *v;
        b.system = doc.at("system").get<std::string>();
        b.user = doc.at("user").get<std::string>();
        b.seed = doc.at("seed").get<std::uint64_t>();
    } catch (const OrderedJson::exception& e) {
        throw DataError("prompt bundle: " + path.string() + ": " + e.what());
    }
    return b;
}

}  // namespace disco
