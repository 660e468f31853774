#include "disco/util.hpp"

#include <set>

#include "doctest.h"

using namespace disco;

TEST_CASE("fnv1a64 matches published test vectors") {
    // Reference values for the 64-bit FNV-1a parameters.
    CHECK(fnv1a64("") == 14695981039346656037ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("to_hex pads to sixteen digits") {
    CHECK(to_hex(0) == "0000000000000000");
    CHECK(to_hex(0xdeadbeefull) == "00000000deadbeef");
    CHECK(to_hex(~0ull) == "ffffffffffffffff");
}

TEST_CASE("derive_seed separates labels and parents") {
    const auto a = derive_seed(7, "alpha");
    const auto b = derive_seed(7, "beta");
    const auto c = derive_seed(8, "alpha");
    CHECK(a != b);
    CHECK(a != c);
    CHECK(derive_seed(7, "alpha") == a);
}

TEST_CASE("SeededRng::below is deterministic and in range") {
    SeededRng one(42), two(42);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        const auto v = one.below(13);
        CHECK(v == two.below(13));
        CHECK(v < 13);
        seen.insert(v);
    }
    CHECK(seen.size() == 13);  // all residues reached
    CHECK(SeededRng(1).below(1) == 0);
}

TEST_CASE("format_double round-trips exactly") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-2.5e-9) == "-2.5e-09");
    const double v = 0.1 + 0.2;
    CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("split_sentences handles terminators and blanks") {
    const auto parts = split_sentences("Great pool! Bad wifi. \n\nQuiet nights; friendly staff?");
    REQUIRE(parts.size() == 4);
    CHECK(parts[0] == "Great pool");
    CHECK(parts[1] == "Bad wifi");
    CHECK(parts[2] == "Quiet nights");
    CHECK(parts[3] == "friendly staff");
    CHECK(split_sentences("   ").empty());
}

TEST_CASE("word counting and the multiword rule") {
    CHECK(count_words("spotless room near the beach") == 5);
    CHECK(count_words("  beach  ") == 1);
    CHECK(count_words("") == 0);
    CHECK(is_multiword("clean room"));
    CHECK_FALSE(is_multiword("clean"));
    CHECK_FALSE(is_multiword("   "));
}

TEST_CASE("contains_word respects boundaries and case") {
    CHECK(contains_word("The BEACH was close", "beach"));
    CHECK(contains_word("beach.", "beach"));
    CHECK_FALSE(contains_word("beachfront property", "beach"));
    CHECK_FALSE(contains_word("such", "u"));
    CHECK(contains_word("ski lift was slow", "ski lift"));
}

TEST_CASE("utc_timestamp shape") {
    const auto ts = utc_timestamp();
    REQUIRE(ts.size() == 20);
    CHECK(ts[4] == '-');
    CHECK(ts[10] == 'T');
    CHECK(ts[19] == 'Z');
}
