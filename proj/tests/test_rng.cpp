#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include <mpsched/rng.hpp>

using namespace mpsched;

TEST_CASE("engine matches the standard mt19937_64 stream", "[rng]") {
    // The C++ standard pins the 10000th output of a default-seeded (5489)
    // mt19937_64 engine; this locks our stream to it across platforms.
    Rng rng(5489u);
    std::uint64_t last = 0;
    for (int i = 0; i < 10000; ++i) last = rng.next_u64();
    REQUIRE(last == 9981545732273789042ULL);
}

TEST_CASE("same seed, same sequence", "[rng]") {
    Rng a(1234), b(1234);
    for (int i = 0; i < 100; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("below stays in range and covers it", "[rng]") {
    Rng rng(7);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        const std::uint64_t v = rng.below(13);
        REQUIRE(v < 13);
        seen.insert(v);
    }
    REQUIRE(seen.size() == 13);
    REQUIRE(rng.below(1) == 0);
}

TEST_CASE("uniform_int respects bounds", "[rng]") {
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        const int v = rng.uniform_int(3, 6);
        REQUIRE(v >= 3);
        REQUIRE(v <= 6);
    }
    REQUIRE(rng.uniform_int(5, 5) == 5);
}

TEST_CASE("unit lies in [0, 1)", "[rng]") {
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.unit();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("bernoulli extremes are certain", "[rng]") {
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        REQUIRE_FALSE(rng.bernoulli(0.0));
        REQUIRE(rng.bernoulli(1.0));
    }
}

TEST_CASE("bernoulli tracks its probability", "[rng]") {
    Rng rng(17);
    int hits = 0;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
        if (rng.bernoulli(0.8)) ++hits;
    }
    // 3 sigma around 0.8 with n=10000: +/- 0.012.
    REQUIRE(hits > trials * (0.8 - 0.013));
    REQUIRE(hits < trials * (0.8 + 0.013));
}

TEST_CASE("shuffle permutes without loss", "[rng]") {
    Rng rng(23);
    std::vector<int> v(50);
    for (int i = 0; i < 50; ++i) v[static_cast<std::size_t>(i)] = i;
    auto shuffled = v;
    rng.shuffle(shuffled);
    auto sorted = shuffled;
    std::sort(sorted.begin(), sorted.end());
    REQUIRE(sorted == v);
}

TEST_CASE("derive_seed separates tag streams", "[rng]") {
    const std::uint64_t a = derive_seed(1, {8, 2, 0});
    const std::uint64_t b = derive_seed(1, {8, 2, 1});
    const std::uint64_t c = derive_seed(2, {8, 2, 0});
    REQUIRE(a != b);
    REQUIRE(a != c);
    // Stable: same inputs, same derived seed.
    REQUIRE(a == derive_seed(1, {8, 2, 0}));
}
