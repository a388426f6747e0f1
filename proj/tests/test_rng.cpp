#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>

#include "lse/rng.hpp"

using namespace lse;

TEST_CASE("splitmix64 matches the published reference stream", "[rng]") {
    // Reference outputs of the standard SplitMix64 algorithm.
    SplitMix64 zero(0);
    CHECK(zero.next() == 0xe220a8397b1dcdafULL);
    CHECK(zero.next() == 0x6e789e6aa1b965f4ULL);
    CHECK(zero.next() == 0x06c45d188009454fULL);
    CHECK(zero.next() == 0xf88bb8a8724c81ecULL);

    SplitMix64 forty_two(42);
    CHECK(forty_two.next() == 0xbdd732262feb6e95ULL);
    CHECK(forty_two.next() == 0x28efe333b266f103ULL);

    SplitMix64 big(0x123456789abcdefULL);
    CHECK(big.next() == 0x157a3807a48faa9dULL);
    CHECK(big.next() == 0xd573529b34a1d093ULL);
    CHECK(big.next() == 0x2f90b72e996dccbeULL);
    CHECK(big.next() == 0xa2d419334c4667ecULL);
}

TEST_CASE("fnv1a64 matches reference digests", "[rng]") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("proposed") == 0xf0ba4eecac6bc983ULL);
    CHECK(fnv1a64("music") == 0xdce38b3f97588af4ULL);
}

TEST_CASE("next_double lands in (0, 1]", "[rng]") {
    SplitMix64 rng(7);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.next_double();
        REQUIRE(u > 0.0);
        REQUIRE(u <= 1.0);
    }
}

TEST_CASE("gaussian draws have the right first two moments", "[rng]") {
    SplitMix64 rng(11);
    const int n = 200000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.next_gaussian();
        sum += x;
        sum_sq += x * x;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(std::abs(sum_sq / n - 1.0) < 0.02);
}

TEST_CASE("complex gaussian splits the variance across parts", "[rng]") {
    SplitMix64 rng(13);
    const int n = 200000;
    const double variance = 2.5;
    double power = 0.0;
    double re = 0.0;
    double im = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto z = rng.next_complex_gaussian(variance);
        power += std::norm(z);
        re += z.real();
        im += z.imag();
    }
    CHECK(std::abs(power / n - variance) < 0.05);
    CHECK(std::abs(re / n) < 0.02);
    CHECK(std::abs(im / n) < 0.02);

    SECTION("zero variance gives exact zeros") {
        CHECK(rng.next_complex_gaussian(0.0) == std::complex<double>{0.0, 0.0});
    }
}

TEST_CASE("seeded streams replay exactly", "[rng]") {
    SplitMix64 a(321);
    SplitMix64 b(321);
    for (int i = 0; i < 64; ++i) REQUIRE(a.next() == b.next());
    for (int i = 0; i < 64; ++i) REQUIRE(a.next_gaussian() == b.next_gaussian());
}

TEST_CASE("trial seeds are pure and method-independent", "[rng]") {
    const std::uint64_t s1 = trial_seed(99, "proposed", 20.0, 5);
    CHECK(s1 == trial_seed(99, "proposed", 20.0, 5));

    // Distinct coordinates produce distinct seeds.
    std::set<std::uint64_t> seen;
    for (const char* method : {"proposed", "music", "random-cs", "spectrum"}) {
        for (const double snr : {10.0, 20.0}) {
            for (std::uint64_t trial = 0; trial < 4; ++trial) {
                seen.insert(trial_seed(99, method, snr, trial));
            }
        }
    }
    CHECK(seen.size() == 4 * 2 * 4);

    // A method's stream never depends on which other methods run.
    CHECK(trial_seed(99, "music", 15.0, 2) == trial_seed(99, "music", 15.0, 2));
    CHECK(trial_seed(99, "proposed", 15.0, 2) != trial_seed(99, "music", 15.0, 2));
}

TEST_CASE("sample_distinct draws sorted distinct in-range values", "[rng]") {
    SplitMix64 rng(5);
    for (int round = 0; round < 200; ++round) {
        const std::vector<int> subset = sample_distinct(rng, 50, 7);
        REQUIRE(subset.size() == 7);
        REQUIRE(std::is_sorted(subset.begin(), subset.end()));
        for (std::size_t i = 1; i < subset.size(); ++i) REQUIRE(subset[i] != subset[i - 1]);
        REQUIRE(subset.front() >= 0);
        REQUIRE(subset.back() < 50);
    }

    SECTION("k = n returns every value") {
        const std::vector<int> all = sample_distinct(rng, 6, 6);
        CHECK(all == std::vector<int>{0, 1, 2, 3, 4, 5});
    }
    SECTION("k = 0 returns nothing") {
        CHECK(sample_distinct(rng, 6, 0).empty());
    }
    SECTION("k > n is rejected") {
        CHECK_THROWS_AS(sample_distinct(rng, 3, 4), std::invalid_argument);
    }
    SECTION("every element appears with roughly equal frequency") {
        std::vector<int> hits(10, 0);
        const int rounds = 20000;
        for (int round = 0; round < rounds; ++round) {
            for (const int v : sample_distinct(rng, 10, 3)) ++hits[static_cast<std::size_t>(v)];
        }
        for (const int h : hits) {
            CHECK(std::abs(h - rounds * 3 / 10) < rounds / 20);
        }
    }
}

TEST_CASE("mix_seed separates nearby ingredients", "[rng]") {
    std::set<std::uint64_t> seeds;
    for (std::uint64_t i = 0; i < 1000; ++i) seeds.insert(mix_seed(1, i));
    CHECK(seeds.size() == 1000);
}
