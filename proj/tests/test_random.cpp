#include "cmarket/random.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

using cmarket::RandomStream;

TEST_CASE("random: same seed, same sequence") {
    RandomStream a(42), b(42), c(43);
    bool any_diff = false;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.next_u64();
        CHECK(x == b.next_u64());
        any_diff |= x != c.next_u64();
    }
    CHECK(any_diff);
}

TEST_CASE("random: xoshiro256** reference output") {
    // Seed 0 expands through SplitMix64 to e220a8397b1dcdaf 6e789e6aa1b965f4
    // 06c45d188009454f f88bb8a8724c81ec; outputs computed by a separate transcription.
    RandomStream r(0);
    CHECK(r.next_u64() == 0x99ec5f36cb75f2b4ULL);
    CHECK(r.next_u64() == 0xbf6e1f784956452aULL);
    CHECK(r.next_u64() == 0x1a5f849d4933e6e0ULL);
}

TEST_CASE("random: uniform_index stays in range and hits every value") {
    RandomStream r(7);
    for (std::uint64_t n : {1ULL, 2ULL, 3ULL, 10ULL, 1000ULL}) {
        std::set<std::uint64_t> seen;
        for (int i = 0; i < 20000; ++i) {
            const auto v = r.uniform_index(n);
            REQUIRE(v < n);
            seen.insert(v);
        }
        CHECK(seen.size() == n);
    }
    CHECK_THROWS_AS(r.uniform_index(0), std::invalid_argument);
}

TEST_CASE("random: uniform01 in [0,1) with mean 1/2") {
    RandomStream r(3);
    double sum = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    // 3 standard errors of the mean of U(0,1): 3 * sqrt(1/12 / n)
    CHECK(std::fabs(sum / n - 0.5) < 3 * std::sqrt(1.0 / 12.0 / n));
}

TEST_CASE("random: substreams are distinct and reproducible") {
    using cmarket::Substream;
    const auto run_seed = cmarket::derive_run_seed(42, 0);
    CHECK(run_seed == cmarket::derive_run_seed(42, 0));
    CHECK(run_seed != cmarket::derive_run_seed(42, 1));
    CHECK(run_seed != cmarket::derive_run_seed(43, 0));
    const auto t = cmarket::derive_substream_seed(run_seed, Substream::Topology);
    const auto p = cmarket::derive_substream_seed(run_seed, Substream::Preferences);
    const auto k = cmarket::derive_substream_seed(run_seed, Substream::Ties);
    CHECK(t != p);
    CHECK(p != k);
    CHECK(t != k);
}
