#include "cmarket/preferences.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace cmarket;

TEST_CASE("sigma = 0 gives an all-zero matrix and zero quality") {
    RandomStream rng(1);
    const auto p = sample_preferences(7, 5, 0.0, rng);
    for (double v : p.values()) CHECK(v == 0.0);
    for (double q : quality(p)) CHECK(q == 0.0);
}

TEST_CASE("standard normal sampling moments") {
    RandomStream rng(12345);
    const std::size_t n = 10000;
    const auto p = sample_preferences(n, 1, 1.0, rng);
    double sum = 0, sq = 0;
    for (double v : p.values()) sum += v;
    const double mean = sum / n;
    for (double v : p.values()) sq += (v - mean) * (v - mean);
    const double sd = std::sqrt(sq / (n - 1));
    // 3 standard errors: 3/sqrt(n) = 0.03 for the mean, ~3/sqrt(2n) ~ 0.021 for the sd
    CHECK(std::fabs(mean) <= 0.03);
    CHECK(sd >= 0.97);
    CHECK(sd <= 1.03);
}

TEST_CASE("sampling is reproducible per seed and scales with sigma") {
    RandomStream a(9), b(9), c(9);
    const auto p1 = sample_preferences(20, 30, 1.0, a);
    const auto p2 = sample_preferences(20, 30, 1.0, b);
    const auto p3 = sample_preferences(20, 30, 2.5, c);
    CHECK(p1 == p2);
    for (std::size_t k = 0; k < p1.values().size(); ++k) CHECK(p3.values()[k] == 2.5 * p1.values()[k]);
}

TEST_CASE("quality is the column mean") {
    const auto p = testing::matrix({{1.0, 5.0}, {2.0, -1.0}, {3.0, 2.0}});
    const auto q = quality(p);
    CHECK(q[0] == 2.0);
    CHECK(q[1] == 2.0);
}

TEST_CASE("quality agrees with a naive column mean and shifts linearly") {
    RandomStream rng(31);
    const auto p = sample_preferences(37, 13, 1.7, rng);
    const auto q = quality(p);
    std::vector<double> shifted(p.values().begin(), p.values().end());
    for (auto& v : shifted) v += 0.75;
    const auto qs = quality(PreferenceMatrix(37, 13, shifted));
    for (std::size_t a = 0; a < 13; ++a) {
        double s = 0;
        for (std::size_t i = 0; i < 37; ++i) s += p.at(AgentId{i}, ItemId{a});
        CHECK(q[a] == doctest::Approx(s / 37).epsilon(1e-12));
        CHECK(qs[a] == doctest::Approx(q[a] + 0.75).epsilon(1e-12));
    }
}

TEST_CASE("quality spread follows sigma / sqrt(N)") {
    // N = 100, sigma = 1: std of item quality ~ 0.1
    RandomStream rng(8);
    std::vector<double> qs;
    for (int rep = 0; rep < 200; ++rep) {
        const auto q = quality(sample_preferences(100, 50, 1.0, rng));
        qs.insert(qs.end(), q.begin(), q.end());
    }
    double sum = 0, sq = 0;
    for (double v : qs) sum += v;
    const double mean = sum / qs.size();
    for (double v : qs) sq += (v - mean) * (v - mean);
    CHECK(std::sqrt(sq / (qs.size() - 1)) == doctest::Approx(0.1).epsilon(0.05));

    // Kolmogorov-Smirnov distance to Normal(0, 0.01); critical value at alpha = 0.001 is 1.95 / sqrt(n).
    std::sort(qs.begin(), qs.end());
    double ks = 0;
    const double n = static_cast<double>(qs.size());
    for (std::size_t k = 0; k < qs.size(); ++k) {
        const double cdf = 0.5 * std::erfc(-qs[k] / (0.1 * std::sqrt(2.0)));
        ks = std::max({ks, std::fabs(cdf - k / n), std::fabs(cdf - (k + 1) / n)});
    }
    CHECK(ks < 1.95 / std::sqrt(n));
}

TEST_CASE("preference CSV round trip and error handling") {
    RandomStream rng(4);
    const auto p = sample_preferences(6, 4, 1.0, rng);
    std::stringstream io;
    write_preferences_csv(io, p);
    CHECK(read_preferences_csv(io) == p);

    std::istringstream ragged("1,2,3\n4,5\n");
    CHECK_THROWS_AS(read_preferences_csv(ragged), ConfigError);
    std::istringstream junk("1,abc\n");
    CHECK_THROWS_AS(read_preferences_csv(junk), ConfigError);
    std::istringstream empty("");
    CHECK_THROWS_AS(read_preferences_csv(empty), ConfigError);
    std::istringstream crlf("1.5,2\r\n-3,4e-1\r\n");
    const auto q = read_preferences_csv(crlf);
    CHECK(q.n_agents() == 2);
    CHECK(q.at(AgentId{1}, ItemId{1}) == 0.4);
}

TEST_CASE("preference matrix rejects bad shapes and non-finite values") {
    CHECK_THROWS_AS(PreferenceMatrix(2, 2, {1.0, 2.0, 3.0}), ConfigError);
    CHECK_THROWS_AS(PreferenceMatrix(1, 2, {1.0, std::nan("")}), ConfigError);
    CHECK_THROWS_AS(PreferenceMatrix(0, 2, {}), ConfigError);
}
