#include "cmarket/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cmarket {

std::vector<double> market_shares(const MarketState& state) {
    const double n = static_cast<double>(state.n_agents());
    std::vector<double> shares;
    shares.reserve(state.n_items());
    for (auto c : state.item_counts()) shares.push_back(static_cast<double>(c) / n);
    return shares;
}

double gini_inequality(std::span<const double> shares) {
    if (shares.empty()) throw std::invalid_argument("gini_inequality: no items");
    for (double d : shares)
        if (!(d >= 0.0) || !std::isfinite(d))
            throw std::invalid_argument("gini_inequality: shares must be finite and non-negative");

    std::vector<double> sorted(shares.begin(), shares.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m = sorted.size();

    double total = 0.0;
    for (double d : sorted) total += d;
    if (total == 0.0) return 0.0;

    // Each gap between consecutive sorted shares separates k smaller from m - k larger items.
    double half_pair_sum = 0.0;
    for (std::size_t k = 1; k < m; ++k) {
        const double gap = sorted[k] - sorted[k - 1];
        half_pair_sum += gap * static_cast<double>(k) * static_cast<double>(m - k);
    }
    const double md = static_cast<double>(m);
    const double mean_abs_difference = 2.0 * half_pair_sum / (md * md);
    const double twice_mean = 2.0 * total / md;
    return mean_abs_difference / twice_mean;
}

double quartile_difference(std::span<const double> shares, std::span<const double> qualities) {
    if (shares.size() != qualities.size())
        throw std::invalid_argument("quartile_difference: shares and qualities differ in length");
    const std::size_t m = shares.size();
    if (m < 4) throw std::invalid_argument("quartile_difference: needs at least 4 items");

    std::vector<std::size_t> ranked(m);
    std::iota(ranked.begin(), ranked.end(), std::size_t{0});
    std::stable_sort(ranked.begin(), ranked.end(),
                     [&](std::size_t a, std::size_t b) { return qualities[a] > qualities[b]; });

    const std::size_t q = m / 4;
    std::vector<std::size_t> upper(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(q));
    std::vector<std::size_t> lower(ranked.end() - static_cast<std::ptrdiff_t>(q), ranked.end());
    // Sum members in item order so the result does not depend on rank order within a quartile.
    std::sort(upper.begin(), upper.end());
    std::sort(lower.begin(), lower.end());
    double upper_sum = 0.0;
    double lower_sum = 0.0;
    for (auto a : upper) upper_sum += shares[a];
    for (auto a : lower) lower_sum += shares[a];
    const double size = static_cast<double>(q);
    return upper_sum / size - lower_sum / size;
}

LinearFit share_quality_slope(std::span<const double> shares, std::span<const double> qualities) {
    if (shares.size() != qualities.size())
        throw std::invalid_argument("share_quality_slope: shares and qualities differ in length");
    const std::size_t m = shares.size();
    if (m < 2) throw std::invalid_argument("share_quality_slope: needs at least 2 items");
    if (std::all_of(qualities.begin(), qualities.end(), [&](double q) { return q == qualities.front(); }))
        throw DegenerateRegressor("share_quality_slope: all qualities are equal");

    const double md = static_cast<double>(m);
    const double q_mean = std::accumulate(qualities.begin(), qualities.end(), 0.0) / md;
    const double d_mean = std::accumulate(shares.begin(), shares.end(), 0.0) / md;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
        const double dq = qualities[a] - q_mean;
        sxx += dq * dq;
        sxy += dq * (shares[a] - d_mean);
    }
    if (!(sxx > 0.0)) throw DegenerateRegressor("share_quality_slope: qualities have no spread");
    const double slope = sxy / sxx;
    return {slope, d_mean - slope * q_mean};
}

MetricsReport compute_metrics(std::vector<double> shares, std::vector<double> qualities) {
    MetricsReport report;
    report.inequality = gini_inequality(shares);
    if (shares.size() >= 4) report.quartile_diff = quartile_difference(shares, qualities);
    try {
        report.fit = share_quality_slope(shares, qualities);
    } catch (const DegenerateRegressor&) {
    } catch (const std::invalid_argument&) {
    }
    report.shares = std::move(shares);
    report.qualities = std::move(qualities);
    return report;
}

} // namespace cmarket
