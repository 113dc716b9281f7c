#pragma once

#include "cmarket/market.hpp"

#include <optional>
#include <span>
#include <vector>

namespace cmarket {

/// item_count / N for every item. Shares need not sum to 1; at step t they sum to t.
std::vector<double> market_shares(const MarketState& state);

/** Gini index of the share vector:
 *
 *   I = (sum_a sum_b |d_a - d_b| / M^2) / (2 sum_a d_a / M)
 *
 * The pairwise sum is evaluated from sorted gaps, sum_k (d_(k) - d_(k-1)) k (M - k),
 * which is exact for equal shares. Returns 0 when every share is 0.
 * Throws std::invalid_argument on an empty, negative or non-finite input.
 */
double gini_inequality(std::span<const double> shares);

/** Mean share of the top-quality quartile minus that of the bottom quartile.
 *
 * Items are ranked by quality descending, ties by ascending item index; both
 * quartiles hold floor(M / 4) items. Throws std::invalid_argument when M < 4
 * or the spans differ in length.
 */
double quartile_difference(std::span<const double> shares, std::span<const double> qualities);

struct LinearFit {
    double slope;
    double intercept;
};

/// Ordinary least squares of shares on qualities. Throws DegenerateRegressor
/// when all qualities are equal, std::invalid_argument when M < 2.
LinearFit share_quality_slope(std::span<const double> shares, std::span<const double> qualities);

struct MetricsReport {
    std::vector<double> shares;
    std::vector<double> qualities;
    double inequality = 0.0;
    /// Absent when M < 4.
    std::optional<double> quartile_diff;
    /// Absent when the qualities have no spread (e.g. sigma = 0).
    std::optional<LinearFit> fit;
};

MetricsReport compute_metrics(std::vector<double> shares, std::vector<double> qualities);

} // namespace cmarket
