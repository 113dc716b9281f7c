#pragma once

#include "cmarket/model.hpp"
#include "cmarket/random.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace cmarket {

/** Liking values of every agent for every item, stored agent-major.
 *
 * Immutable once built. Entries must be finite.
 */
class PreferenceMatrix {
public:
    PreferenceMatrix(std::size_t n_agents, std::size_t n_items, std::vector<double> values);

    std::size_t n_agents() const { return n_agents_; }
    std::size_t n_items() const { return n_items_; }

    double at(AgentId agent, ItemId item) const { return values_[agent.index * n_items_ + item.index]; }
    std::span<const double> row(AgentId agent) const {
        return {values_.data() + agent.index * n_items_, n_items_};
    }
    std::span<const double> values() const { return values_; }

    bool operator==(const PreferenceMatrix&) const = default;

private:
    std::size_t n_agents_;
    std::size_t n_items_;
    std::vector<double> values_;
};

/// Per-item mean liking over agents.
using QualityVector = std::vector<double>;

/// N x M independent Normal(0, sigma^2) draws, filled agent-major from `rng`.
PreferenceMatrix sample_preferences(std::size_t n_agents, std::size_t n_items, double sigma, RandomStream& rng);

/// Column means. Columns are accumulated in ascending agent order.
QualityVector quality(const PreferenceMatrix& prefs);

/// Headerless CSV, one row per agent, one column per item, 17 significant digits.
void write_preferences_csv(std::ostream& out, const PreferenceMatrix& prefs);

/// Reads the format produced by write_preferences_csv. Throws ConfigError on
/// ragged rows, empty input, or unparsable / non-finite cells.
PreferenceMatrix read_preferences_csv(std::istream& in);

} // namespace cmarket
