#pragma once

#include "cmarket/model.hpp"
#include "cmarket/preferences.hpp"
#include "cmarket/random.hpp"
#include "cmarket/topology.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace cmarket {

/** Consumption record of the whole market.
 *
 * consumed(i, a) never reverts once set; item_count(a) is the column sum of the
 * grid. Rows sum to step() whenever the state is produced by the engine.
 */
class MarketState {
public:
    MarketState() : MarketState(0, 0) {}
    MarketState(std::size_t n_agents, std::size_t n_items);

    std::size_t n_agents() const { return n_agents_; }
    std::size_t n_items() const { return n_items_; }
    std::size_t step() const { return step_; }

    bool consumed(AgentId agent, ItemId item) const { return grid_[agent.index * n_items_ + item.index] != 0; }
    std::span<const std::uint8_t> row(AgentId agent) const { return {grid_.data() + agent.index * n_items_, n_items_}; }
    std::span<const std::uint8_t> grid() const { return grid_; }
    std::span<const std::uint32_t> item_counts() const { return item_counts_; }

    /// Marks (agent, item) consumed; throws std::logic_error if it already was.
    void consume(AgentId agent, ItemId item);
    void advance_step() { ++step_; }

    /// Throws std::logic_error if counts disagree with the grid or a row does not sum to step().
    void check_invariants() const;

    bool operator==(const MarketState&) const = default;

private:
    std::size_t n_agents_;
    std::size_t n_items_;
    std::size_t step_ = 0;
    std::vector<std::uint8_t> grid_;
    std::vector<std::uint32_t> item_counts_;
};

/// Fraction of the agent's neighbours that have consumed the item; 0 for an agent without neighbours.
double social_pressure(AgentId agent, ItemId item, const MarketState& state, const SocialGraph& graph);

inline double opinion(double social, double liking, double gamma) {
    return gamma * social + (1.0 - gamma) * liking;
}

inline double opinion(AgentId agent, ItemId item, double social, const PreferenceMatrix& prefs, double gamma) {
    return opinion(social, prefs.at(agent, item), gamma);
}

/** Item with the highest opinion among those the agent has not consumed.
 *
 * frozen_pressures holds s for every item (length M). Exact ties are broken
 * uniformly with one draw from tie_rng; no draw is made when the maximum is
 * unique. Throws ExhaustedMarket if the agent has consumed everything.
 */
ItemId select_item(AgentId agent, std::span<const double> frozen_pressures, const PreferenceMatrix& prefs,
                   const MarketState& state, double gamma, RandomStream& tie_rng);

namespace detail {

/// Shared core of select_item and the engine: pressures given as
/// numerator / denominator so the engine can pass raw neighbour counts.
std::size_t choose_item(double gamma, const double* pressure_num, double pressure_den,
                        std::span<const double> liking, std::span<const std::uint8_t> consumed,
                        std::span<double> scratch, RandomStream& tie_rng);

} // namespace detail

} // namespace cmarket
