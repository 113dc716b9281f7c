#include "cmarket/market.hpp"

#include "cmarket/kernels.hpp"

#include <stdexcept>
#include <string>

namespace cmarket {

MarketState::MarketState(std::size_t n_agents, std::size_t n_items)
    : n_agents_{n_agents}, n_items_{n_items}, grid_(n_agents * n_items, 0), item_counts_(n_items, 0) {}

void MarketState::consume(AgentId agent, ItemId item) {
    auto& cell = grid_[agent.index * n_items_ + item.index];
    if (cell)
        throw std::logic_error("agent " + std::to_string(agent.index) + " already consumed item " +
                               std::to_string(item.index));
    cell = 1;
    ++item_counts_[item.index];
}

void MarketState::check_invariants() const {
    std::vector<std::uint32_t> counts(n_items_, 0);
    for (std::size_t i = 0; i < n_agents_; ++i) {
        std::size_t row_sum = 0;
        for (std::size_t a = 0; a < n_items_; ++a) {
            const auto c = grid_[i * n_items_ + a];
            row_sum += c;
            counts[a] += c;
        }
        if (row_sum != step_)
            throw std::logic_error("agent " + std::to_string(i) + " consumed " + std::to_string(row_sum) +
                                   " items after " + std::to_string(step_) + " steps");
    }
    if (counts != item_counts_) throw std::logic_error("per-item counts disagree with the consumption grid");
}

double social_pressure(AgentId agent, ItemId item, const MarketState& state, const SocialGraph& graph) {
    const auto neighbours = graph.neighbors(agent);
    if (neighbours.empty()) return 0.0;
    std::size_t adopters = 0;
    for (auto j : neighbours) adopters += state.consumed(AgentId{j}, item);
    return static_cast<double>(adopters) / static_cast<double>(neighbours.size());
}

namespace detail {

std::size_t choose_item(double gamma, const double* pressure_num, double pressure_den,
                        std::span<const double> liking, std::span<const std::uint8_t> consumed,
                        std::span<double> scratch, RandomStream& tie_rng) {
    const auto& k = kernels::active();
    const std::size_t m = liking.size();
    k.score_opinions(gamma, pressure_num, pressure_den, liking.data(), consumed.data(), scratch.data(), m);
    const auto best = k.max_scan(scratch.data(), m);
    if (best.ties == 0) throw ExhaustedMarket("agent has consumed every item");

    std::size_t wanted = best.ties == 1 ? 0 : static_cast<std::size_t>(tie_rng.uniform_index(best.ties));
    for (std::size_t a = 0; a < m; ++a) {
        if (scratch[a] == best.value) {
            if (wanted == 0) return a;
            --wanted;
        }
    }
    throw std::logic_error("tie scan disagrees with max_scan");
}

} // namespace detail

ItemId select_item(AgentId agent, std::span<const double> frozen_pressures, const PreferenceMatrix& prefs,
                   const MarketState& state, double gamma, RandomStream& tie_rng) {
    if (frozen_pressures.size() != prefs.n_items() || state.n_items() != prefs.n_items())
        throw std::invalid_argument("select_item: pressure, preference and state widths differ");
    std::vector<double> scratch(prefs.n_items());
    return ItemId{detail::choose_item(gamma, frozen_pressures.data(), 1.0, prefs.row(agent), state.row(agent),
                                      scratch, tie_rng)};
}

} // namespace cmarket
