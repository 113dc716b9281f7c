#pragma once

#include "cmarket/market.hpp"
#include "cmarket/model.hpp"
#include "cmarket/preferences.hpp"
#include "cmarket/random.hpp"
#include "cmarket/topology.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace cmarket {

/// Reference synchronous step: pressures come from social_pressure() on the
/// incoming state, agents choose in ascending order, choices are applied together.
MarketState step(const MarketState& state, const SocialGraph& graph, const PreferenceMatrix& prefs, double gamma,
                 RandomStream& tie_rng);

/// As step(), but agents choose (and draw tie-breaks) in the given order.
MarketState step_in_order(const MarketState& state, const SocialGraph& graph, const PreferenceMatrix& prefs,
                          double gamma, RandomStream& tie_rng, std::span<const AgentId> order);

/** Incremental simulator for one run.
 *
 * Keeps, for every agent, how many of its neighbours have consumed each item,
 * updating the counts after each step instead of recomputing social_pressure()
 * from the grid. Produces exactly the same states as repeated step() calls.
 */
class MarketEngine {
public:
    MarketEngine(const SocialGraph& graph, const PreferenceMatrix& prefs);

    const MarketState& state() const { return state_; }

    /// Advances one step; returns the item chosen by each agent.
    std::span<const std::uint32_t> advance(double gamma, RandomStream& tie_rng);

private:
    const SocialGraph& graph_;
    const PreferenceMatrix& prefs_;
    SocialGraph::Adjacency observers_;
    MarketState state_;
    std::vector<double> adopting_neighbours_; // N x M, only maintained for non-complete graphs
    std::vector<double> complete_counts_; // M, used for complete graphs
    std::vector<std::uint32_t> choices_;
    std::vector<double> scratch_;
};

struct RunOptions {
    /// Record share of every item after every step (T x M doubles).
    bool record_trajectory = false;
    /// Use these likings instead of sampling; must be N x M for the config.
    std::shared_ptr<const PreferenceMatrix> preferences;
};

struct RunResult {
    ModelConfig config;
    std::size_t run_index = 0;
    std::uint64_t run_seed = 0;
    MarketState final_state;
    QualityVector qualities;
    /// choices[t * N + i] is the item agent i consumed at step t.
    std::vector<std::uint32_t> choices;
    /// trajectory[t * M + a] is the share of item a after step t + 1; empty unless recorded.
    std::vector<double> trajectory;
    /// Edges in the realized graph (random topologies differ per run).
    std::size_t graph_edges = 0;
};

/// Builds topology and preferences from the run's substreams, then iterates T steps.
/// Throws ConfigError for invalid configs.
RunResult run(const ModelConfig& config, std::size_t run_index, const RunOptions& options = {});

/// One result per gamma, all sharing the topology, preferences and tie-stream seed of run_index.
/// config.social_pressure is ignored.
std::vector<RunResult> run_paired(const ModelConfig& config, std::span<const double> gammas, std::size_t run_index,
                                  const RunOptions& options = {});

} // namespace cmarket
