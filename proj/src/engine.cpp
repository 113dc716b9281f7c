#include "cmarket/engine.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace cmarket {

MarketState step_in_order(const MarketState& state, const SocialGraph& graph, const PreferenceMatrix& prefs,
                          double gamma, RandomStream& tie_rng, std::span<const AgentId> order) {
    const std::size_t n = state.n_agents();
    const std::size_t m = state.n_items();
    if (graph.n_agents() != n || prefs.n_agents() != n || prefs.n_items() != m)
        throw std::invalid_argument("step: state, graph and preferences disagree on dimensions");
    if (order.size() != n) throw std::invalid_argument("step: agent order must list every agent once");

    // Pressures are frozen from the incoming state before anyone chooses.
    std::vector<double> pressures(n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < m; ++a)
            pressures[i * m + a] = social_pressure(AgentId{i}, ItemId{a}, state, graph);

    std::vector<std::size_t> choice(n, m);
    for (const AgentId agent : order) {
        if (agent.index >= n || choice[agent.index] != m)
            throw std::invalid_argument("step: agent order must list every agent once");
        const std::span<const double> frozen(pressures.data() + agent.index * m, m);
        choice[agent.index] = select_item(agent, frozen, prefs, state, gamma, tie_rng).index;
    }

    MarketState next = state;
    for (std::size_t i = 0; i < n; ++i) next.consume(AgentId{i}, ItemId{choice[i]});
    next.advance_step();
    return next;
}

MarketState step(const MarketState& state, const SocialGraph& graph, const PreferenceMatrix& prefs, double gamma,
                 RandomStream& tie_rng) {
    std::vector<AgentId> order(state.n_agents());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = AgentId{i};
    return step_in_order(state, graph, prefs, gamma, tie_rng, order);
}

MarketEngine::MarketEngine(const SocialGraph& graph, const PreferenceMatrix& prefs)
    : graph_{graph}, prefs_{prefs}, state_{prefs.n_agents(), prefs.n_items()}, choices_(prefs.n_agents()),
      scratch_(prefs.n_items()) {
    if (graph.n_agents() != prefs.n_agents())
        throw std::invalid_argument("engine: graph has " + std::to_string(graph.n_agents()) +
                                    " agents, preferences have " + std::to_string(prefs.n_agents()));
    const std::size_t m = prefs.n_items();
    if (graph.complete()) {
        complete_counts_.assign(m, 0.0);
    } else {
        observers_ = graph.observers();
        adopting_neighbours_.assign(prefs.n_agents() * m, 0.0);
    }
}

std::span<const std::uint32_t> MarketEngine::advance(double gamma, RandomStream& tie_rng) {
    const std::size_t n = state_.n_agents();
    const std::size_t m = state_.n_items();
    if (state_.step() >= m) throw ExhaustedMarket("engine advanced past total consumption");

    if (graph_.complete()) {
        // s = (adopters among everyone - own adoption) / (N - 1)
        std::vector<double> numerator(m);
        const double den = static_cast<double>(n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            const auto own = state_.row(AgentId{i});
            for (std::size_t a = 0; a < m; ++a) numerator[a] = complete_counts_[a] - own[a];
            choices_[i] = static_cast<std::uint32_t>(
                detail::choose_item(gamma, numerator.data(), den, prefs_.row(AgentId{i}), own, scratch_, tie_rng));
        }
        for (std::size_t i = 0; i < n; ++i) {
            state_.consume(AgentId{i}, ItemId{choices_[i]});
            complete_counts_[choices_[i]] += 1.0;
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const double den = static_cast<double>(graph_.degree(AgentId{i}));
            choices_[i] = static_cast<std::uint32_t>(detail::choose_item(gamma, adopting_neighbours_.data() + i * m,
                                                                         den, prefs_.row(AgentId{i}),
                                                                         state_.row(AgentId{i}), scratch_, tie_rng));
        }
        for (std::size_t j = 0; j < n; ++j) {
            state_.consume(AgentId{j}, ItemId{choices_[j]});
            for (auto watcher : observers_[j]) adopting_neighbours_[watcher * m + choices_[j]] += 1.0;
        }
    }
    state_.advance_step();
    return choices_;
}

namespace {

struct RunSetup {
    std::uint64_t run_seed;
    SocialGraph graph;
    std::shared_ptr<const PreferenceMatrix> prefs;
};

RunSetup prepare(const ModelConfig& config, std::size_t run_index, const RunOptions& options) {
    config.validate();
    const std::uint64_t run_seed = derive_run_seed(config.master_seed, run_index);
    auto topology_rng = make_substream(run_seed, Substream::Topology);
    SocialGraph graph = build_topology(config.topology, config.n_agents, topology_rng);

    std::shared_ptr<const PreferenceMatrix> prefs = options.preferences;
    if (prefs) {
        if (prefs->n_agents() != config.n_agents || prefs->n_items() != config.n_items)
            throw ConfigError("supplied preferences are " + std::to_string(prefs->n_agents()) + "x" +
                              std::to_string(prefs->n_items()) + " but the config asks for N=" +
                              std::to_string(config.n_agents) + ", M=" + std::to_string(config.n_items));
    } else {
        auto pref_rng = make_substream(run_seed, Substream::Preferences);
        prefs = std::make_shared<const PreferenceMatrix>(
            sample_preferences(config.n_agents, config.n_items, config.intra_item_deviation, pref_rng));
    }
    return {run_seed, std::move(graph), std::move(prefs)};
}

RunResult simulate(const ModelConfig& config, std::size_t run_index, const RunSetup& setup,
                   const QualityVector& qualities, const RunOptions& options) {
    const std::size_t n = config.n_agents;
    const std::size_t m = config.n_items;
    MarketEngine engine(setup.graph, *setup.prefs);
    auto tie_rng = make_substream(setup.run_seed, Substream::Ties);

    RunResult result{config, run_index, setup.run_seed, MarketState(n, m), qualities, {}, {}, setup.graph.edge_count()};
    result.choices.reserve(n * config.horizon);
    if (options.record_trajectory) result.trajectory.reserve(config.horizon * m);
    for (std::size_t t = 0; t < config.horizon; ++t) {
        const auto picked = engine.advance(config.social_pressure, tie_rng);
        result.choices.insert(result.choices.end(), picked.begin(), picked.end());
        if (options.record_trajectory)
            for (auto c : engine.state().item_counts())
                result.trajectory.push_back(static_cast<double>(c) / static_cast<double>(n));
    }
    result.final_state = engine.state();
    return result;
}

} // namespace

RunResult run(const ModelConfig& config, std::size_t run_index, const RunOptions& options) {
    const RunSetup setup = prepare(config, run_index, options);
    return simulate(config, run_index, setup, quality(*setup.prefs), options);
}

std::vector<RunResult> run_paired(const ModelConfig& config, std::span<const double> gammas, std::size_t run_index,
                                  const RunOptions& options) {
    ModelConfig base = config;
    for (double g : gammas) {
        base.social_pressure = g;
        base.validate();
    }
    if (gammas.empty()) return {};
    base.social_pressure = gammas.front();
    const RunSetup setup = prepare(base, run_index, options);
    const QualityVector qualities = quality(*setup.prefs);
    std::vector<RunResult> results;
    results.reserve(gammas.size());
    for (double g : gammas) {
        base.social_pressure = g;
        results.push_back(simulate(base, run_index, setup, qualities, options));
    }
    return results;
}

} // namespace cmarket
