#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cmarket {

/// Index wrapper that keeps agent and item indices from being mixed up.
template <class Tag>
struct StrongIndex {
    std::size_t index = 0;

    constexpr StrongIndex() = default;
    constexpr explicit StrongIndex(std::size_t i) : index{i} {}

    constexpr auto operator<=>(const StrongIndex&) const = default;
};

using AgentId = StrongIndex<struct AgentTag>;
using ItemId = StrongIndex<struct ItemTag>;

/// A run description or topology violates its invariants.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An agent was asked to choose with no unconsumed item left. Unreachable for
/// valid configurations; seeing it means the engine advanced past T = M.
class ExhaustedMarket : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Least-squares fit requested on a regressor with no spread.
class DegenerateRegressor : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class TopologyKind {
    RingLattice,
    Complete,
    RandomUndirected,
    RandomDirected,
    Empty, ///< no edges; every agent sees zero social pressure
};

std::string_view to_string(TopologyKind kind);

/// Parses the CLI spelling: ring, complete, random, random-directed, empty.
TopologyKind parse_topology_kind(std::string_view name);

struct TopologySpec {
    TopologyKind kind = TopologyKind::Complete;
    /// Ring: neighbours per agent. Random kinds: target mean (undirected) or exact
    /// (directed) out-degree. Ignored for Complete and Empty.
    std::size_t coordination = 0;

    bool operator==(const TopologySpec&) const = default;

    /// Throws ConfigError if the spec cannot be realized over n agents.
    void validate(std::size_t n_agents) const;

    /// Short description of the generative model, echoed into output metadata.
    std::string model_description() const;
};

struct ModelConfig {
    std::size_t n_agents = 100;
    std::size_t n_items = 100;
    std::size_t horizon = 20;
    double social_pressure = 0.0;
    double intra_item_deviation = 1.0;
    TopologySpec topology{};
    std::uint64_t master_seed = 0;

    bool operator==(const ModelConfig&) const = default;

    /// Throws ConfigError naming the first violated invariant.
    void validate() const;
};

} // namespace cmarket
