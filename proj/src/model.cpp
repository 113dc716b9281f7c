#include "cmarket/model.hpp"

#include <cmath>

namespace cmarket {

std::string_view to_string(TopologyKind kind) {
    switch (kind) {
    case TopologyKind::RingLattice: return "ring";
    case TopologyKind::Complete: return "complete";
    case TopologyKind::RandomUndirected: return "random";
    case TopologyKind::RandomDirected: return "random-directed";
    case TopologyKind::Empty: return "empty";
    }
    return "unknown";
}

TopologyKind parse_topology_kind(std::string_view name) {
    for (auto kind : {TopologyKind::RingLattice, TopologyKind::Complete, TopologyKind::RandomUndirected,
                      TopologyKind::RandomDirected, TopologyKind::Empty}) {
        if (to_string(kind) == name) return kind;
    }
    throw ConfigError("unknown topology '" + std::string(name) +
                      "' (expected ring, complete, random, random-directed or empty)");
}

void TopologySpec::validate(std::size_t n_agents) const {
    const std::string n = std::to_string(n_agents);
    const std::string k = std::to_string(coordination);
    switch (kind) {
    case TopologyKind::RingLattice:
        if (coordination % 2 != 0)
            throw ConfigError("ring lattice needs an even coordination number, got k=" + k);
        if (coordination < 2 || coordination + 1 > n_agents)
            throw ConfigError("ring lattice needs 2 <= k <= N-1, got k=" + k + " with N=" + n);
        break;
    case TopologyKind::Complete:
        if (n_agents < 2) throw ConfigError("complete graph needs N >= 2, got N=" + n);
        break;
    case TopologyKind::RandomUndirected:
    case TopologyKind::RandomDirected:
        if (coordination < 1 || coordination + 1 > n_agents)
            throw ConfigError("random graph needs 1 <= k <= N-1, got k=" + k + " with N=" + n);
        break;
    case TopologyKind::Empty:
        break;
    }
}

std::string TopologySpec::model_description() const {
    switch (kind) {
    case TopologyKind::RingLattice: return "ring-lattice";
    case TopologyKind::Complete: return "complete";
    case TopologyKind::RandomUndirected: return "gnp-mean-degree-k";
    case TopologyKind::RandomDirected: return "k-out-uniform";
    case TopologyKind::Empty: return "edgeless";
    }
    return "unknown";
}

void ModelConfig::validate() const {
    if (n_agents < 1) throw ConfigError("number of agents N must be positive");
    if (n_items < 1) throw ConfigError("number of items M must be positive");
    if (horizon > n_items)
        throw ConfigError("horizon T=" + std::to_string(horizon) + " exceeds item count M=" +
                          std::to_string(n_items) + " (T <= M required)");
    if (!(social_pressure >= 0.0 && social_pressure <= 1.0))
        throw ConfigError("social pressure gamma must lie in [0, 1]");
    if (!(intra_item_deviation >= 0.0) || !std::isfinite(intra_item_deviation))
        throw ConfigError("intra-item deviation sigma must be finite and non-negative");
    topology.validate(n_agents);
}

} // namespace cmarket
