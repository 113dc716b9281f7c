#include "cmarket/topology.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <string>

namespace cmarket {

SocialGraph::SocialGraph(Adjacency adjacency, bool directed) : adjacency_{std::move(adjacency)}, directed_{directed} {
    const std::size_t n = adjacency_.size();
    bool complete = n >= 2;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& adj = adjacency_[i];
        for (std::size_t p = 0; p < adj.size(); ++p) {
            if (adj[p] >= n) throw ConfigError("neighbour id out of range at agent " + std::to_string(i));
            if (adj[p] == i) throw ConfigError("self-loop at agent " + std::to_string(i));
            if (p > 0 && adj[p] <= adj[p - 1])
                throw ConfigError("adjacency of agent " + std::to_string(i) + " not strictly ascending");
        }
        if (adj.size() + 1 != n) complete = false;
    }
    if (!directed_) {
        for (std::size_t i = 0; i < n; ++i)
            for (auto j : adjacency_[i])
                if (!std::binary_search(adjacency_[j].begin(), adjacency_[j].end(), static_cast<std::uint32_t>(i)))
                    throw ConfigError("undirected adjacency is not symmetric between " + std::to_string(i) + " and " +
                                      std::to_string(j));
    }
    complete_ = complete;
}

bool SocialGraph::adjacent(AgentId from, AgentId to) const {
    const auto& adj = adjacency_[from.index];
    return std::binary_search(adj.begin(), adj.end(), static_cast<std::uint32_t>(to.index));
}

std::size_t SocialGraph::edge_count() const {
    std::size_t arcs = 0;
    for (const auto& adj : adjacency_) arcs += adj.size();
    return directed_ ? arcs : arcs / 2;
}

SocialGraph::Adjacency SocialGraph::observers() const {
    if (!directed_) return adjacency_;
    Adjacency reverse(adjacency_.size());
    for (std::size_t i = 0; i < adjacency_.size(); ++i)
        for (auto j : adjacency_[i]) reverse[j].push_back(static_cast<std::uint32_t>(i));
    return reverse; // ascending because i is visited in order
}

SocialGraph build_ring(std::size_t n, std::size_t k) {
    TopologySpec{TopologyKind::RingLattice, k}.validate(n);
    SocialGraph::Adjacency adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t d = 1; d <= k / 2; ++d) {
            adj[i].push_back(static_cast<std::uint32_t>((i + d) % n));
            adj[i].push_back(static_cast<std::uint32_t>((i + n - d) % n));
        }
        std::sort(adj[i].begin(), adj[i].end());
        adj[i].erase(std::unique(adj[i].begin(), adj[i].end()), adj[i].end());
    }
    return SocialGraph(std::move(adj), false);
}

SocialGraph build_complete(std::size_t n) {
    TopologySpec{TopologyKind::Complete, 0}.validate(n);
    SocialGraph::Adjacency adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) adj[i].push_back(static_cast<std::uint32_t>(j));
    return SocialGraph(std::move(adj), false);
}

SocialGraph build_empty(std::size_t n) {
    return SocialGraph(SocialGraph::Adjacency(n), false);
}

SocialGraph build_random(std::size_t n, std::size_t k, bool directed, RandomStream& rng) {
    TopologySpec{directed ? TopologyKind::RandomDirected : TopologyKind::RandomUndirected, k}.validate(n);
    SocialGraph::Adjacency adj(n);
    if (directed) {
        // Floyd's sampling of k distinct values from the n-1 other agents.
        for (std::size_t i = 0; i < n; ++i) {
            std::set<std::uint64_t> picked;
            for (std::uint64_t j = n - 1 - k; j < n - 1; ++j) {
                const std::uint64_t t = rng.uniform_index(j + 1);
                if (!picked.insert(t).second) picked.insert(j);
            }
            for (auto c : picked) adj[i].push_back(static_cast<std::uint32_t>(c < i ? c : c + 1));
        }
        return SocialGraph(std::move(adj), true);
    }
    const double p = static_cast<double>(k) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.uniform01() < p) {
                adj[i].push_back(static_cast<std::uint32_t>(j));
                adj[j].push_back(static_cast<std::uint32_t>(i));
            }
    return SocialGraph(std::move(adj), false);
}

SocialGraph build_topology(const TopologySpec& spec, std::size_t n, RandomStream& rng) {
    spec.validate(n);
    switch (spec.kind) {
    case TopologyKind::RingLattice: return build_ring(n, spec.coordination);
    case TopologyKind::Complete: return build_complete(n);
    case TopologyKind::RandomUndirected: return build_random(n, spec.coordination, false, rng);
    case TopologyKind::RandomDirected: return build_random(n, spec.coordination, true, rng);
    case TopologyKind::Empty: return build_empty(n);
    }
    throw ConfigError("unhandled topology kind");
}

void write_edge_list(std::ostream& out, const SocialGraph& graph) {
    for (std::size_t i = 0; i < graph.n_agents(); ++i)
        for (auto j : graph.neighbors(AgentId{i}))
            if (graph.directed() || i < j) out << i << ' ' << j << '\n';
}

} // namespace cmarket
