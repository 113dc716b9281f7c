#pragma once

#include "cmarket/model.hpp"
#include "cmarket/random.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace cmarket {

/** Who influences whom.
 *
 * neighbors(i) lists the agents whose consumption agent i observes, in
 * ascending order. For undirected graphs the relation is symmetric; for
 * directed graphs these are i's out-neighbours.
 */
class SocialGraph {
public:
    using Adjacency = std::vector<std::vector<std::uint32_t>>;

    /// Throws ConfigError on self-loops, unsorted or duplicate entries,
    /// out-of-range ids, or (undirected) asymmetric adjacency.
    SocialGraph(Adjacency adjacency, bool directed);

    std::size_t n_agents() const { return adjacency_.size(); }
    bool directed() const { return directed_; }
    std::span<const std::uint32_t> neighbors(AgentId agent) const { return adjacency_[agent.index]; }
    std::size_t degree(AgentId agent) const { return adjacency_[agent.index].size(); }
    bool adjacent(AgentId from, AgentId to) const;

    /// Undirected edges counted once; directed arcs counted individually.
    std::size_t edge_count() const;

    /// Every agent observes every other agent.
    bool complete() const { return complete_; }

    /// For each agent j, the agents that observe j (equal to neighbors(j) when undirected).
    Adjacency observers() const;

    bool operator==(const SocialGraph& other) const {
        return directed_ == other.directed_ && adjacency_ == other.adjacency_;
    }

private:
    Adjacency adjacency_;
    bool directed_;
    bool complete_ = false;
};

/// Agent i adjacent to i +- 1, ..., i +- k/2 (mod n).
SocialGraph build_ring(std::size_t n, std::size_t k);

SocialGraph build_complete(std::size_t n);

SocialGraph build_empty(std::size_t n);

/// directed: every agent gets exactly k distinct out-neighbours, uniform without
/// replacement. Undirected: G(n, p) with p = k / (n - 1).
SocialGraph build_random(std::size_t n, std::size_t k, bool directed, RandomStream& rng);

/// Dispatches on spec.kind after validating it against n.
SocialGraph build_topology(const TopologySpec& spec, std::size_t n, RandomStream& rng);

/// One "i j" pair per line in ascending order; undirected edges once with i < j.
void write_edge_list(std::ostream& out, const SocialGraph& graph);

} // namespace cmarket
