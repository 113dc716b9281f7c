#pragma once

#include "cmarket/preferences.hpp"
#include "cmarket/random.hpp"
#include "cmarket/topology.hpp"

#include <vector>

namespace testing {

inline cmarket::PreferenceMatrix matrix(const std::vector<std::vector<double>>& rows) {
    std::vector<double> flat;
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    return cmarket::PreferenceMatrix(rows.size(), rows.front().size(), std::move(flat));
}

inline std::vector<std::vector<double>> rows_of(const cmarket::PreferenceMatrix& p) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < p.n_agents(); ++i) {
        const auto r = p.row(cmarket::AgentId{i});
        rows.emplace_back(r.begin(), r.end());
    }
    return rows;
}

inline std::vector<std::vector<std::uint32_t>> adjacency_of(const cmarket::SocialGraph& g) {
    std::vector<std::vector<std::uint32_t>> adj;
    for (std::size_t i = 0; i < g.n_agents(); ++i) {
        const auto nb = g.neighbors(cmarket::AgentId{i});
        adj.emplace_back(nb.begin(), nb.end());
    }
    return adj;
}

/// Any of the supported topologies over n agents, chosen by `which`.
inline cmarket::SocialGraph some_graph(std::size_t n, unsigned which, cmarket::RandomStream& rng) {
    using namespace cmarket;
    switch (which % 5) {
    case 0: return build_complete(n);
    case 1: return n >= 3 ? build_ring(n, 2) : build_complete(n);
    case 2: return build_random(n, std::min<std::size_t>(2, n - 1), false, rng);
    case 3: return build_random(n, std::min<std::size_t>(2, n - 1), true, rng);
    default: return build_empty(n);
    }
}

} // namespace testing
