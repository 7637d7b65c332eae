#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "domrecon/graph.hpp"

namespace domrecon {

using Rng = std::mt19937_64;

/// Random spanning tree (each vertex attaches to a uniformly chosen earlier
/// one) plus every other pair independently with probability `extra`.
Graph random_connected_graph(std::size_t n, double extra, Rng& rng);

/// Each vertex i > 0 attaches to a random earlier vertex with probability
/// `attach`, otherwise starts a new tree.
Graph random_forest(std::size_t n, double attach, Rng& rng);

/// Random subset (each vertex with probability 1/2), then every undominated
/// vertex in ascending order gets a random member of its closed neighborhood.
VertexSet random_dominating_set(const Graph& g, Rng& rng);

/// Deletes members of V(G) in random order while the set stays dominating.
VertexSet random_minimal_dominating_set(const Graph& g, Rng& rng);

/// Seed for the i-th instance of a campaign.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace domrecon
