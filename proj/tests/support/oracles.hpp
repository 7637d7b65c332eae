#pragma once

// Brute-force reference implementations. They only read the edge list of a
// Graph and never call the library's algorithms.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "domrecon/graph.hpp"
#include "domrecon/reconfig_types.hpp"
#include "domrecon/septree.hpp"

namespace oracle {

using domrecon::Graph;
using domrecon::VertexSet;

using Matrix = std::vector<std::vector<bool>>;

Matrix adjacency(const Graph& g);

bool dominates(const Matrix& adj, const std::set<int>& d);

/// Smallest dominating set size by enumerating subsets in size order (n <= 26).
std::size_t gamma(const Graph& g);

/// Sizes of all minimal dominating sets (n <= 12).
std::size_t upper_gamma(const Graph& g);

/// Smallest cap admitting a transformation, by plain BFS over std::set states.
std::size_t k_star(const Graph& g, const std::set<int>& d, const std::set<int>& d_prime);

std::set<int> to_std(const VertexSet& s);

/// Sizes of D_0..D_l by replaying with std::set; nullopt if a move is illegal
/// or a state is not dominating.
std::optional<std::vector<std::size_t>> replay(const Graph& g, const domrecon::ReconfigSequence& seq);

/// The final state of a replay, assuming it is legal.
std::set<int> replay_end(const domrecon::ReconfigSequence& seq);

/// Off-path node sets by walking the tree from each path node.
struct Sides {
    std::set<std::size_t> on_path;
    std::set<std::size_t> left;
    std::set<std::size_t> right;
};
Sides path_sides(const domrecon::SeparatorTree& tree, const std::string& code);

/// Vertex ids of the torus built from Z_{5k}^2 by union-find over the lattice
/// generators, relabelled through `vertex_at`. Returns the edge set.
std::set<std::pair<int, int>> torus_edges_union_find(int k, int (*vertex_at)(int, long long, long long));

/// Complete binary tree of the given depth with one vertex per node and no
/// graph edges (n = 2^(depth+1) - 1), numbered in pre-order.
domrecon::SeparatorTree complete_tree(std::size_t depth);

/// Path P_n with ids along the path.
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);

}  // namespace oracle
