#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "domrecon/graph.hpp"
#include "domrecon/reconfig_types.hpp"

namespace domrecon {

/// Canonical coordinate of a torus vertex: the class of
/// s*(2,1) + t*(-1,2) + (r,0) with s, t in Z_k and r in Z_5.
struct TorusCoord {
    int s = 0;
    int t = 0;
    int r = 0;
    friend bool operator==(const TorusCoord&, const TorusCoord&) = default;
};

/// The 4-regular toroidal instance: the grid Z^2 modulo the lattice spanned by
/// k*(2,1) and k*(-1,2), together with the two perfect dominating sets
/// {x+3y = 0 mod 5} and {x+3y = 1 mod 5}, their k^2 adjacent pairs, and the
/// pair graph H (isomorphic to the k x k torus grid).
struct TorusInstance {
    int k = 0;
    Graph graph;
    VertexSet d_box;
    VertexSet d_circ;
    /// pairs[p] = (u_box, u_circ); pair id p = s*k + t.
    std::vector<std::pair<VertexId, VertexId>> pairs;
    Graph h_graph;
    std::vector<TorusCoord> coords;
    /// Set when k is not a multiple of 4 (counting diagnostics refuse it).
    bool nonstandard_k = false;

    std::size_t pair_count() const noexcept { return pairs.size(); }
};

/// Vertex id of the class containing grid point (x, y).
VertexId torus_vertex_at(int k, long long x, long long y);
/// Canonical coordinate of grid point (x, y).
TorusCoord torus_canonical(int k, long long x, long long y);
/// A grid point in the class of the canonical coordinate.
std::pair<long long, long long> torus_representative(const TorusCoord& c);
/// (x mod k, y mod k); well defined on the quotient.
std::pair<int, int> torus_grid_projection(int k, const TorusCoord& c);

/// Builds and verifies the instance. Throws InputError for k < 2 and
/// InvariantError if any structural check fails.
TorusInstance build_torus(int k);

/// Pair graph from the closed-neighborhood rule: pairs p, p' are adjacent when
/// (N[u_box] ∪ N[u_circ]) and (N[u'_box] ∪ N[u'_circ]) intersect.
Graph pair_graph_by_neighborhoods(const Graph& g, const std::vector<std::pair<VertexId, VertexId>>& pairs);
/// The k x k torus grid on pair ids s*k + t.
Graph torus_grid_graph(int k);

enum class PairType { left, right, zero, two };

std::string to_string(PairType type);

PairType classify_pair(const TorusInstance& inst, std::size_t pair_id, const VertexSet& d);

struct TypeCounts {
    std::size_t left = 0;
    std::size_t right = 0;
    std::size_t zero = 0;
    std::size_t two = 0;

    std::size_t total() const noexcept { return left + right + zero + two; }
    std::size_t& operator[](PairType t);
    std::size_t operator[](PairType t) const;
    friend bool operator==(const TypeCounts&, const TypeCounts&) = default;
};

TypeCounts type_counts(const TorusInstance& inst, const VertexSet& d);

struct DropIndex {
    std::size_t index = 0;
    TypeCounts counts;
    /// |D_j| at the drop index.
    std::size_t set_size = 0;
};

/// Smallest j with n(j, left) <= 7k^2/8 along the sequence, if any.
/// Throws ContractError unless the sequence starts at d_box and k = 0 mod 4.
std::optional<DropIndex> first_drop_index(const TorusInstance& inst, const ReconfigSequence& seq);

/// Type counts of every state D_0..D_l of the sequence.
std::vector<TypeCounts> type_count_trace(const TorusInstance& inst, const ReconfigSequence& seq);

struct BoundarySets {
    /// Left pairs with no left H-neighbor.
    std::vector<std::size_t> p_prime_left;
    /// Left pairs not in p_prime_left.
    std::vector<std::size_t> p_star;
    /// Members of p_star with an H-neighbor outside p_star.
    std::vector<std::size_t> p_star_star;
};

BoundarySets boundary_sets(const TorusInstance& inst, const VertexSet& d);

/// Members u of d such that some other member v has N[u] ∩ N[v] nonempty.
VertexSet inefficient_vertices(const Graph& g, const VertexSet& d);

/// Greedy (ascending id) subset of `candidates` with pairwise distance >= 3.
VertexSet spread_subset(const Graph& g, const VertexSet& candidates);

/// ceil((n + |spread_set|) / 5): the double-counting lower bound on |d| for a
/// 4-regular graph. Throws ContractError if the graph is not 4-regular,
/// spread_set is not a subset of the inefficient vertices of d, or two of its
/// members are at distance < 3.
std::size_t efficiency_lower_bound(const Graph& g, const VertexSet& d, const VertexSet& spread_set);

}  // namespace domrecon
