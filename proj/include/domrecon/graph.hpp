#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace domrecon {

using VertexId = std::int32_t;
using Edge = std::pair<VertexId, VertexId>;

/// Set of vertex ids over a fixed universe [0, universe). Bitset storage;
/// iteration and serialization use ascending id order.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t universe);

    static VertexSet from_ids(std::size_t universe, std::span<const VertexId> ids);
    static VertexSet full(std::size_t universe);
    /// Requires universe <= 64.
    static VertexSet from_mask(std::size_t universe, std::uint64_t mask);

    std::size_t universe() const noexcept { return universe_; }
    std::size_t size() const noexcept;
    bool empty() const noexcept { return size() == 0; }

    bool contains(VertexId v) const;
    /// Returns false if `v` was already present.
    bool insert(VertexId v);
    /// Returns false if `v` was absent.
    bool erase(VertexId v);
    void clear() noexcept;

    std::vector<VertexId> members() const;
    /// Smallest member, if any.
    std::optional<VertexId> first() const noexcept;
    /// Requires universe <= 64.
    std::uint64_t to_mask() const;

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits != 0) {
                const int bit = __builtin_ctzll(bits);
                f(static_cast<VertexId>(w * 64 + static_cast<std::size_t>(bit)));
                bits &= bits - 1;
            }
        }
    }

    bool is_subset_of(const VertexSet& other) const;
    bool intersects(const VertexSet& other) const;

    VertexSet& operator|=(const VertexSet& other);
    VertexSet& operator&=(const VertexSet& other);
    VertexSet& operator-=(const VertexSet& other);
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

    std::size_t hash() const noexcept;

private:
    void check_same_universe(const VertexSet& other) const;
    void check_range(VertexId v) const;

    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Immutable simple undirected graph on vertices 0..n-1 with sorted
/// adjacency lists. Optional string labels live in a side map.
class Graph {
public:
    Graph() = default;
    /// Throws InputError on self-loops, duplicate edges or out-of-range ids.
    Graph(std::size_t n, std::span<const Edge> edges, std::map<VertexId, std::string> labels = {});

    std::size_t n() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }

    std::span<const VertexId> neighbors(VertexId v) const;
    std::size_t degree(VertexId v) const { return neighbors(v).size(); }
    std::size_t max_degree() const noexcept { return max_degree_; }
    bool has_edge(VertexId u, VertexId v) const;

    /// All edges as (u, v) with u < v, sorted.
    std::vector<Edge> edges() const;

    const std::map<VertexId, std::string>& labels() const noexcept { return labels_; }

    /// Throws InputError if `v` is not a vertex.
    void check_vertex(VertexId v) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::vector<VertexId>> adjacency_;
    std::map<VertexId, std::string> labels_;
    std::size_t edge_count_ = 0;
    std::size_t max_degree_ = 0;
};

VertexSet closed_neighborhood(const Graph& g, VertexId v);

/// True iff every vertex lies in `d` or has a neighbor in `d`.
bool is_dominating(const Graph& g, const VertexSet& d);

/// Vertices not dominated by `d`.
VertexSet undominated(const Graph& g, const VertexSet& d);

/// BFS distances from `source`; unreachable vertices get -1.
std::vector<int> bfs_distances(const Graph& g, VertexId source);

/// Number of vertices at distance at most `radius` from `v`.
std::size_t ball_size(const Graph& g, VertexId v, std::size_t radius);

/// Component index per vertex (components numbered by smallest member).
std::vector<int> component_ids(const Graph& g);
std::size_t component_count(const Graph& g);
bool is_connected(const Graph& g);
bool is_regular(const Graph& g, std::size_t degree);

}  // namespace domrecon

template <>
struct std::hash<domrecon::VertexSet> {
    std::size_t operator()(const domrecon::VertexSet& s) const noexcept { return s.hash(); }
};
