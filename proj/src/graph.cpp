#include "domrecon/graph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <string>

#include "domrecon/errors.hpp"

namespace domrecon {

namespace {

std::size_t word_count(std::size_t universe) { return (universe + 63) / 64; }

}  // namespace

VertexSet::VertexSet(std::size_t universe) : universe_(universe), words_(word_count(universe), 0) {}

VertexSet VertexSet::from_ids(std::size_t universe, std::span<const VertexId> ids) {
    VertexSet s(universe);
    for (VertexId v : ids) s.insert(v);
    return s;
}

VertexSet VertexSet::full(std::size_t universe) {
    VertexSet s(universe);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    if (const std::size_t tail = universe % 64; tail != 0) s.words_.back() = (std::uint64_t{1} << tail) - 1;
    return s;
}

VertexSet VertexSet::from_mask(std::size_t universe, std::uint64_t mask) {
    if (universe > 64) throw InputError("VertexSet::from_mask requires universe <= 64");
    if (universe < 64 && (mask >> universe) != 0) throw InputError("mask has bits outside the universe");
    VertexSet s(universe);
    if (universe > 0) s.words_[0] = mask;
    return s;
}

std::size_t VertexSet::size() const noexcept {
    std::size_t total = 0;
    for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

void VertexSet::check_range(VertexId v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= universe_) {
        throw InputError("vertex id " + std::to_string(v) + " outside universe of size " +
                         std::to_string(universe_));
    }
}

void VertexSet::check_same_universe(const VertexSet& other) const {
    if (universe_ != other.universe_) {
        throw InputError("vertex sets over different universes (" + std::to_string(universe_) + " vs " +
                         std::to_string(other.universe_) + ")");
    }
}

bool VertexSet::contains(VertexId v) const {
    check_range(v);
    const auto i = static_cast<std::size_t>(v);
    return (words_[i / 64] >> (i % 64)) & 1U;
}

bool VertexSet::insert(VertexId v) {
    check_range(v);
    const auto i = static_cast<std::size_t>(v);
    const std::uint64_t bit = std::uint64_t{1} << (i % 64);
    const bool fresh = (words_[i / 64] & bit) == 0;
    words_[i / 64] |= bit;
    return fresh;
}

bool VertexSet::erase(VertexId v) {
    check_range(v);
    const auto i = static_cast<std::size_t>(v);
    const std::uint64_t bit = std::uint64_t{1} << (i % 64);
    const bool present = (words_[i / 64] & bit) != 0;
    words_[i / 64] &= ~bit;
    return present;
}

void VertexSet::clear() noexcept { std::fill(words_.begin(), words_.end(), 0); }

std::vector<VertexId> VertexSet::members() const {
    std::vector<VertexId> out;
    out.reserve(size());
    for_each([&](VertexId v) { out.push_back(v); });
    return out;
}

std::optional<VertexId> VertexSet::first() const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) {
        if (words_[w] != 0) return static_cast<VertexId>(w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w])));
    }
    return std::nullopt;
}

std::uint64_t VertexSet::to_mask() const {
    if (universe_ > 64) throw InputError("VertexSet::to_mask requires universe <= 64");
    return words_.empty() ? 0 : words_[0];
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
    check_same_universe(other);
    for (std::size_t w = 0; w < words_.size(); ++w) {
        if ((words_[w] & ~other.words_[w]) != 0) return false;
    }
    return true;
}

bool VertexSet::intersects(const VertexSet& other) const {
    check_same_universe(other);
    for (std::size_t w = 0; w < words_.size(); ++w) {
        if ((words_[w] & other.words_[w]) != 0) return true;
    }
    return false;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
    check_same_universe(other);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
    return *this;
}

VertexSet& VertexSet::operator&=(const VertexSet& other) {
    check_same_universe(other);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
    return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& other) {
    check_same_universe(other);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
    return *this;
}

std::size_t VertexSet::hash() const noexcept {
    // FNV-1a over the words, seeded with the universe size.
    std::uint64_t h = 1469598103934665603ULL ^ universe_;
    for (auto w : words_) {
        h ^= w;
        h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
}

Graph::Graph(std::size_t n, std::span<const Edge> edges, std::map<VertexId, std::string> labels)
    : adjacency_(n), labels_(std::move(labels)) {
    auto in_range = [n](VertexId v) { return v >= 0 && static_cast<std::size_t>(v) < n; };
    for (const auto& [u, v] : edges) {
        if (!in_range(u) || !in_range(v)) {
            throw InputError("edge {" + std::to_string(u) + "," + std::to_string(v) + "} has an endpoint outside [0," +
                             std::to_string(n) + ")");
        }
        if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
        adjacency_[static_cast<std::size_t>(u)].push_back(v);
        adjacency_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (std::size_t v = 0; v < n; ++v) {
        auto& adj = adjacency_[v];
        std::sort(adj.begin(), adj.end());
        if (auto dup = std::adjacent_find(adj.begin(), adj.end()); dup != adj.end()) {
            throw InputError("duplicate edge {" + std::to_string(v) + "," + std::to_string(*dup) + "}");
        }
        max_degree_ = std::max(max_degree_, adj.size());
    }
    edge_count_ = edges.size();
    for (const auto& [v, label] : labels_) {
        if (!in_range(v)) throw InputError("label for vertex " + std::to_string(v) + " which does not exist");
    }
}

void Graph::check_vertex(VertexId v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= n()) {
        throw InputError("vertex id " + std::to_string(v) + " out of range for graph of order " + std::to_string(n()));
    }
}

std::span<const VertexId> Graph::neighbors(VertexId v) const {
    check_vertex(v);
    return adjacency_[static_cast<std::size_t>(v)];
}

bool Graph::has_edge(VertexId u, VertexId v) const {
    check_vertex(v);
    auto adj = neighbors(u);
    return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (std::size_t u = 0; u < n(); ++u) {
        for (VertexId v : adjacency_[u]) {
            if (static_cast<VertexId>(u) < v) out.emplace_back(static_cast<VertexId>(u), v);
        }
    }
    return out;
}

VertexSet closed_neighborhood(const Graph& g, VertexId v) {
    VertexSet s(g.n());
    for (VertexId u : g.neighbors(v)) s.insert(u);
    s.insert(v);
    return s;
}

VertexSet undominated(const Graph& g, const VertexSet& d) {
    if (d.universe() != g.n()) throw InputError("vertex set universe does not match graph order");
    VertexSet out(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        const auto v = static_cast<VertexId>(i);
        if (d.contains(v)) continue;
        auto adj = g.neighbors(v);
        if (std::none_of(adj.begin(), adj.end(), [&](VertexId u) { return d.contains(u); })) out.insert(v);
    }
    return out;
}

bool is_dominating(const Graph& g, const VertexSet& d) { return undominated(g, d).empty(); }

std::vector<int> bfs_distances(const Graph& g, VertexId source) {
    g.check_vertex(source);
    std::vector<int> dist(g.n(), -1);
    std::deque<VertexId> queue{source};
    dist[static_cast<std::size_t>(source)] = 0;
    while (!queue.empty()) {
        const VertexId u = queue.front();
        queue.pop_front();
        for (VertexId w : g.neighbors(u)) {
            auto& dw = dist[static_cast<std::size_t>(w)];
            if (dw < 0) {
                dw = dist[static_cast<std::size_t>(u)] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

std::size_t ball_size(const Graph& g, VertexId v, std::size_t radius) {
    const auto dist = bfs_distances(g, v);
    return static_cast<std::size_t>(std::count_if(dist.begin(), dist.end(), [radius](int d) {
        return d >= 0 && static_cast<std::size_t>(d) <= radius;
    }));
}

std::vector<int> component_ids(const Graph& g) {
    std::vector<int> comp(g.n(), -1);
    int next = 0;
    for (std::size_t s = 0; s < g.n(); ++s) {
        if (comp[s] >= 0) continue;
        std::vector<VertexId> stack{static_cast<VertexId>(s)};
        comp[s] = next;
        while (!stack.empty()) {
            const VertexId u = stack.back();
            stack.pop_back();
            for (VertexId w : g.neighbors(u)) {
                if (comp[static_cast<std::size_t>(w)] < 0) {
                    comp[static_cast<std::size_t>(w)] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    return comp;
}

std::size_t component_count(const Graph& g) {
    const auto comp = component_ids(g);
    return comp.empty() ? 0 : static_cast<std::size_t>(*std::max_element(comp.begin(), comp.end()) + 1);
}

bool is_connected(const Graph& g) { return component_count(g) <= 1; }

bool is_regular(const Graph& g, std::size_t degree) {
    for (std::size_t v = 0; v < g.n(); ++v) {
        if (g.degree(static_cast<VertexId>(v)) != degree) return false;
    }
    return true;
}

}  // namespace domrecon
