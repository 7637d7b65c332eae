#include "domrecon/generators.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace domrecon {

Graph random_connected_graph(std::size_t n, double extra, Rng& rng) {
    std::vector<Edge> edges;
    std::vector<VertexId> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 1; i < n; ++i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        const VertexId u = order[pick(rng)];
        edges.emplace_back(std::min(u, order[i]), std::max(u, order[i]));
    }
    std::sort(edges.begin(), edges.end());
    std::bernoulli_distribution coin(extra);
    std::vector<Edge> all = edges;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            const Edge e{static_cast<VertexId>(u), static_cast<VertexId>(v)};
            if (std::binary_search(edges.begin(), edges.end(), e)) continue;
            if (coin(rng)) all.push_back(e);
        }
    }
    return Graph(n, all);
}

Graph random_forest(std::size_t n, double attach, Rng& rng) {
    std::vector<Edge> edges;
    std::bernoulli_distribution coin(attach);
    for (std::size_t i = 1; i < n; ++i) {
        if (!coin(rng)) continue;
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        edges.emplace_back(static_cast<VertexId>(pick(rng)), static_cast<VertexId>(i));
    }
    return Graph(n, edges);
}

VertexSet random_dominating_set(const Graph& g, Rng& rng) {
    VertexSet d(g.n());
    std::bernoulli_distribution coin(0.5);
    for (std::size_t v = 0; v < g.n(); ++v) {
        if (coin(rng)) d.insert(static_cast<VertexId>(v));
    }
    for (std::size_t v = 0; v < g.n(); ++v) {
        const auto vid = static_cast<VertexId>(v);
        if (closed_neighborhood(g, vid).intersects(d)) continue;
        const auto nb = closed_neighborhood(g, vid).members();
        std::uniform_int_distribution<std::size_t> pick(0, nb.size() - 1);
        d.insert(nb[pick(rng)]);
    }
    return d;
}

VertexSet random_minimal_dominating_set(const Graph& g, Rng& rng) {
    VertexSet d = VertexSet::full(g.n());
    std::vector<VertexId> order(g.n());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (VertexId v : order) {
        d.erase(v);
        if (!is_dominating(g, d)) d.insert(v);
    }
    return d;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace domrecon
