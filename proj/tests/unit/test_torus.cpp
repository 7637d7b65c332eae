#include <doctest.h>

#include <set>

#include "domrecon/errors.hpp"
#include "domrecon/reconfig.hpp"
#include "domrecon/septree.hpp"
#include "domrecon/torus.hpp"
#include "oracles.hpp"

using namespace domrecon;

namespace {

int vertex_at(int k, long long x, long long y) { return torus_vertex_at(k, x, y); }

VertexSet with(VertexSet s, VertexId v) {
    s.insert(v);
    return s;
}

VertexSet without(VertexSet s, VertexId v) {
    s.erase(v);
    return s;
}

}  // namespace

TEST_SUITE("torus") {

TEST_CASE("construction for k = 4, 8") {
    for (int k : {4, 8}) {
        CAPTURE(k);
        const TorusInstance inst = build_torus(k);
        const std::size_t kk = static_cast<std::size_t>(k * k);
        CHECK(inst.graph.n() == 5 * kk);
        CHECK(is_regular(inst.graph, 4));
        CHECK(is_connected(inst.graph));
        CHECK(inst.d_box.size() == kk);
        CHECK(inst.d_circ.size() == kk);
        CHECK_FALSE(inst.d_box.intersects(inst.d_circ));
        CHECK(is_dominating(inst.graph, inst.d_box));
        CHECK(is_dominating(inst.graph, inst.d_circ));
        CHECK(inst.pairs.size() == kk);
        for (const auto& [u, v] : inst.pairs) CHECK(inst.graph.has_edge(u, v));
        CHECK_FALSE(inst.nonstandard_k);
    }
}

TEST_CASE("adjacency agrees with an independent union-find quotient") {
    for (int k : {2, 3, 4, 5, 8}) {
        CAPTURE(k);
        const TorusInstance inst = build_torus(k);
        const auto oracle_edges = oracle::torus_edges_union_find(k, vertex_at);
        const auto lib = inst.graph.edges();
        const std::set<std::pair<int, int>> lib_edges(lib.begin(), lib.end());
        CHECK(lib_edges == oracle_edges);
    }
}

TEST_CASE("canonical coordinates") {
    for (int k : {3, 4}) {
        for (long long x = -12; x <= 12; ++x) {
            for (long long y = -12; y <= 12; ++y) {
                const TorusCoord c = torus_canonical(k, x, y);
                CHECK(torus_canonical(k, x + 2 * k, y + k) == c);
                CHECK(torus_canonical(k, x - k, y + 2 * k) == c);
                const auto [rx, ry] = torus_representative(c);
                CHECK(torus_canonical(k, rx, ry) == c);
                CHECK(c.r == static_cast<int>(((x + 3 * y) % 5 + 5) % 5));
                const auto [px, py] = torus_grid_projection(k, c);
                CHECK(px == static_cast<int>(((x % k) + k) % k));
                CHECK(py == static_cast<int>(((y % k) + k) % k));
            }
        }
    }
}

TEST_CASE("pair graph is the k x k torus grid") {
    const TorusInstance inst = build_torus(4);
    CHECK(inst.h_graph.n() == 16);
    CHECK(is_regular(inst.h_graph, 4));
    CHECK(inst.h_graph == torus_grid_graph(4));
    CHECK(pair_graph_by_neighborhoods(inst.graph, inst.pairs).edges() == torus_grid_graph(4).edges());
    // girth 4: no triangles, and a 4-cycle through every node
    for (VertexId p = 0; p < 16; ++p) {
        for (VertexId a : inst.h_graph.neighbors(p)) {
            for (VertexId b : inst.h_graph.neighbors(p)) {
                if (a < b) CHECK_FALSE(inst.h_graph.has_edge(a, b));
            }
        }
    }
    const Graph& h = inst.h_graph;
    std::size_t squares = 0;
    for (VertexId a : h.neighbors(0)) {
        for (VertexId b : h.neighbors(0)) {
            if (a >= b) continue;
            for (VertexId c : h.neighbors(a)) {
                if (c != 0 && h.has_edge(c, b)) ++squares;
            }
        }
    }
    CHECK(squares > 0);
}

TEST_CASE("k below 2 is rejected") {
    CHECK_THROWS_AS(build_torus(1), InputError);
    CHECK_THROWS_AS(build_torus(0), InputError);
    CHECK(build_torus(6).nonstandard_k);
}

TEST_CASE("pair types and counts") {
    const TorusInstance inst = build_torus(4);
    const VertexSet both = inst.d_box | inst.d_circ;
    for (std::size_t p = 0; p < 16; ++p) {
        CHECK(classify_pair(inst, p, inst.d_box) == PairType::left);
        CHECK(classify_pair(inst, p, inst.d_circ) == PairType::right);
        CHECK(classify_pair(inst, p, both) == PairType::two);
    }
    CHECK(type_counts(inst, inst.d_box) == TypeCounts{16, 0, 0, 0});
    const auto [u_box, u_circ] = inst.pairs[5];
    CHECK(type_counts(inst, without(inst.d_box, u_box)) == TypeCounts{15, 0, 1, 0});
    CHECK(type_counts(inst, with(inst.d_box, u_circ)) == TypeCounts{15, 0, 0, 1});
}

TEST_CASE("first drop index") {
    const TorusInstance inst = build_torus(4);
    ReconfigSequence grow;
    grow.start = inst.d_box;
    for (VertexId v : (VertexSet::full(80) - inst.d_box - inst.d_circ).members()) grow.moves.push_back({MoveKind::add, v});
    CHECK_FALSE(first_drop_index(inst, grow).has_value());

    const SeparatorTree tree = build_tree(inst.graph, 0.5, GridCutStrategy(GridCoordinates::from_torus(inst)));
    const ReconfigSequence seq = transform(inst.graph, inst.d_box, inst.d_circ, tree);
    const auto drop = first_drop_index(inst, seq);
    REQUIRE(drop.has_value());
    CHECK(drop->counts.left == 14);
    const auto trace = type_count_trace(inst, seq);
    CHECK(trace.front() == TypeCounts{16, 0, 0, 0});
    CHECK(trace.back() == TypeCounts{0, 16, 0, 0});
    for (std::size_t i = 1; i < trace.size(); ++i) {
        for (PairType t : {PairType::left, PairType::right, PairType::zero, PairType::two}) {
            const auto a = static_cast<long>(trace[i][t]);
            const auto b = static_cast<long>(trace[i - 1][t]);
            CHECK(std::abs(a - b) <= 1);
        }
    }
    // Index is the first one at or below 14.
    for (std::size_t i = 0; i < drop->index; ++i) CHECK(trace[i].left > 14);

    const TorusInstance odd = build_torus(6);
    ReconfigSequence empty;
    empty.start = odd.d_box;
    CHECK_THROWS_AS(first_drop_index(odd, empty), ContractError);
    ReconfigSequence wrong;
    wrong.start = inst.d_circ;
    CHECK_THROWS_AS(first_drop_index(inst, wrong), ContractError);
}

TEST_CASE("boundary sets") {
    const TorusInstance inst = build_torus(4);
    const BoundarySets box = boundary_sets(inst, inst.d_box);
    CHECK(box.p_prime_left.empty());
    CHECK(box.p_star.size() == 16);
    CHECK(box.p_star_star.empty());

    const std::size_t p = 6;
    const BoundarySets holed = boundary_sets(inst, without(inst.d_box, inst.pairs[p].first));
    CHECK(holed.p_star.size() == 15);
    std::set<std::size_t> expected;
    for (VertexId q : inst.h_graph.neighbors(static_cast<VertexId>(p))) expected.insert(static_cast<std::size_t>(q));
    CHECK(std::set<std::size_t>(holed.p_star_star.begin(), holed.p_star_star.end()) == expected);

    const BoundarySets circ = boundary_sets(inst, inst.d_circ);
    CHECK(circ.p_prime_left.empty());
    CHECK(circ.p_star.empty());
    CHECK(circ.p_star_star.empty());
}

TEST_CASE("inefficiency") {
    const TorusInstance inst = build_torus(4);
    CHECK(inefficient_vertices(inst.graph, inst.d_box).empty());

    const VertexId extra = inst.pairs[0].second;
    const VertexSet d = with(inst.d_box, extra);
    const VertexSet bad = inefficient_vertices(inst.graph, d);
    CHECK(bad.contains(extra));
    const auto adj = oracle::adjacency(inst.graph);
    for (VertexId u : d.members()) {
        bool conflict = false;
        for (VertexId v : d.members()) {
            if (u == v) continue;
            for (std::size_t w = 0; w < 80; ++w) {
                const bool in_u = static_cast<VertexId>(w) == u || adj[w][u];
                const bool in_v = static_cast<VertexId>(w) == v || adj[w][v];
                conflict = conflict || (in_u && in_v);
            }
        }
        CHECK(bad.contains(u) == conflict);
    }

    const Graph c5 = oracle::cycle_graph(5);
    CHECK(inefficient_vertices(c5, VertexSet::from_ids(5, std::vector<VertexId>{0, 1})).size() == 2);
}

TEST_CASE("efficiency lower bound") {
    const TorusInstance inst = build_torus(4);
    CHECK(efficiency_lower_bound(inst.graph, inst.d_box, VertexSet(80)) == 16);

    const VertexSet d = with(inst.d_box, inst.pairs[0].second);
    const VertexSet spread = spread_subset(inst.graph, inefficient_vertices(inst.graph, d));
    CHECK_FALSE(spread.empty());
    CHECK(efficiency_lower_bound(inst.graph, d, spread) <= d.size());

    // Five inefficient vertices at pairwise distance >= 3.
    VertexSet many = inst.d_box;
    for (std::size_t p : {0u, 2u, 8u, 10u, 5u}) many.insert(inst.pairs[p].second);
    const VertexSet s5 = spread_subset(inst.graph, inefficient_vertices(inst.graph, many));
    REQUIRE(s5.size() >= 5);
    VertexSet five(80);
    for (VertexId v : s5.members()) {
        if (five.size() < 5) five.insert(v);
    }
    CHECK(efficiency_lower_bound(inst.graph, many, five) == 17);
    CHECK_THROWS_AS(efficiency_lower_bound(inst.graph, inst.d_box, VertexSet::from_ids(80, std::vector<VertexId>{0})),
                    ContractError);
    CHECK_THROWS_AS(efficiency_lower_bound(oracle::cycle_graph(5), VertexSet::full(5), VertexSet(5)), ContractError);
}

}
