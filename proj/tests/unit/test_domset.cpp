#include <doctest.h>

#include "domrecon/domset.hpp"
#include "domrecon/errors.hpp"
#include "domrecon/generators.hpp"
#include "domrecon/torus.hpp"
#include "oracles.hpp"

using namespace domrecon;

TEST_SUITE("domset") {

TEST_CASE("exact gamma on small fixtures") {
    const Graph c5 = oracle::cycle_graph(5);
    const ExactResult r = gamma_exact(c5);
    CHECK(r.size == oracle::gamma(c5));
    CHECK(r.size == 2);
    CHECK(r.certified);
    CHECK(is_dominating(c5, r.set));

    const ExactResult k1 = gamma_exact(Graph(1, {}));
    CHECK(k1.size == 1);
    CHECK(k1.set.members() == std::vector<VertexId>{0});
}

TEST_CASE("exact gamma on the k=4 torus is certified by the degree bound") {
    const TorusInstance t4 = build_torus(4);
    const ExactResult r = gamma_exact(t4.graph, {.hints = {t4.d_box}});
    CHECK(r.size == 16);
    CHECK(r.certified);
    CHECK(r.method == "lower-bound");
    CHECK(r.nodes == 0);
    // Without hints the greedy incumbent has to meet the bound on its own.
    ExactOptions none;
    none.budget = 1000;
    try {
        const ExactResult plain = gamma_exact(t4.graph, none);
        CHECK(plain.size == 16);
    } catch (const BudgetExceeded& e) {
        CHECK(is_dominating(t4.graph, e.incumbent()));
    }
}

TEST_CASE("lower bound formula") {
    CHECK(gamma_lower_bound_regular(build_torus(8).graph) == 64);
    CHECK(gamma_lower_bound_regular(oracle::cycle_graph(5)) == 2);
    CHECK(gamma_lower_bound_regular(oracle::path_graph(3)) == 1);
}

TEST_CASE("greedy") {
    CHECK(greedy_dominating(Graph(3, {})).size() == 3);
    const Graph c5 = oracle::cycle_graph(5);
    const VertexSet g5 = greedy_dominating(c5);
    CHECK(is_dominating(c5, g5));
    CHECK(g5.size() <= 3);
    const TorusInstance t4 = build_torus(4);
    const VertexSet gt = greedy_dominating(t4.graph);
    CHECK(is_dominating(t4.graph, gt));
    CHECK(gt.size() >= 16);
    CHECK(greedy_dominating(c5, GreedyTieBreak::lowest_id) == greedy_dominating(c5, GreedyTieBreak::lowest_id));
}

TEST_CASE("reduce to minimal") {
    const Graph c5 = oracle::cycle_graph(5);
    const VertexSet r = reduce_to_minimal(c5, VertexSet::full(5));
    CHECK(r.size() == 2);
    CHECK(is_minimal_dominating(c5, r));
    CHECK(reduce_to_minimal(c5, r) == r);
    const TorusInstance t4 = build_torus(4);
    CHECK(reduce_to_minimal(t4.graph, t4.d_box) == t4.d_box);
    CHECK_THROWS_AS(reduce_to_minimal(c5, VertexSet::from_ids(5, std::vector<VertexId>{0})), ContractError);
}

TEST_CASE("budget and size guards") {
    Rng rng(7);
    const Graph g = random_connected_graph(40, 0.05, rng);
    ExactOptions tiny;
    tiny.budget = 1;
    try {
        const ExactResult r = gamma_exact(g, tiny);
        CHECK(r.certified);
    } catch (const BudgetExceeded& e) {
        CHECK(is_dominating(g, e.incumbent()));
    }
    Rng rng2(8);
    const Graph big = random_connected_graph(70, 0.02, rng2);
    CHECK_THROWS_AS(gamma_exact(big), ResourceError);
}

TEST_CASE("random graphs against enumeration") {
    Rng rng(11);
    for (int i = 0; i < 60; ++i) {
        const std::size_t n = 1 + static_cast<std::size_t>(i % 12);
        const Graph g = random_connected_graph(n, 0.2, rng);
        const ExactResult r = gamma_exact(g);
        CAPTURE(i);
        CHECK(r.size == oracle::gamma(g));
        CHECK(is_dominating(g, r.set));
        CHECK(gamma_lower_bound_regular(g) <= r.size);
        const VertexSet m = reduce_to_minimal(g, greedy_dominating(g));
        CHECK(is_minimal_dominating(g, m));
        for (VertexId v : m.members()) {
            VertexSet smaller = m;
            smaller.erase(v);
            CHECK_FALSE(is_dominating(g, smaller));
        }
        CHECK(upper_domination_exhaustive(g) == oracle::upper_gamma(g));
    }
}

}
