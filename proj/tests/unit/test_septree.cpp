#include <doctest.h>

#include <cmath>

#include "domrecon/errors.hpp"
#include "domrecon/generators.hpp"
#include "domrecon/septree.hpp"
#include "domrecon/serialize.hpp"
#include "domrecon/torus.hpp"
#include "oracles.hpp"

using namespace domrecon;

namespace {

Graph labelled_path(std::size_t n) {
    std::vector<Edge> edges;
    std::map<VertexId, std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
        labels[static_cast<VertexId>(i)] = std::to_string(i) + ",0";
        if (i + 1 < n) edges.emplace_back(i, i + 1);
    }
    return Graph(n, edges, labels);
}

// Independent scan of property (iv).
bool ancestor_edges_ok(const Graph& g, const SeparatorTree& tree) {
    std::vector<std::size_t> owner(g.n());
    for (std::size_t t = 0; t < tree.nodes().size(); ++t) {
        for (VertexId v : tree.node(t).part.members()) owner[v] = t;
    }
    auto above = [&](std::size_t a, std::size_t b) {
        for (std::optional<std::size_t> t = b; t; t = tree.node(*t).parent) {
            if (*t == a) return true;
        }
        return false;
    };
    for (const auto& [u, v] : g.edges()) {
        const std::size_t a = owner[u], b = owner[v];
        if (a != b && !above(a, b) && !above(b, a)) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("septree") {

TEST_CASE("grid-cut on P9 takes the midpoint") {
    const Graph p9 = labelled_path(9);
    const auto strategy = make_strategy("grid-cut", p9);
    const BalancedSeparator sep = find_separator(p9, VertexSet::full(9), *strategy);
    CHECK(sep.s.members() == std::vector<VertexId>{4});
    CHECK(sep.a.size() == 4);
    CHECK(sep.b.size() == 4);
    CHECK(sep.a.contains(0));
}

TEST_CASE("grid-cut on the k=4 torus") {
    const TorusInstance inst = build_torus(4);
    const GridCutStrategy strategy(GridCoordinates::from_torus(inst));
    const VertexSet all = VertexSet::full(80);
    const BalancedSeparator sep = find_separator(inst.graph, all, strategy);
    CHECK(is_balanced_separator(inst.graph, all, sep));
    // a coordinate line holds n/k = 20 vertices
    CHECK(sep.s.size() <= 2 * 2 * 20);
    CHECK(3 * sep.a.size() <= 2 * 80);
    CHECK(3 * sep.b.size() <= 2 * 80);
    const auto from_labels = GridCoordinates::from_labels(inst.graph);
    REQUIRE(from_labels.has_value());
    CHECK(from_labels->period == 4);
    CHECK(from_labels->xy == GridCoordinates::from_torus(inst).xy);
}

TEST_CASE("empty separator for balanced components") {
    const Graph g(6, std::vector<Edge>{{0, 1}, {2, 3}, {4, 5}});
    for (const std::string name : {"bfs-level", "exact"}) {
        const auto strategy = make_strategy(name, g);
        const BalancedSeparator sep = find_separator(g, VertexSet::full(6), *strategy);
        CHECK(sep.s.empty());
        CHECK(is_balanced_separator(g, VertexSet::full(6), sep));
    }
}

TEST_CASE("exact strategy is minimum") {
    const Graph c6 = oracle::cycle_graph(6);
    const ExactSeparatorStrategy exact;
    const BalancedSeparator sep = find_separator(c6, VertexSet::full(6), exact);
    CHECK(sep.s.size() == 2);
    Rng rng(3);
    const Graph big = random_connected_graph(30, 0.1, rng);
    CHECK_THROWS_AS(exact.separate(big, VertexSet::full(30)), ResourceError);
}

TEST_CASE("strategy selection") {
    const Graph c5 = oracle::cycle_graph(5);
    CHECK_THROWS_AS(make_strategy("grid-cut", c5), InputError);
    CHECK_THROWS_AS(make_strategy("nope", c5), InputError);
    CHECK(make_strategy("bfs-level", c5)->name() == "bfs-level");
}

TEST_CASE("single-node tree") {
    const Graph c5 = oracle::cycle_graph(5);
    const SeparatorTree tree = build_tree(c5, 0.99, BfsLevelStrategy());
    CHECK(tree.nodes().size() == 1);
    CHECK(max_path_weight(tree) == 5);
    const PathSets ps = path_sets(tree, PathCode(std::vector<std::uint8_t>{}));
    CHECK(ps.on_path == VertexSet::full(5));
    CHECK(ps.l_side.empty());
    CHECK(ps.r_side.empty());
    CHECK(measured_c2(tree) == 0.0);
}

TEST_CASE("P9 trees") {
    const Graph p9 = labelled_path(9);
    for (const std::string name : {"grid-cut", "bfs-level", "exact"}) {
        CAPTURE(name);
        const auto strategy = make_strategy(name, p9);
        const SeparatorTree tree = build_tree(p9, 0.5, *strategy);
        CHECK(tree.depth() >= 1);
        CHECK(tree.leaf_threshold() == 3);
        for (const auto& node : tree.nodes()) {
            if (node.is_leaf()) CHECK(node.part.size() <= 3);
        }
        CHECK(max_path_weight(tree) <= 5);
        CHECK(check_tree(p9, tree).ok());
    }
}

TEST_CASE("k=8 torus tree satisfies the ancestor property") {
    const TorusInstance inst = build_torus(8);
    const SeparatorTree tree = build_tree(inst.graph, 0.5, GridCutStrategy(GridCoordinates::from_torus(inst)));
    CHECK(inst.graph.edges().size() == 640);
    CHECK(ancestor_edges_ok(inst.graph, tree));
    CHECK(check_tree(inst.graph, tree).ok());
}

TEST_CASE("c3 constant") {
    CHECK(c3_constant(1.0, 0.5) == doctest::Approx(6.4495).epsilon(1e-4));
    CHECK(c3_constant(1.0, 0.5) == doctest::Approx(1.0 / (1.0 - std::sqrt(2.0 / 3.0)) + 1.0));
}

TEST_CASE("leaf threshold") {
    CHECK(leaf_threshold_for(9, 0.5) == 3);
    CHECK(leaf_threshold_for(10, 0.5) == 4);
    CHECK(leaf_threshold_for(80, 0.5) == 9);
    CHECK(leaf_threshold_for(1, 0.5) == 1);
    const Graph c5 = oracle::cycle_graph(5);
    CHECK_THROWS_AS(build_tree(c5, 0.0, BfsLevelStrategy()), InputError);
    CHECK_THROWS_AS(build_tree(c5, 1.0, BfsLevelStrategy()), InputError);
}

TEST_CASE("path sets match the tree walk on a depth-9 tree") {
    const SeparatorTree tree = oracle::complete_tree(9);
    for (const std::string code : {"011010010", "000000000", "111111111", "010101010", "100000001"}) {
        CAPTURE(code);
        const PathSets ps = path_sets(tree, PathCode::parse(code));
        const oracle::Sides sides = oracle::path_sides(tree, code);
        auto ids = [&](const std::set<std::size_t>& nodes) {
            VertexSet s(tree.n());
            for (std::size_t t : nodes) s |= tree.node(t).part;
            return s;
        };
        CHECK(ps.on_path == ids(sides.on_path));
        CHECK(ps.l_side == ids(sides.left));
        CHECK(ps.r_side == ids(sides.right));
        CHECK((ps.on_path | ps.l_side | ps.r_side) == VertexSet::full(tree.n()));
        CHECK_FALSE(ps.on_path.intersects(ps.l_side));
        CHECK_FALSE(ps.l_side.intersects(ps.r_side));
    }
    const PathSets zeros = path_sets(tree, PathCode(9, 0));
    CHECK(zeros.l_side.empty());
    CHECK(zeros.r_side.size() == tree.n() - 10);
    CHECK_THROWS_AS(path_sets(tree, PathCode(3, 0)), InputError);
}

TEST_CASE("random 15-node tree: all-zeros code collects every 1-subtree") {
    Rng rng(15);
    const Graph g = random_connected_graph(15, 0.15, rng);
    const SeparatorTree tree = build_tree(g, 0.3, BfsLevelStrategy());
    const std::string zeros(tree.depth(), '0');
    const oracle::Sides sides = oracle::path_sides(tree, zeros);
    CHECK(sides.left.empty());
    const PathSets ps = path_sets(tree, PathCode(tree.depth(), 0));
    CHECK(ps.r_side == VertexSet::full(15) - ps.on_path);
}

TEST_CASE("tree shape validation") {
    std::vector<TreeNode> nodes(2);
    nodes[0].part = VertexSet::full(3);
    nodes[0].child0 = 1;
    nodes[1].part = VertexSet(3);
    nodes[1].parent = 0;
    nodes[1].depth = 1;
    CHECK_THROWS_AS(SeparatorTree(3, nodes, 0.5, 2, "manual"), InputError);
}

TEST_CASE("tree json round trip") {
    const TorusInstance inst = build_torus(4);
    const SeparatorTree tree = build_tree(inst.graph, 0.5, GridCutStrategy(GridCoordinates::from_torus(inst)));
    const Json j = tree_to_json(tree);
    CHECK(j.at("max_path_weight") == max_path_weight(tree));
    CHECK(j.at("root") == 0);
    const SeparatorTree back = tree_from_json(j, 80);
    REQUIRE(back.nodes().size() == tree.nodes().size());
    for (std::size_t i = 0; i < tree.nodes().size(); ++i) {
        CHECK(back.node(i).part == tree.node(i).part);
        CHECK(back.node(i).child0 == tree.node(i).child0);
        CHECK(back.node(i).depth == tree.node(i).depth);
    }
    CHECK(back.strategy() == tree.strategy());
    CHECK_THROWS_AS(tree_from_json(j, 81), ParseError);
}

TEST_CASE("random graphs: every strategy builds a valid tree") {
    Rng rng(21);
    for (int i = 0; i < 40; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i % 16);
        const Graph g = random_connected_graph(n, 0.15, rng);
        for (const std::string name : {"bfs-level", "exact"}) {
            CAPTURE(i);
            CAPTURE(name);
            const SeparatorTree tree = build_tree(g, 0.5, *make_strategy(name, g));
            const TreeCheck check = check_tree(g, tree);
            CHECK(check.ok());
            CHECK(ancestor_edges_ok(g, tree));
            VertexSet all(n);
            std::size_t total = 0;
            for (const auto& node : tree.nodes()) {
                all |= node.part;
                total += node.part.size();
            }
            CHECK(all == VertexSet::full(n));
            CHECK(total == n);
            for (const PathCode& code : lex_path_codes(tree.depth())) {
                const PathSets ps = path_sets(tree, code);
                for (const auto& [u, v] : g.edges()) {
                    const bool cross = (ps.l_side.contains(u) && ps.r_side.contains(v)) ||
                                       (ps.r_side.contains(u) && ps.l_side.contains(v));
                    CHECK_FALSE(cross);
                }
            }
        }
    }
}

}
