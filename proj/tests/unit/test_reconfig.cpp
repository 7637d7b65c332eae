#include <doctest.h>

#include "domrecon/errors.hpp"
#include "domrecon/exactgap.hpp"
#include "domrecon/generators.hpp"
#include "domrecon/reconfig.hpp"
#include "domrecon/serialize.hpp"
#include "domrecon/torus.hpp"
#include "oracles.hpp"

using namespace domrecon;

namespace {

VertexSet ids(std::size_t n, std::vector<VertexId> v) { return VertexSet::from_ids(n, v); }

Graph labelled_path(std::size_t n) {
    std::vector<Edge> edges;
    std::map<VertexId, std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
        labels[static_cast<VertexId>(i)] = std::to_string(i) + ",0";
        if (i + 1 < n) edges.emplace_back(i, i + 1);
    }
    return Graph(n, edges, labels);
}

SeparatorTree torus_tree(const TorusInstance& inst) {
    return build_tree(inst.graph, 0.5, GridCutStrategy(GridCoordinates::from_torus(inst)));
}

void check_sound(const Graph& g, const ReconfigSequence& seq, const VertexSet& from, const VertexSet& to) {
    CHECK(seq.start == from);
    const auto sizes = oracle::replay(g, seq);
    REQUIRE(sizes.has_value());
    CHECK(oracle::replay_end(seq) == oracle::to_std(to));
    CHECK(*std::max_element(sizes->begin(), sizes->end()) == seq.width);
    const VerifyReport report = verify_sequence(g, seq);
    CHECK(report.valid);
    CHECK(report.width == seq.width);
    CHECK(report.end == to);
}

}  // namespace

TEST_SUITE("reconfig") {

TEST_CASE("lexicographic path codes") {
    std::vector<std::string> two;
    for (const auto& c : lex_path_codes(2)) two.push_back(c.to_string());
    CHECK(two == std::vector<std::string>{"00", "01", "10", "11"});
    for (std::size_t d = 0; d <= 10; ++d) CHECK(lex_path_codes(d).size() == (std::size_t{1} << d));
    CHECK(lex_path_codes(0).front().to_string().empty());
    CHECK(PathCode::parse("0111").next()->to_string() == "1000");
    CHECK_FALSE(PathCode::parse("111").next().has_value());
    CHECK_THROWS_AS(PathCode::parse("012"), InputError);
}

TEST_CASE("consecutive codes share a prefix then read 0 1..1 and 1 0..0") {
    const auto codes = lex_path_codes(9);
    for (std::size_t i = 0; i + 1 < codes.size(); ++i) {
        const auto& p = codes[i];
        const auto& q = codes[i + 1];
        const auto b = p.first_difference(q);
        REQUIRE(b.has_value());
        CHECK(p[*b] == 0);
        CHECK(q[*b] == 1);
        for (std::size_t j = *b + 1; j < 9; ++j) {
            CHECK(p[j] == 1);
            CHECK(q[j] == 0);
        }
    }
    // a consecutive pair branching at index 5
    const PathCode p = PathCode::parse("010110111");
    const PathCode q = PathCode::parse("010111000");
    CHECK(p.next() == q);
    CHECK(p.first_difference(q) == 5u);
}

TEST_CASE("lex_path_iter enumerates the tree's codes") {
    const SeparatorTree tree = oracle::complete_tree(3);
    const auto codes = lex_path_iter(tree);
    CHECK(codes.size() == 8);
    CHECK(std::is_sorted(codes.begin(), codes.end()));
}

TEST_CASE("special sets") {
    const Graph c5 = oracle::cycle_graph(5);
    const SeparatorTree single = build_tree(c5, 0.99, BfsLevelStrategy());
    const VertexSet d = ids(5, {0, 2});
    const VertexSet dp = ids(5, {1, 3});
    CHECK(special_set(c5, single, PathCode(0, 0), d, dp) == VertexSet::full(5));

    const Graph p5 = labelled_path(5);
    const SeparatorTree tree = build_tree(p5, 0.5, *make_strategy("grid-cut", p5));
    REQUIRE(tree.depth() == 1);
    const VertexSet pd = ids(5, {0, 3});
    const VertexSet pdp = ids(5, {1, 3});
    for (const std::string code : {"0", "1"}) {
        const PathSets ps = path_sets(tree, PathCode::parse(code));
        const VertexSet expected = ps.on_path | (ps.l_side & pdp) | (ps.r_side & pd);
        const VertexSet got = special_set(p5, tree, PathCode::parse(code), pd, pdp);
        CHECK(got == expected);
        CHECK(is_dominating(p5, got));
    }
    // The all-zeros set keeps d on the 1-side; the all-ones set keeps d' on the 0-side.
    const VertexSet zero = special_set(p5, tree, PathCode::parse("0"), pd, pdp);
    CHECK(zero == (tree.node(0).part | tree.node(*tree.node(0).child0).part | (tree.node(*tree.node(0).child1).part & pd)));
    CHECK_THROWS_AS(special_set(p5, tree, PathCode::parse("0"), ids(5, {0}), pdp), ContractError);
}

TEST_CASE("special set on the k=4 torus stays within 2W") {
    const TorusInstance inst = build_torus(4);
    const SeparatorTree tree = torus_tree(inst);
    const std::size_t w = max_path_weight(tree);
    for (const PathCode& code : lex_path_iter(tree)) {
        const VertexSet s = special_set(inst.graph, tree, code, inst.d_box, inst.d_circ);
        CHECK(is_dominating(inst.graph, s));
        CHECK(s.size() <= inst.d_box.size() + 2 * w);
    }
}

TEST_CASE("identity transform") {
    const Graph c5 = oracle::cycle_graph(5);
    const SeparatorTree tree = build_tree(c5, 0.5, BfsLevelStrategy());
    const VertexSet d = ids(5, {0, 2});
    const ReconfigSequence seq = transform(c5, d, d, tree);
    CHECK(seq.moves.empty());
    CHECK(seq.width == 2);
}

TEST_CASE("P5 with a midpoint tree") {
    const Graph p5 = labelled_path(5);
    const SeparatorTree tree = build_tree(p5, 0.5, *make_strategy("grid-cut", p5));
    CHECK(tree.node(0).part.members() == std::vector<VertexId>{2});
    const VertexSet d = ids(5, {0, 3});
    const VertexSet dp = ids(5, {1, 3});
    const ReconfigSequence seq = transform(p5, d, dp, tree, {.d_prime_minimum = true});
    check_sound(p5, seq, d, dp);
    const std::size_t w = max_path_weight(tree);
    CHECK(w == 3);
    CHECK(seq.width <= 2 + 4 * w);
    // D(P) for code 0 is {0,1,2,3}.
    CHECK(seq.width == 4);
    // A width-3 sequence exists; the oracle finds it.
    const GapReport gap = exact_gap(p5, d, dp);
    CHECK(gap.gap <= 1);
    CHECK(gap.witness.width <= 3);
    CHECK(oracle::k_star(p5, oracle::to_std(d), oracle::to_std(dp)) == gap.k_star);
    CHECK(seq.width - 2 >= gap.gap);
}

TEST_CASE("k=4 torus end to end") {
    const TorusInstance inst = build_torus(4);
    const SeparatorTree tree = torus_tree(inst);
    const std::size_t w = max_path_weight(tree);
    const ReconfigSequence seq = transform(inst.graph, inst.d_box, inst.d_circ, tree, {.d_prime_minimum = true});
    check_sound(inst.graph, seq, inst.d_box, inst.d_circ);
    CHECK(seq.width <= 16 + 4 * w);
    REQUIRE(seq.guarantee.has_value());
    CHECK(seq.guarantee->bound == 16 + 4 * w);
    CHECK(seq.checkpoints.size() == lex_path_iter(tree).size());
    const CheckpointAudit audit = audit_checkpoints(seq, w);
    CHECK(audit.checkpoint_violations.empty());
    CHECK(audit.width_within_bound);
    CHECK(audit.max_checkpoint_distance <= 2 * w);
    for (const auto& cp : seq.checkpoints) {
        ReconfigSequence prefix = seq;
        prefix.moves.resize(cp.index);
        CHECK(prefix.end() == special_set(inst.graph, tree, cp.code, inst.d_box, inst.d_circ));
    }
    CHECK(projected_move_count(tree, inst.d_box, inst.d_circ) == seq.moves.size());
}

TEST_CASE("move cap") {
    const TorusInstance inst = build_torus(4);
    const SeparatorTree tree = torus_tree(inst);
    CHECK_THROWS_AS(transform(inst.graph, inst.d_box, inst.d_circ, tree, {.move_cap = 3}), ResourceError);
}

TEST_CASE("C5 routed via a minimum set") {
    const Graph c5 = oracle::cycle_graph(5);
    const SeparatorTree tree = build_tree(c5, 0.5, BfsLevelStrategy());
    const VertexSet d = ids(5, {0, 2});
    const VertexSet dp = ids(5, {1, 4});
    const RouteResult r = route_via_minimum(c5, d, dp, tree);
    check_sound(c5, r.sequence, d, dp);
    CHECK(r.via_certified_minimum);
    CHECK(r.via.size() == 2);
    CHECK(r.sequence.guarantee.has_value());
    CHECK(r.sequence.width <= 2 + 4 * max_path_weight(tree));
    CHECK(r.sequence.width == 4);
    const GapReport gap = exact_gap(c5, d, dp);
    CHECK(gap.witness.width <= 3);
    CHECK(r.sequence.width - 2 >= gap.gap);
}

TEST_CASE("route with an already minimum target") {
    const TorusInstance inst = build_torus(4);
    const SeparatorTree tree = torus_tree(inst);
    RouteOptions opts;
    opts.solver.hints = {inst.d_circ};
    const RouteResult r = route_via_minimum(inst.graph, inst.d_box, inst.d_circ, tree, opts);
    CHECK(r.via_certified_minimum);
    check_sound(inst.graph, r.sequence, inst.d_box, inst.d_circ);
    CHECK(r.sequence.width <= 16 + 4 * max_path_weight(tree));
}

TEST_CASE("reversal") {
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        const Graph g = random_connected_graph(6 + static_cast<std::size_t>(i % 8), 0.2, rng);
        const VertexSet x = random_dominating_set(g, rng);
        const VertexSet y = random_minimal_dominating_set(g, rng);
        const SeparatorTree tree = build_tree(g, 0.5, BfsLevelStrategy());
        const ReconfigSequence fwd = transform(g, x, y, tree);
        const ReconfigSequence back = fwd.reversed();
        check_sound(g, back, y, x);
        CHECK(back.width == fwd.width);
        CHECK(back.reversed().moves == fwd.moves);
    }
}

TEST_CASE("verification finds the breaking move") {
    const Graph c5 = oracle::cycle_graph(5);
    ReconfigSequence seq;
    seq.start = ids(5, {0, 2});
    seq.moves = {{MoveKind::add, 3}, {MoveKind::remove, 0}};
    const VerifyReport bad = verify_sequence(c5, seq);
    CHECK_FALSE(bad.valid);
    CHECK(bad.first_violation == 2u);

    seq.moves = {{MoveKind::add, 0}};
    CHECK_FALSE(verify_sequence(c5, seq).valid);
    seq.moves = {{MoveKind::add, 9}};
    CHECK_FALSE(verify_sequence(c5, seq).valid);
    seq.start = ids(5, {0});
    seq.moves.clear();
    const VerifyReport start = verify_sequence(c5, seq);
    CHECK_FALSE(start.valid);
    CHECK(start.first_violation == 0u);
}

TEST_CASE("sequence json round trip") {
    const TorusInstance inst = build_torus(4);
    const ReconfigSequence seq = transform(inst.graph, inst.d_box, inst.d_circ, torus_tree(inst), {.d_prime_minimum = true});
    const Json j = sequence_to_json(seq);
    const ReconfigSequence back = sequence_from_json(j, 80);
    CHECK(back.start == seq.start);
    CHECK(back.moves == seq.moves);
    CHECK(back.checkpoints == seq.checkpoints);
    CHECK(back.width == seq.width);
    REQUIRE(back.guarantee.has_value());
    CHECK(back.guarantee->bound == seq.guarantee->bound);
    CHECK(sequence_to_json(back) == j);

    Json broken = j;
    broken["moves"][0]["op"] = "flip";
    CHECK_THROWS_AS(sequence_from_json(broken, 80), ParseError);
}

TEST_CASE("contract errors") {
    const Graph c5 = oracle::cycle_graph(5);
    const SeparatorTree tree = build_tree(c5, 0.5, BfsLevelStrategy());
    CHECK_THROWS_AS(transform(c5, ids(5, {0}), ids(5, {0, 2}), tree), ContractError);
    CHECK_THROWS_AS(transform(c5, ids(5, {0, 2}), ids(5, {0}), tree), ContractError);
}

}
