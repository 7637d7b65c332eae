#include "domrecon/reconfig.hpp"

#include <algorithm>
#include <string>

#include "domrecon/errors.hpp"

namespace domrecon {

namespace {

// Current dominating set with per-vertex dominator counts, so that each move
// is checked in O(degree).
class MoveRecorder {
public:
    MoveRecorder(const Graph& g, const VertexSet& start) : g_(g), state_(start), dominators_(g.n(), 0) {
        state_.for_each([&](VertexId u) { bump(u, +1); });
        width_ = state_.size();
    }

    void add(VertexId v) {
        if (!state_.insert(v)) throw InvariantError("transform: adding vertex " + std::to_string(v) + " already present");
        bump(v, +1);
        moves_.push_back({MoveKind::add, v});
        width_ = std::max(width_, state_.size());
    }

    void remove(VertexId v) {
        if (!state_.erase(v)) throw InvariantError("transform: removing vertex " + std::to_string(v) + " not present");
        bump(v, -1);
        moves_.push_back({MoveKind::remove, v});
        if (undominated_ != 0) {
            throw InvariantError("transform: removing vertex " + std::to_string(v) + " at move " +
                                 std::to_string(moves_.size()) + " leaves the set non-dominating");
        }
    }

    const VertexSet& state() const { return state_; }
    std::size_t move_count() const { return moves_.size(); }
    std::size_t width() const { return width_; }
    std::vector<Move> take_moves() { return std::move(moves_); }

private:
    void bump(VertexId u, int delta) {
        auto touch = [&](VertexId w) {
            int& c = dominators_[static_cast<std::size_t>(w)];
            if (c == 0 && delta > 0) --undominated_;
            c += delta;
            if (c == 0 && delta < 0) ++undominated_;
        };
        touch(u);
        for (VertexId w : g_.neighbors(u)) touch(w);
    }

    const Graph& g_;
    VertexSet state_;
    std::vector<int> dominators_;
    // Starts at n and is decremented as vertices become dominated.
    long long undominated_ = static_cast<long long>(g_.n());
    std::vector<Move> moves_;
    std::size_t width_ = 0;
};

void require_dominating(const Graph& g, const VertexSet& s, const char* what) {
    if (s.universe() != g.n()) throw InputError(std::string(what) + ": universe does not match graph order");
    if (!is_dominating(g, s)) throw ContractError(std::string(what) + " is not a dominating set");
}

}  // namespace

VertexSet ReconfigSequence::end() const {
    VertexSet state = start;
    for (const Move& m : moves) {
        const bool ok = m.kind == MoveKind::add ? state.insert(m.vertex) : state.erase(m.vertex);
        if (!ok) throw InputError("move sequence is not applicable to its start set");
    }
    return state;
}

std::vector<std::size_t> ReconfigSequence::state_sizes() const {
    std::vector<std::size_t> sizes{start.size()};
    sizes.reserve(moves.size() + 1);
    for (const Move& m : moves) sizes.push_back(m.kind == MoveKind::add ? sizes.back() + 1 : sizes.back() - 1);
    return sizes;
}

ReconfigSequence ReconfigSequence::reversed() const {
    ReconfigSequence out;
    out.start = end();
    out.moves.reserve(moves.size());
    for (auto it = moves.rbegin(); it != moves.rend(); ++it) out.moves.push_back(it->inverse());
    for (auto it = checkpoints.rbegin(); it != checkpoints.rend(); ++it) {
        out.checkpoints.push_back({moves.size() - it->index, it->code, it->source_size});
    }
    out.width = width;
    out.guarantee = guarantee;
    return out;
}

VertexSet special_set(const Graph& g, const SeparatorTree& tree, const PathCode& code, const VertexSet& d,
                      const VertexSet& d_prime) {
    require_dominating(g, d, "special_set: d");
    require_dominating(g, d_prime, "special_set: d_prime");
    if (tree.n() != g.n()) throw InputError("special_set: tree universe does not match graph order");
    const auto sides = path_sets(tree, code);
    VertexSet out = sides.on_path | (sides.l_side & d_prime) | (sides.r_side & d);
    if (!is_dominating(g, out)) {
        throw InvariantError("special set for path " + code.to_string() + " is not dominating; the tree is malformed");
    }
    return out;
}

std::vector<PathCode> lex_path_iter(const SeparatorTree& tree) { return lex_path_codes(tree.depth()); }

std::size_t projected_move_count(const SeparatorTree& tree, const VertexSet& d, const VertexSet& d_prime) {
    const auto& nodes = tree.nodes();
    std::vector<std::size_t> outside_d(nodes.size());
    std::vector<std::size_t> outside_d_prime(nodes.size());
    for (std::size_t t = 0; t < nodes.size(); ++t) {
        outside_d[t] = (nodes[t].part - d).size();
        outside_d_prime[t] = (nodes[t].part - d_prime).size();
    }
    std::size_t total = 0;
    PathCode code(tree.depth());
    auto path = tree.path_nodes(code);
    for (std::size_t t : path) total += outside_d[t];
    while (auto next = code.next()) {
        const std::size_t split = *code.first_difference(*next);
        const auto next_path = tree.path_nodes(*next);
        for (std::size_t j = split + 1; j < path.size(); ++j) total += outside_d_prime[path[j]] + outside_d[next_path[j]];
        code = std::move(*next);
        path = next_path;
    }
    for (std::size_t t : path) total += outside_d_prime[t];
    return total;
}

ReconfigSequence transform(const Graph& g, const VertexSet& d, const VertexSet& d_prime, const SeparatorTree& tree,
                           const TransformOptions& options) {
    require_dominating(g, d, "transform: d");
    require_dominating(g, d_prime, "transform: d_prime");
    if (tree.n() != g.n()) throw InputError("transform: tree universe does not match graph order");

    const std::size_t weight = max_path_weight(tree);
    ReconfigSequence seq;
    seq.start = d;
    seq.guarantee = Guarantee{weight, std::max(d.size(), d_prime.size()) + 4 * weight, options.d_prime_minimum};
    if (d == d_prime) {
        seq.width = d.size();
        return seq;
    }
    const std::size_t projected = projected_move_count(tree, d, d_prime);
    if (projected > options.move_cap) {
        throw ResourceError("transform would emit " + std::to_string(projected) + " moves, above the cap of " +
                            std::to_string(options.move_cap));
    }

    MoveRecorder rec(g, d);
    auto add_part = [&](std::size_t t) { (tree.node(t).part - d).for_each([&](VertexId v) { rec.add(v); }); };
    auto remove_part = [&](std::size_t t) {
        (tree.node(t).part - d_prime).for_each([&](VertexId v) { rec.remove(v); });
    };
    auto checkpoint = [&](const PathCode& code) {
        if (rec.state() != special_set(g, tree, code, d, d_prime)) {
            throw InvariantError("transform: state at checkpoint " + code.to_string() + " is not the special set");
        }
        seq.checkpoints.push_back({rec.move_count(), code, d.size()});
    };

    PathCode code(tree.depth());
    auto path = tree.path_nodes(code);
    for (std::size_t t : path) add_part(t);
    checkpoint(code);
    while (auto next = code.next()) {
        const std::size_t split = *code.first_difference(*next);
        const auto next_path = tree.path_nodes(*next);
        for (std::size_t j = path.size() - 1; j > split; --j) remove_part(path[j]);
        for (std::size_t j = split + 1; j < next_path.size(); ++j) add_part(next_path[j]);
        code = std::move(*next);
        path = next_path;
        checkpoint(code);
    }
    for (std::size_t j = path.size(); j-- > 0;) remove_part(path[j]);
    if (rec.state() != d_prime) throw InvariantError("transform: final state differs from d_prime");

    seq.width = rec.width();
    seq.moves = rec.take_moves();
    return seq;
}

RouteResult route_via_minimum(const Graph& g, const VertexSet& d, const VertexSet& d_prime, const SeparatorTree& tree,
                              const RouteOptions& options) {
    require_dominating(g, d, "route_via_minimum: d");
    require_dominating(g, d_prime, "route_via_minimum: d_prime");
    RouteResult out;
    ExactOptions solver = options.solver;
    solver.hints.push_back(d);
    solver.hints.push_back(d_prime);
    try {
        auto exact = gamma_exact(g, solver);
        out.via = std::move(exact.set);
        out.via_certified_minimum = exact.certified;
    } catch (const ResourceError& e) {
        if (!options.greedy_fallback) {
            throw ResourceError(std::string(e.what()) +
                                "; rerun with the greedy fallback to route through a non-certified minimal set");
        }
        out.via = reduce_to_minimal(g, greedy_dominating(g));
        out.via_certified_minimum = false;
    }
    const TransformOptions topts{out.via_certified_minimum, options.move_cap};
    auto first = transform(g, d, out.via, tree, topts);
    auto second = transform(g, d_prime, out.via, tree, topts).reversed();

    ReconfigSequence& seq = out.sequence;
    seq.start = d;
    seq.moves = std::move(first.moves);
    seq.checkpoints = std::move(first.checkpoints);
    const std::size_t offset = seq.moves.size();
    seq.moves.insert(seq.moves.end(), second.moves.begin(), second.moves.end());
    for (auto cp : second.checkpoints) {
        cp.index += offset;
        seq.checkpoints.push_back(std::move(cp));
    }
    seq.width = std::max(first.width, second.width);
    if (out.via_certified_minimum) {
        const std::size_t weight = max_path_weight(tree);
        seq.guarantee = Guarantee{weight, std::max(d.size(), d_prime.size()) + 4 * weight, true};
    }
    return out;
}

VerifyReport verify_sequence(const Graph& g, const ReconfigSequence& seq) {
    VerifyReport report;
    auto fail = [&](std::size_t index, std::string msg) {
        report.valid = false;
        report.first_violation = index;
        report.message = std::move(msg);
        return report;
    };
    if (seq.start.universe() != g.n()) return fail(0, "start set universe does not match graph order");

    std::vector<int> dominators(g.n(), 0);
    std::size_t undominated_count = g.n();
    auto bump = [&](VertexId u, int delta) {
        auto touch = [&](VertexId w) {
            int& c = dominators[static_cast<std::size_t>(w)];
            if (c == 0 && delta > 0) --undominated_count;
            c += delta;
            if (c == 0 && delta < 0) ++undominated_count;
        };
        touch(u);
        for (VertexId w : g.neighbors(u)) touch(w);
    };
    VertexSet state = seq.start;
    state.for_each([&](VertexId u) { bump(u, +1); });
    report.width = state.size();
    if (undominated_count != 0) return fail(0, "start set is not dominating");

    for (std::size_t i = 0; i < seq.moves.size(); ++i) {
        const Move& m = seq.moves[i];
        const std::size_t index = i + 1;
        if (m.vertex < 0 || static_cast<std::size_t>(m.vertex) >= g.n()) {
            return fail(index, "move " + std::to_string(index) + " names vertex " + std::to_string(m.vertex) +
                                   " outside the graph");
        }
        if (m.kind == MoveKind::add) {
            if (!state.insert(m.vertex)) {
                return fail(index, "move " + std::to_string(index) + " adds vertex " + std::to_string(m.vertex) +
                                       " which is already present");
            }
            bump(m.vertex, +1);
        } else {
            if (!state.erase(m.vertex)) {
                return fail(index, "move " + std::to_string(index) + " removes vertex " + std::to_string(m.vertex) +
                                       " which is absent");
            }
            bump(m.vertex, -1);
        }
        report.width = std::max(report.width, state.size());
        if (undominated_count != 0) {
            return fail(index, "state after move " + std::to_string(index) + " is not dominating");
        }
    }
    report.end = std::move(state);
    return report;
}

CheckpointAudit audit_checkpoints(const ReconfigSequence& seq, std::size_t max_path_weight) {
    CheckpointAudit audit;
    const auto sizes = seq.state_sizes();
    std::vector<std::size_t> marks;
    for (const auto& cp : seq.checkpoints) {
        marks.push_back(cp.index);
        if (sizes.at(cp.index) > cp.source_size + 2 * max_path_weight) audit.checkpoint_violations.push_back(cp.index);
    }
    std::sort(marks.begin(), marks.end());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        std::size_t nearest = sizes.size();
        auto it = std::lower_bound(marks.begin(), marks.end(), i);
        if (it != marks.end()) nearest = std::min(nearest, *it - i);
        if (it != marks.begin()) nearest = std::min(nearest, i - *std::prev(it));
        if (marks.empty()) nearest = seq.moves.empty() ? 0 : seq.moves.size();
        audit.max_checkpoint_distance = std::max(audit.max_checkpoint_distance, nearest);
    }
    const std::size_t widest = *std::max_element(sizes.begin(), sizes.end());
    const std::size_t bound = std::max(sizes.front(), sizes.back()) + 4 * max_path_weight;
    audit.width_within_bound = widest <= bound;
    return audit;
}

}  // namespace domrecon
