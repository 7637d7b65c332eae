#include "domrecon/torus.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "domrecon/errors.hpp"

namespace domrecon {

namespace {

long long floor_mod(long long a, long long m) {
    const long long r = a % m;
    return r < 0 ? r + m : r;
}

// Lattice generators of the perfect code x + 3y = 0 (mod 5).
constexpr std::array<std::array<int, 2>, 2> kGenerators{{{2, 1}, {-1, 2}}};
constexpr std::array<std::array<int, 2>, 4> kSteps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

void require(bool condition, const std::string& what) {
    if (!condition) throw InvariantError("torus construction: " + what);
}

VertexId coord_to_id(int k, const TorusCoord& c) { return static_cast<VertexId>((c.s * k + c.t) * 5 + c.r); }

struct PairRole {
    std::size_t pair = 0;
    bool box = false;
    bool member = false;
};

std::vector<PairRole> pair_roles(const TorusInstance& inst) {
    std::vector<PairRole> roles(inst.graph.n());
    for (std::size_t p = 0; p < inst.pairs.size(); ++p) {
        roles[static_cast<std::size_t>(inst.pairs[p].first)] = {p, true, true};
        roles[static_cast<std::size_t>(inst.pairs[p].second)] = {p, false, true};
    }
    return roles;
}

PairType type_of(bool has_box, bool has_circ) {
    if (has_box && has_circ) return PairType::two;
    if (has_box) return PairType::left;
    if (has_circ) return PairType::right;
    return PairType::zero;
}

}  // namespace

TorusCoord torus_canonical(int k, long long x, long long y) {
    const long long r = floor_mod(x + 3 * y, 5);
    const long long base_x = x - r;
    return {static_cast<int>(floor_mod((2 * base_x + y) / 5, k)), static_cast<int>(floor_mod((2 * y - base_x) / 5, k)),
            static_cast<int>(r)};
}

VertexId torus_vertex_at(int k, long long x, long long y) { return coord_to_id(k, torus_canonical(k, x, y)); }

std::pair<long long, long long> torus_representative(const TorusCoord& c) {
    return {2LL * c.s - c.t + c.r, static_cast<long long>(c.s) + 2LL * c.t};
}

std::pair<int, int> torus_grid_projection(int k, const TorusCoord& c) {
    const auto [x, y] = torus_representative(c);
    return {static_cast<int>(floor_mod(x, k)), static_cast<int>(floor_mod(y, k))};
}

Graph torus_grid_graph(int k) {
    std::set<Edge> edges;
    for (int s = 0; s < k; ++s) {
        for (int t = 0; t < k; ++t) {
            const auto p = static_cast<VertexId>(s * k + t);
            const auto right = static_cast<VertexId>(((s + 1) % k) * k + t);
            const auto up = static_cast<VertexId>(s * k + (t + 1) % k);
            for (VertexId q : {right, up}) {
                if (q != p) edges.insert({std::min(p, q), std::max(p, q)});
            }
        }
    }
    std::vector<Edge> list(edges.begin(), edges.end());
    return Graph(static_cast<std::size_t>(k) * static_cast<std::size_t>(k), list);
}

Graph pair_graph_by_neighborhoods(const Graph& g, const std::vector<std::pair<VertexId, VertexId>>& pairs) {
    std::vector<VertexSet> unions;
    unions.reserve(pairs.size());
    for (const auto& [a, b] : pairs) unions.push_back(closed_neighborhood(g, a) | closed_neighborhood(g, b));
    // Bucket pairs by the vertices their union covers, then intersect only
    // pairs sharing a bucket.
    std::vector<std::vector<std::size_t>> covering(g.n());
    for (std::size_t p = 0; p < unions.size(); ++p) {
        unions[p].for_each([&](VertexId v) { covering[static_cast<std::size_t>(v)].push_back(p); });
    }
    std::set<Edge> edges;
    for (const auto& bucket : covering) {
        for (std::size_t i = 0; i < bucket.size(); ++i) {
            for (std::size_t j = i + 1; j < bucket.size(); ++j) {
                const auto p = static_cast<VertexId>(std::min(bucket[i], bucket[j]));
                const auto q = static_cast<VertexId>(std::max(bucket[i], bucket[j]));
                if (p != q) edges.insert({p, q});
            }
        }
    }
    std::vector<Edge> list(edges.begin(), edges.end());
    return Graph(pairs.size(), list);
}

TorusInstance build_torus(int k) {
    if (k < 2) throw InputError("torus side length must be at least 2, got " + std::to_string(k));
    for (const auto& gen : kGenerators) require((gen[0] + 3 * gen[1]) % 5 == 0, "x+3y is not invariant under a generator");

    TorusInstance inst;
    inst.k = k;
    inst.nonstandard_k = k % 4 != 0;
    const std::size_t n = 5 * static_cast<std::size_t>(k) * static_cast<std::size_t>(k);

    inst.coords.resize(n);
    std::map<VertexId, std::string> labels;
    for (int s = 0; s < k; ++s) {
        for (int t = 0; t < k; ++t) {
            for (int r = 0; r < 5; ++r) {
                const TorusCoord c{s, t, r};
                const VertexId id = coord_to_id(k, c);
                const auto [x, y] = torus_representative(c);
                require(torus_canonical(k, x, y) == c, "canonical coordinates do not round-trip");
                inst.coords[static_cast<std::size_t>(id)] = c;
                labels[id] = std::to_string(s) + "," + std::to_string(t) + "," + std::to_string(r);
            }
        }
    }

    std::vector<Edge> edges;
    for (std::size_t v = 0; v < n; ++v) {
        const auto [x, y] = torus_representative(inst.coords[v]);
        for (const auto& step : kSteps) {
            const VertexId w = torus_vertex_at(k, x + step[0], y + step[1]);
            require(w != static_cast<VertexId>(v), "grid step closes a self-loop");
            if (static_cast<VertexId>(v) < w) edges.emplace_back(static_cast<VertexId>(v), w);
        }
    }
    try {
        inst.graph = Graph(n, edges, std::move(labels));
    } catch (const InputError& e) {
        throw InvariantError(std::string("torus construction: quotient is not simple: ") + e.what());
    }
    require(inst.graph.n() == n, "vertex count is not 5k^2");
    require(is_regular(inst.graph, 4), "graph is not 4-regular");
    require(is_connected(inst.graph), "graph is not connected");

    inst.d_box = VertexSet(n);
    inst.d_circ = VertexSet(n);
    for (int s = 0; s < k; ++s) {
        for (int t = 0; t < k; ++t) {
            const VertexId box = coord_to_id(k, {s, t, 0});
            const VertexId circ = coord_to_id(k, {s, t, 1});
            inst.d_box.insert(box);
            inst.d_circ.insert(circ);
            inst.pairs.emplace_back(box, circ);
            require(inst.graph.has_edge(box, circ), "pair members are not adjacent");
        }
    }
    const std::size_t k2 = static_cast<std::size_t>(k) * static_cast<std::size_t>(k);
    require(inst.d_box.size() == k2 && inst.d_circ.size() == k2, "canonical sets do not have k^2 members");
    require(!inst.d_box.intersects(inst.d_circ), "canonical sets are not disjoint");
    require(is_dominating(inst.graph, inst.d_box), "x+3y=0 class is not dominating");
    require(is_dominating(inst.graph, inst.d_circ), "x+3y=1 class is not dominating");

    inst.h_graph = pair_graph_by_neighborhoods(inst.graph, inst.pairs);
    require(inst.h_graph == torus_grid_graph(k), "pair graph differs from the k x k torus grid");
    if (k >= 3) require(is_regular(inst.h_graph, 4), "pair graph is not 4-regular");
    return inst;
}

std::string to_string(PairType type) {
    switch (type) {
        case PairType::left: return "left";
        case PairType::right: return "right";
        case PairType::zero: return "0";
        case PairType::two: return "2";
    }
    return "?";
}

std::size_t& TypeCounts::operator[](PairType t) {
    switch (t) {
        case PairType::left: return left;
        case PairType::right: return right;
        case PairType::zero: return zero;
        case PairType::two: return two;
    }
    throw InvariantError("unknown pair type");
}

std::size_t TypeCounts::operator[](PairType t) const { return const_cast<TypeCounts&>(*this)[t]; }

PairType classify_pair(const TorusInstance& inst, std::size_t pair_id, const VertexSet& d) {
    if (pair_id >= inst.pairs.size()) {
        throw InputError("pair id " + std::to_string(pair_id) + " out of range (" + std::to_string(inst.pairs.size()) +
                         " pairs)");
    }
    const auto [box, circ] = inst.pairs[pair_id];
    return type_of(d.contains(box), d.contains(circ));
}

TypeCounts type_counts(const TorusInstance& inst, const VertexSet& d) {
    TypeCounts counts;
    for (std::size_t p = 0; p < inst.pairs.size(); ++p) ++counts[classify_pair(inst, p, d)];
    return counts;
}

std::vector<TypeCounts> type_count_trace(const TorusInstance& inst, const ReconfigSequence& seq) {
    const auto roles = pair_roles(inst);
    VertexSet state = seq.start;
    TypeCounts counts = type_counts(inst, state);
    std::vector<TypeCounts> trace{counts};
    trace.reserve(seq.moves.size() + 1);
    for (const Move& m : seq.moves) {
        const PairRole role = roles.at(static_cast<std::size_t>(m.vertex));
        if (role.member) {
            const auto [box, circ] = inst.pairs[role.pair];
            --counts[type_of(state.contains(box), state.contains(circ))];
        }
        const bool applied = m.kind == MoveKind::add ? state.insert(m.vertex) : state.erase(m.vertex);
        if (!applied) throw InputError("move sequence is not applicable to its start set");
        if (role.member) {
            const auto [box, circ] = inst.pairs[role.pair];
            ++counts[type_of(state.contains(box), state.contains(circ))];
        }
        trace.push_back(counts);
    }
    return trace;
}

std::optional<DropIndex> first_drop_index(const TorusInstance& inst, const ReconfigSequence& seq) {
    if (inst.k % 4 != 0) {
        throw ContractError("first_drop_index requires k divisible by 4 (7k^2/8 must be an integer), got k=" +
                            std::to_string(inst.k));
    }
    if (seq.start != inst.d_box) throw ContractError("first_drop_index: sequence does not start at d_box");
    const std::size_t threshold = 7 * static_cast<std::size_t>(inst.k) * static_cast<std::size_t>(inst.k) / 8;
    const auto trace = type_count_trace(inst, seq);
    std::size_t size = seq.start.size();
    for (std::size_t j = 0; j < trace.size(); ++j) {
        if (j > 0) size = seq.moves[j - 1].kind == MoveKind::add ? size + 1 : size - 1;
        if (trace[j].left <= threshold) return DropIndex{j, trace[j], size};
    }
    return std::nullopt;
}

BoundarySets boundary_sets(const TorusInstance& inst, const VertexSet& d) {
    const std::size_t count = inst.pairs.size();
    std::vector<char> left(count, 0);
    for (std::size_t p = 0; p < count; ++p) left[p] = classify_pair(inst, p, d) == PairType::left;

    BoundarySets out;
    std::vector<char> in_star(count, 0);
    for (std::size_t p = 0; p < count; ++p) {
        if (!left[p]) continue;
        auto nbrs = inst.h_graph.neighbors(static_cast<VertexId>(p));
        const bool isolated = std::none_of(nbrs.begin(), nbrs.end(), [&](VertexId q) { return left[static_cast<std::size_t>(q)]; });
        if (isolated) {
            out.p_prime_left.push_back(p);
        } else {
            out.p_star.push_back(p);
            in_star[p] = 1;
        }
    }
    for (std::size_t p : out.p_star) {
        auto nbrs = inst.h_graph.neighbors(static_cast<VertexId>(p));
        if (std::any_of(nbrs.begin(), nbrs.end(), [&](VertexId q) { return !in_star[static_cast<std::size_t>(q)]; })) {
            out.p_star_star.push_back(p);
        }
    }
    return out;
}

VertexSet inefficient_vertices(const Graph& g, const VertexSet& d) {
    if (d.universe() != g.n()) throw InputError("vertex set universe does not match graph order");
    VertexSet out(g.n());
    d.for_each([&](VertexId u) {
        // N[u] ∩ N[v] != ∅ iff v is within distance 2 of u.
        auto hit = [&](VertexId w) {
            if (w != u && d.contains(w)) return true;
            for (VertexId x : g.neighbors(w)) {
                if (x != u && d.contains(x)) return true;
            }
            return false;
        };
        bool conflict = hit(u);
        for (VertexId w : g.neighbors(u)) conflict = conflict || hit(w);
        if (conflict) out.insert(u);
    });
    return out;
}

VertexSet spread_subset(const Graph& g, const VertexSet& candidates) {
    VertexSet chosen(g.n());
    std::vector<char> blocked(g.n(), 0);
    candidates.for_each([&](VertexId v) {
        if (blocked[static_cast<std::size_t>(v)]) return;
        chosen.insert(v);
        const auto dist = bfs_distances(g, v);
        for (std::size_t u = 0; u < dist.size(); ++u) {
            if (dist[u] >= 0 && dist[u] <= 2) blocked[u] = 1;
        }
    });
    return chosen;
}

std::size_t efficiency_lower_bound(const Graph& g, const VertexSet& d, const VertexSet& spread_set) {
    if (!is_regular(g, 4)) throw ContractError("efficiency_lower_bound requires a 4-regular graph");
    if (!spread_set.is_subset_of(inefficient_vertices(g, d))) {
        throw ContractError("efficiency_lower_bound: spread set contains vertices that are not inefficient");
    }
    const auto members = spread_set.members();
    for (VertexId u : members) {
        const auto dist = bfs_distances(g, u);
        for (VertexId v : members) {
            const int duv = dist[static_cast<std::size_t>(v)];
            if (v != u && duv >= 0 && duv < 3) {
                throw ContractError("efficiency_lower_bound: spread set members " + std::to_string(u) + " and " +
                                    std::to_string(v) + " are at distance " + std::to_string(duv));
            }
        }
    }
    return (g.n() + spread_set.size() + 4) / 5;
}

}  // namespace domrecon
