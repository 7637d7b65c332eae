#include "domrecon/septree.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <sstream>
#include <tuple>

#include "domrecon/errors.hpp"
#include "domrecon/torus.hpp"

namespace domrecon {

namespace {

using Component = std::vector<VertexId>;

// Connected components of the subgraph induced by `working \ removed`,
// ordered by smallest member.
std::vector<Component> components_of(const Graph& g, const VertexSet& working, const VertexSet& removed) {
    const VertexSet live = working - removed;
    std::vector<char> seen(g.n(), 0);
    std::vector<Component> out;
    live.for_each([&](VertexId s) {
        if (seen[static_cast<std::size_t>(s)]) return;
        Component comp;
        std::vector<VertexId> stack{s};
        seen[static_cast<std::size_t>(s)] = 1;
        while (!stack.empty()) {
            const VertexId u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (VertexId w : g.neighbors(u)) {
                if (!seen[static_cast<std::size_t>(w)] && live.contains(w)) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    });
    return out;
}

bool balanced_sizes(std::size_t a, std::size_t b, std::size_t m) { return 3 * a <= 2 * m && 3 * b <= 2 * m; }

void orient(BalancedSeparator& sep) {
    const auto fa = sep.a.first();
    const auto fb = sep.b.first();
    if (fb && (!fa || *fb < *fa)) std::swap(sep.a, sep.b);
}

// Largest components first, each into the currently lighter group.
BalancedSeparator pack_greedy(std::size_t n, const VertexSet& s, std::vector<Component> comps) {
    std::stable_sort(comps.begin(), comps.end(),
                     [](const Component& x, const Component& y) { return x.size() > y.size(); });
    BalancedSeparator sep{s, VertexSet(n), VertexSet(n)};
    std::size_t size_a = 0;
    std::size_t size_b = 0;
    for (const auto& comp : comps) {
        const bool to_a = size_a <= size_b;
        for (VertexId v : comp) (to_a ? sep.a : sep.b).insert(v);
        (to_a ? size_a : size_b) += comp.size();
    }
    orient(sep);
    return sep;
}

// Exact two-way split of components minimising the larger side.
BalancedSeparator pack_exact(std::size_t n, const VertexSet& s, const std::vector<Component>& comps) {
    std::size_t total = 0;
    for (const auto& c : comps) total += c.size();
    // reach[i][x]: first i components can put exactly x vertices on side A.
    std::vector<std::vector<char>> reach(comps.size() + 1, std::vector<char>(total + 1, 0));
    reach[0][0] = 1;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        for (std::size_t x = 0; x <= total; ++x) {
            if (!reach[i][x]) continue;
            reach[i + 1][x] = 1;
            reach[i + 1][x + comps[i].size()] = 1;
        }
    }
    std::size_t best = total;
    for (std::size_t x = 0; x <= total; ++x) {
        if (reach[comps.size()][x] && std::max(x, total - x) < std::max(best, total - best)) best = x;
    }
    BalancedSeparator sep{s, VertexSet(n), VertexSet(n)};
    std::size_t x = best;
    for (std::size_t i = comps.size(); i-- > 0;) {
        const std::size_t c = comps[i].size();
        const bool on_a = x >= c && reach[i][x - c];
        for (VertexId v : comps[i]) (on_a ? sep.a : sep.b).insert(v);
        if (on_a) x -= c;
    }
    orient(sep);
    return sep;
}

// Ranking key: feasibility, separator size, larger side, separator members.
struct Score {
    bool feasible;
    std::size_t separator;
    std::size_t larger_side;
    std::vector<VertexId> members;

    bool operator<(const Score& o) const {
        return std::tie(o.feasible, separator, larger_side, members) <
               std::tie(feasible, o.separator, o.larger_side, o.members);
    }
};

Score score_of(const BalancedSeparator& sep, std::size_t m) {
    const std::size_t a = sep.a.size();
    const std::size_t b = sep.b.size();
    return {balanced_sizes(a, b, m), sep.s.size(), std::max(a, b), sep.s.members()};
}

VertexId pseudo_peripheral(const Graph& g, const Component& comp, const VertexSet& live) {
    auto farthest = [&](VertexId from) {
        std::map<VertexId, int> dist{{from, 0}};
        std::deque<VertexId> queue{from};
        VertexId far = from;
        while (!queue.empty()) {
            const VertexId u = queue.front();
            queue.pop_front();
            const int du = dist[u];
            if (du > dist[far] || (du == dist[far] && u < far)) far = u;
            for (VertexId w : g.neighbors(u)) {
                if (live.contains(w) && !dist.contains(w)) {
                    dist[w] = du + 1;
                    queue.push_back(w);
                }
            }
        }
        return far;
    };
    return farthest(comp.front());
}

std::vector<std::vector<VertexId>> bfs_levels(const Graph& g, VertexId root, const VertexSet& live) {
    std::vector<std::vector<VertexId>> levels{{root}};
    std::vector<char> seen(g.n(), 0);
    seen[static_cast<std::size_t>(root)] = 1;
    while (true) {
        std::vector<VertexId> next;
        for (VertexId u : levels.back()) {
            for (VertexId w : g.neighbors(u)) {
                if (!seen[static_cast<std::size_t>(w)] && live.contains(w)) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    next.push_back(w);
                }
            }
        }
        if (next.empty()) break;
        std::sort(next.begin(), next.end());
        levels.push_back(std::move(next));
    }
    return levels;
}

}  // namespace

GridCoordinates GridCoordinates::from_torus(const TorusInstance& inst) {
    GridCoordinates gc;
    gc.period = inst.k;
    gc.xy.reserve(inst.coords.size());
    for (const auto& c : inst.coords) gc.xy.push_back(torus_grid_projection(inst.k, c));
    return gc;
}

std::optional<GridCoordinates> GridCoordinates::from_labels(const Graph& g) {
    if (g.n() == 0 || g.labels().size() != g.n()) return std::nullopt;
    std::vector<std::vector<long long>> parsed;
    parsed.reserve(g.n());
    for (const auto& [v, label] : g.labels()) {
        std::vector<long long> fields;
        std::stringstream ss(label);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t used = 0;
                fields.push_back(std::stoll(item, &used));
                if (used != item.size()) return std::nullopt;
            } catch (const std::exception&) {
                return std::nullopt;
            }
        }
        parsed.push_back(std::move(fields));
    }
    const std::size_t arity = parsed.front().size();
    if (arity != 2 && arity != 3) return std::nullopt;
    if (std::any_of(parsed.begin(), parsed.end(), [&](const auto& f) { return f.size() != arity; })) return std::nullopt;

    GridCoordinates gc;
    if (arity == 2) {
        for (const auto& f : parsed) gc.xy.emplace_back(static_cast<int>(f[0]), static_cast<int>(f[1]));
        return gc;
    }
    const auto k = static_cast<int>(std::lround(std::sqrt(static_cast<double>(g.n()) / 5.0)));
    if (k < 2 || static_cast<std::size_t>(5 * k * k) != g.n()) return std::nullopt;
    gc.period = k;
    for (const auto& f : parsed) {
        const TorusCoord c{static_cast<int>(f[0]), static_cast<int>(f[1]), static_cast<int>(f[2])};
        if (c.s < 0 || c.s >= k || c.t < 0 || c.t >= k || c.r < 0 || c.r >= 5) return std::nullopt;
        gc.xy.push_back(torus_grid_projection(k, c));
    }
    return gc;
}

GridCutStrategy::GridCutStrategy(GridCoordinates coords) : coords_(std::move(coords)) {}

BalancedSeparator GridCutStrategy::separate(const Graph& g, const VertexSet& working) const {
    if (coords_.xy.size() != g.n()) throw InputError("grid-cut: coordinate count does not match graph order");
    const std::size_t n = g.n();
    const std::size_t m = working.size();
    std::optional<BalancedSeparator> best;
    std::optional<Score> best_score;
    auto consider = [&](const VertexSet& s) {
        if (s.empty()) return;
        auto sep = pack_greedy(n, s, components_of(g, working, s));
        auto score = score_of(sep, m);
        if (!best_score || score < *best_score) {
            best_score = std::move(score);
            best = std::move(sep);
        }
    };
    for (int axis = 0; axis < 2; ++axis) {
        auto coord = [&](VertexId v) {
            const auto& p = coords_.xy[static_cast<std::size_t>(v)];
            return axis == 0 ? p.first : p.second;
        };
        std::map<int, VertexSet> lines;
        working.for_each([&](VertexId v) {
            auto [it, fresh] = lines.try_emplace(coord(v), n);
            it->second.insert(v);
        });
        for (auto i = lines.begin(); i != lines.end(); ++i) {
            consider(i->second);
            for (auto j = std::next(i); j != lines.end(); ++j) consider(i->second | j->second);
        }
    }
    if (!best_score || !best_score->feasible) return BfsLevelStrategy{}.separate(g, working);
    return *best;
}

BalancedSeparator BfsLevelStrategy::separate(const Graph& g, const VertexSet& working) const {
    const std::size_t n = g.n();
    const std::size_t m = working.size();
    VertexSet s(n);
    while (true) {
        auto comps = components_of(g, working, s);
        auto sep = pack_greedy(n, s, comps);
        if (balanced_sizes(sep.a.size(), sep.b.size(), m)) return sep;

        const auto largest = std::max_element(comps.begin(), comps.end(), [](const Component& x, const Component& y) {
            return x.size() < y.size();
        });
        const VertexSet live = working - s;
        const auto levels = bfs_levels(g, pseudo_peripheral(g, *largest, live), live);
        std::optional<std::tuple<std::size_t, std::size_t, std::vector<VertexId>>> best_key;
        VertexSet best_s(n);
        for (const auto& level : levels) {
            VertexSet trial = s;
            for (VertexId v : level) trial.insert(v);
            const auto candidate = pack_greedy(n, trial, components_of(g, working, trial));
            // Balance first, then the smaller level, then lexicographic.
            auto key = std::make_tuple(std::max(candidate.a.size(), candidate.b.size()), level.size(), trial.members());
            if (!best_key || key < *best_key) {
                best_key = std::move(key);
                best_s = std::move(trial);
            }
        }
        s = std::move(best_s);
    }
}

BalancedSeparator ExactSeparatorStrategy::separate(const Graph& g, const VertexSet& working) const {
    const std::size_t m = working.size();
    if (m > max_working_) {
        throw ResourceError("exact separator refused: working set of " + std::to_string(m) + " vertices exceeds guard " +
                            std::to_string(max_working_));
    }
    const std::size_t n = g.n();
    const auto members = working.members();
    for (std::size_t size = 0; size <= m; ++size) {
        // Lexicographic enumeration of size-`size` subsets.
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            VertexSet s(n);
            for (std::size_t i : idx) s.insert(members[i]);
            auto sep = pack_exact(n, s, components_of(g, working, s));
            if (balanced_sizes(sep.a.size(), sep.b.size(), m)) return sep;
            std::size_t pos = size;
            while (pos > 0 && idx[pos - 1] == m - size + pos - 1) --pos;
            if (pos == 0) break;
            ++idx[pos - 1];
            for (std::size_t i = pos; i < size; ++i) idx[i] = idx[i - 1] + 1;
        }
    }
    throw InvariantError("exact separator: no balanced separator found (the whole set always qualifies)");
}

std::unique_ptr<SeparatorStrategy> make_strategy(const std::string& name, const Graph& g) {
    if (name == "bfs-level") return std::make_unique<BfsLevelStrategy>();
    if (name == "exact") return std::make_unique<ExactSeparatorStrategy>();
    if (name == "grid-cut") {
        auto coords = GridCoordinates::from_labels(g);
        if (!coords) {
            throw InputError("grid-cut strategy needs coordinate labels (\"s,t,r\" torus or \"x,y\" grid) on every vertex");
        }
        return std::make_unique<GridCutStrategy>(std::move(*coords));
    }
    throw InputError("unknown separator strategy '" + name + "' (expected grid-cut, bfs-level or exact)");
}

bool is_balanced_separator(const Graph& g, const VertexSet& working, const BalancedSeparator& sep) {
    const std::size_t m = working.size();
    if (sep.s.intersects(sep.a) || sep.s.intersects(sep.b) || sep.a.intersects(sep.b)) return false;
    if ((sep.s | sep.a | sep.b) != working) return false;
    if (!balanced_sizes(sep.a.size(), sep.b.size(), m)) return false;
    bool crossing = false;
    sep.a.for_each([&](VertexId u) {
        for (VertexId w : g.neighbors(u)) crossing = crossing || sep.b.contains(w);
    });
    return !crossing;
}

BalancedSeparator find_separator(const Graph& g, const VertexSet& working, const SeparatorStrategy& strategy) {
    if (working.universe() != g.n()) throw InputError("working set universe does not match graph order");
    if (working.size() < 2) throw InputError("find_separator needs a working set of at least two vertices");
    auto sep = strategy.separate(g, working);
    orient(sep);
    if (!is_balanced_separator(g, working, sep)) {
        throw InvariantError("strategy '" + strategy.name() + "' returned an invalid balanced separator");
    }
    return sep;
}

std::size_t leaf_threshold_for(std::size_t n, double alpha) {
    const double raw = std::pow(static_cast<double>(n), alpha);
    const auto t = static_cast<std::size_t>(std::ceil(raw - 1e-9 * std::max(1.0, raw)));
    return std::max<std::size_t>(1, t);
}

SeparatorTree::SeparatorTree(std::size_t n, std::vector<TreeNode> nodes, double alpha, std::size_t leaf_threshold,
                             std::string strategy)
    : n_(n), nodes_(std::move(nodes)), alpha_(alpha), leaf_threshold_(leaf_threshold), strategy_(std::move(strategy)) {
    if (nodes_.empty()) throw InputError("separator tree has no nodes");
    if (nodes_[0].parent) throw InputError("separator tree root has a parent");
    std::optional<std::size_t> leaf_depth;
    std::size_t next = 0;
    // Pre-order walk: ids must appear in visiting order.
    std::function<void(std::size_t, std::size_t)> visit = [&](std::size_t id, std::size_t depth) {
        if (id != next) throw InputError("separator tree nodes are not numbered in pre-order");
        ++next;
        TreeNode& node = nodes_[id];
        if (node.part.universe() != n_) throw InputError("separator tree part has the wrong universe");
        if (node.depth != depth) throw InputError("separator tree node " + std::to_string(id) + " has a wrong depth");
        if (node.child0.has_value() != node.child1.has_value()) {
            throw InputError("separator tree node " + std::to_string(id) + " has exactly one child");
        }
        if (node.is_leaf()) {
            if (leaf_depth && *leaf_depth != depth) throw InputError("separator tree leaves have different depths");
            leaf_depth = depth;
            return;
        }
        for (std::size_t c : {*node.child0, *node.child1}) {
            if (c >= nodes_.size() || nodes_[c].parent != id) {
                throw InputError("separator tree node " + std::to_string(id) + " has an inconsistent child");
            }
            visit(c, depth + 1);
        }
    };
    visit(0, 0);
    if (next != nodes_.size()) throw InputError("separator tree has unreachable nodes");
    depth_ = *leaf_depth;
}

std::vector<std::size_t> SeparatorTree::path_nodes(const PathCode& code) const {
    if (code.depth() != depth_) {
        throw InputError("path code of length " + std::to_string(code.depth()) + " for a tree of depth " +
                         std::to_string(depth_));
    }
    std::vector<std::size_t> out{0};
    for (std::size_t i = 0; i < depth_; ++i) {
        const TreeNode& node = nodes_[out.back()];
        out.push_back(code[i] == 0 ? *node.child0 : *node.child1);
    }
    return out;
}

bool SeparatorTree::is_ancestor(std::size_t ancestor, std::size_t node) const {
    if (nodes_.at(ancestor).depth >= nodes_.at(node).depth) return false;
    std::size_t cur = node;
    while (nodes_[cur].depth > nodes_[ancestor].depth) cur = *nodes_[cur].parent;
    return cur == ancestor;
}

std::vector<std::size_t> SeparatorTree::owner() const {
    std::vector<std::size_t> out(n_, nodes_.size());
    for (std::size_t t = 0; t < nodes_.size(); ++t) {
        nodes_[t].part.for_each([&](VertexId v) { out[static_cast<std::size_t>(v)] = t; });
    }
    return out;
}

SeparatorTree build_tree(const Graph& g, double alpha, const SeparatorStrategy& strategy) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");
    const std::size_t n = g.n();
    const std::size_t threshold = leaf_threshold_for(n, alpha);

    struct Raw {
        VertexSet part;
        int child0 = -1;
        int child1 = -1;
    };
    std::vector<Raw> raw;
    std::function<int(VertexSet)> grow = [&](VertexSet working) -> int {
        const int id = static_cast<int>(raw.size());
        raw.push_back({VertexSet(n)});
        if (working.size() <= threshold) {
            raw[static_cast<std::size_t>(id)].part = std::move(working);
            return id;
        }
        auto sep = find_separator(g, working, strategy);
        raw[static_cast<std::size_t>(id)].part = std::move(sep.s);
        const int c0 = grow(std::move(sep.a));
        const int c1 = grow(std::move(sep.b));
        raw[static_cast<std::size_t>(id)].child0 = c0;
        raw[static_cast<std::size_t>(id)].child1 = c1;
        return id;
    };
    grow(VertexSet::full(n));

    std::function<std::size_t(int)> height = [&](int id) -> std::size_t {
        const Raw& r = raw[static_cast<std::size_t>(id)];
        return r.child0 < 0 ? 0 : 1 + std::max(height(r.child0), height(r.child1));
    };
    const std::size_t depth = height(0);

    // Pre-order renumbering with empty padding below shallow leaves.
    std::vector<TreeNode> nodes;
    std::function<std::size_t(int, std::optional<std::size_t>, std::size_t)> emit =
        [&](int id, std::optional<std::size_t> parent, std::size_t d) -> std::size_t {
        const std::size_t me = nodes.size();
        nodes.push_back({id >= 0 ? raw[static_cast<std::size_t>(id)].part : VertexSet(n), parent, {}, {}, d});
        if (d == depth) return me;
        const bool real = id >= 0 && raw[static_cast<std::size_t>(id)].child0 >= 0;
        const std::size_t c0 = emit(real ? raw[static_cast<std::size_t>(id)].child0 : -1, me, d + 1);
        const std::size_t c1 = emit(real ? raw[static_cast<std::size_t>(id)].child1 : -1, me, d + 1);
        nodes[me].child0 = c0;
        nodes[me].child1 = c1;
        return me;
    };
    emit(0, std::nullopt, 0);
    return SeparatorTree(n, std::move(nodes), alpha, threshold, strategy.name());
}

TreeCheck check_tree(const Graph& g, const SeparatorTree& tree) {
    TreeCheck check;
    auto fail = [&](bool& flag, const std::string& msg) {
        if (flag) check.message += (check.message.empty() ? "" : "; ") + msg;
        flag = false;
    };
    if (tree.n() != g.n()) {
        fail(check.partition, "tree universe differs from graph order");
        return check;
    }
    std::vector<int> hits(g.n(), 0);
    for (const auto& node : tree.nodes()) node.part.for_each([&](VertexId v) { ++hits[static_cast<std::size_t>(v)]; });
    for (std::size_t v = 0; v < g.n(); ++v) {
        if (hits[v] != 1) fail(check.partition, "vertex " + std::to_string(v) + " appears in " + std::to_string(hits[v]) + " parts");
    }
    for (std::size_t t = 0; t < tree.nodes().size(); ++t) {
        const auto& node = tree.node(t);
        if (node.is_leaf() && node.part.size() > tree.leaf_threshold()) {
            fail(check.leaf_bound, "leaf " + std::to_string(t) + " has " + std::to_string(node.part.size()) + " vertices");
        }
    }
    if (!check.partition) return check;
    const auto owner = tree.owner();
    for (const auto& [u, v] : g.edges()) {
        const std::size_t tu = owner[static_cast<std::size_t>(u)];
        const std::size_t tv = owner[static_cast<std::size_t>(v)];
        if (tu != tv && !tree.is_ancestor(tu, tv) && !tree.is_ancestor(tv, tu)) {
            fail(check.ancestor_edges, "edge {" + std::to_string(u) + "," + std::to_string(v) +
                                           "} joins unrelated nodes " + std::to_string(tu) + " and " + std::to_string(tv));
        }
    }
    return check;
}

PathSets path_sets(const SeparatorTree& tree, const PathCode& code) {
    const auto path = tree.path_nodes(code);
    const std::size_t n = tree.n();
    PathSets out{VertexSet(n), VertexSet(n), VertexSet(n)};
    auto collect = [&](std::size_t top, VertexSet& into) {
        std::vector<std::size_t> stack{top};
        while (!stack.empty()) {
            const TreeNode& node = tree.node(stack.back());
            stack.pop_back();
            into |= node.part;
            if (!node.is_leaf()) {
                stack.push_back(*node.child0);
                stack.push_back(*node.child1);
            }
        }
    };
    for (std::size_t i = 0; i < path.size(); ++i) {
        const TreeNode& node = tree.node(path[i]);
        out.on_path |= node.part;
        if (i + 1 == path.size()) break;
        if (code[i] == 0) {
            collect(*node.child1, out.r_side);
        } else {
            collect(*node.child0, out.l_side);
        }
    }
    return out;
}

std::size_t max_path_weight(const SeparatorTree& tree) {
    std::vector<std::size_t> best(tree.nodes().size(), 0);
    for (std::size_t t = tree.nodes().size(); t-- > 0;) {
        const auto& node = tree.node(t);
        best[t] = node.part.size() + (node.is_leaf() ? 0 : std::max(best[*node.child0], best[*node.child1]));
    }
    return best[0];
}

double c3_constant(double c2, double alpha) { return c2 / (1.0 - std::pow(2.0 / 3.0, alpha)) + 1.0; }

double measured_c2(const SeparatorTree& tree) {
    double c2 = 0.0;
    const double scale = std::pow(static_cast<double>(tree.n()), tree.alpha());
    for (const auto& node : tree.nodes()) {
        if (node.is_leaf()) continue;
        const double allowed = std::pow(2.0 / 3.0, tree.alpha() * static_cast<double>(node.depth)) * scale;
        c2 = std::max(c2, static_cast<double>(node.part.size()) / allowed);
    }
    return c2;
}

}  // namespace domrecon
