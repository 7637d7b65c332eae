#include "domrecon/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "domrecon/errors.hpp"

namespace domrecon {

namespace {

long long as_integer(const Json& j, const std::string& what) {
    if (!j.is_number_integer()) throw ParseError(what + ": expected an integer", 0);
    return j.get<long long>();
}

}  // namespace

Json graph_to_json(const Graph& g) {
    Json j;
    j["n"] = g.n();
    Json edges = Json::array();
    for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    if (!g.labels().empty()) {
        Json labels = Json::object();
        for (const auto& [v, label] : g.labels()) labels[std::to_string(v)] = label;
        j["labels"] = std::move(labels);
    }
    return j;
}

Graph graph_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("graph JSON: top level must be an object", 0);
    if (!j.contains("n")) throw ParseError("graph JSON: missing \"n\"", 0);
    const long long n = as_integer(j.at("n"), "graph JSON \"n\"");
    if (n < 0) throw ParseError("graph JSON: \"n\" must be non-negative", 0);
    std::vector<Edge> edges;
    std::set<Edge> seen;
    if (j.contains("edges")) {
        const Json& list = j.at("edges");
        if (!list.is_array()) throw ParseError("graph JSON: \"edges\" must be an array", 0);
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string where = "graph JSON edge #" + std::to_string(i);
            const Json& e = list[i];
            if (!e.is_array() || e.size() != 2) throw ParseError(where + ": expected [u, v]", 0);
            const long long u = as_integer(e[0], where);
            const long long v = as_integer(e[1], where);
            if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(where + ": vertex id out of range", 0);
            if (u == v) throw ParseError(where + ": self-loop", 0);
            Edge key{static_cast<VertexId>(std::min(u, v)), static_cast<VertexId>(std::max(u, v))};
            if (!seen.insert(key).second) throw ParseError(where + ": duplicate edge", 0);
            edges.push_back(key);
        }
    }
    std::map<VertexId, std::string> labels;
    if (j.contains("labels") && !j.at("labels").is_null()) {
        const Json& lj = j.at("labels");
        if (!lj.is_object()) throw ParseError("graph JSON: \"labels\" must be an object", 0);
        for (const auto& [key, value] : lj.items()) {
            std::size_t used = 0;
            long long v = -1;
            try {
                v = std::stoll(key, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != key.size() || v < 0 || v >= n) {
                throw ParseError("graph JSON: label key '" + key + "' is not a vertex id", 0);
            }
            if (!value.is_string()) throw ParseError("graph JSON: label values must be strings", 0);
            labels[static_cast<VertexId>(v)] = value.get<std::string>();
        }
    }
    return Graph(static_cast<std::size_t>(n), edges, std::move(labels));
}

Json set_to_json(const VertexSet& s) { return s.members(); }

VertexSet set_from_json(const Json& j, std::size_t universe) {
    const Json* list = &j;
    if (j.is_object()) {
        if (!j.contains("set")) throw ParseError("vertex set JSON: object without \"set\" array", 0);
        list = &j.at("set");
    }
    if (!list->is_array()) throw ParseError("vertex set JSON: expected an array of vertex ids", 0);
    VertexSet s(universe);
    for (const Json& e : *list) {
        const long long v = as_integer(e, "vertex set JSON entry");
        if (v < 0 || static_cast<std::size_t>(v) >= universe) {
            throw ParseError("vertex set JSON: id " + std::to_string(v) + " out of range", 0);
        }
        if (!s.insert(static_cast<VertexId>(v))) {
            throw ParseError("vertex set JSON: duplicate id " + std::to_string(v), 0);
        }
    }
    return s;
}

Json tree_to_json(const SeparatorTree& tree) {
    Json nodes = Json::array();
    for (const auto& node : tree.nodes()) {
        Json entry;
        entry["part"] = set_to_json(node.part);
        entry["children"] = node.is_leaf() ? Json(nullptr) : Json::array({*node.child0, *node.child1});
        entry["depth"] = node.depth;
        nodes.push_back(std::move(entry));
    }
    Json j;
    j["alpha"] = tree.alpha();
    j["leaf_threshold"] = tree.leaf_threshold();
    j["strategy"] = tree.strategy();
    j["n"] = tree.n();
    j["nodes"] = std::move(nodes);
    j["root"] = tree.root();
    j["max_path_weight"] = max_path_weight(tree);
    return j;
}

SeparatorTree tree_from_json(const Json& j, std::size_t universe) {
    if (!j.is_object() || !j.contains("nodes") || !j.at("nodes").is_array() || j.at("nodes").empty()) {
        throw ParseError("tree JSON: expected an object with a non-empty \"nodes\" array", 0);
    }
    if (j.contains("n") && as_integer(j.at("n"), "tree JSON \"n\"") != static_cast<long long>(universe)) {
        throw ParseError("tree JSON: \"n\" does not match the graph order", 0);
    }
    if (j.contains("root") && as_integer(j.at("root"), "tree JSON \"root\"") != 0) {
        throw ParseError("tree JSON: root must be node 0", 0);
    }
    const Json& list = j.at("nodes");
    std::vector<TreeNode> nodes(list.size());
    for (std::size_t i = 0; i < list.size(); ++i) {
        const Json& e = list[i];
        const std::string where = "tree JSON node #" + std::to_string(i);
        if (!e.is_object() || !e.contains("part")) throw ParseError(where + ": missing \"part\"", 0);
        nodes[i].part = set_from_json(e.at("part"), universe);
        const Json children = e.value("children", Json(nullptr));
        if (!children.is_null()) {
            if (!children.is_array() || children.size() != 2) throw ParseError(where + ": children must be [i, j] or null", 0);
            const long long c0 = as_integer(children[0], where);
            const long long c1 = as_integer(children[1], where);
            const auto count = static_cast<long long>(list.size());
            if (c0 <= 0 || c1 <= 0 || c0 >= count || c1 >= count) throw ParseError(where + ": child id out of range", 0);
            nodes[i].child0 = static_cast<std::size_t>(c0);
            nodes[i].child1 = static_cast<std::size_t>(c1);
        }
    }
    // Parents and depths follow from the child links.
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].is_leaf()) continue;
        for (std::size_t c : {*nodes[i].child0, *nodes[i].child1}) {
            if (nodes[c].parent) throw ParseError("tree JSON: node " + std::to_string(c) + " has two parents", 0);
            nodes[c].parent = i;
        }
    }
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (!nodes[i].parent) throw ParseError("tree JSON: node " + std::to_string(i) + " has no parent", 0);
        if (*nodes[i].parent >= i) throw ParseError("tree JSON: nodes are not in pre-order", 0);
        nodes[i].depth = nodes[*nodes[i].parent].depth + 1;
    }
    const double alpha = j.value("alpha", 0.5);
    const std::size_t threshold = j.contains("leaf_threshold")
                                      ? static_cast<std::size_t>(as_integer(j.at("leaf_threshold"), "tree JSON"))
                                      : leaf_threshold_for(universe, alpha);
    return SeparatorTree(universe, std::move(nodes), alpha, threshold, j.value("strategy", std::string("unknown")));
}

Json sequence_to_json(const ReconfigSequence& seq) {
    Json moves = Json::array();
    for (const Move& m : seq.moves) moves.push_back({{"op", m.kind == MoveKind::add ? "add" : "remove"}, {"v", m.vertex}});
    Json checkpoints = Json::array();
    for (const auto& cp : seq.checkpoints) {
        checkpoints.push_back({{"index", cp.index}, {"code", cp.code.to_string()}, {"source_size", cp.source_size}});
    }
    Json j;
    j["start"] = set_to_json(seq.start);
    j["moves"] = std::move(moves);
    j["checkpoints"] = std::move(checkpoints);
    j["width"] = seq.width;
    if (seq.guarantee) {
        j["guarantee"] = {{"W", seq.guarantee->max_path_weight},
                          {"bound", seq.guarantee->bound},
                          {"d_prime_minimum", seq.guarantee->d_prime_minimum}};
    } else {
        j["guarantee"] = "none";
    }
    return j;
}

ReconfigSequence sequence_from_json(const Json& j, std::size_t universe) {
    if (!j.is_object() || !j.contains("start") || !j.contains("moves")) {
        throw ParseError("sequence JSON: expected an object with \"start\" and \"moves\"", 0);
    }
    ReconfigSequence seq;
    seq.start = set_from_json(j.at("start"), universe);
    const Json& moves = j.at("moves");
    if (!moves.is_array()) throw ParseError("sequence JSON: \"moves\" must be an array", 0);
    for (std::size_t i = 0; i < moves.size(); ++i) {
        const Json& m = moves[i];
        const std::string where = "sequence JSON move #" + std::to_string(i);
        if (!m.is_object() || !m.contains("op") || !m.contains("v") || !m.at("op").is_string()) {
            throw ParseError(where + ": expected {\"op\", \"v\"}", 0);
        }
        const std::string op = m.at("op").get<std::string>();
        if (op != "add" && op != "remove") throw ParseError(where + ": op must be add or remove", 0);
        // Vertex ranges are checked by verification, not here.
        seq.moves.push_back({op == "add" ? MoveKind::add : MoveKind::remove,
                             static_cast<VertexId>(as_integer(m.at("v"), where))});
    }
    if (j.contains("checkpoints")) {
        for (const Json& cp : j.at("checkpoints")) {
            if (!cp.is_object() || !cp.contains("index") || !cp.contains("code") || !cp.at("code").is_string()) {
                throw ParseError("sequence JSON: malformed checkpoint", 0);
            }
            const long long index = as_integer(cp.at("index"), "sequence JSON checkpoint");
            if (index < 0 || static_cast<std::size_t>(index) > seq.moves.size()) {
                throw ParseError("sequence JSON: checkpoint index out of range", 0);
            }
            Checkpoint c;
            c.index = static_cast<std::size_t>(index);
            c.code = PathCode::parse(cp.at("code").get<std::string>());
            c.source_size = cp.contains("source_size")
                                ? static_cast<std::size_t>(as_integer(cp.at("source_size"), "checkpoint"))
                                : seq.start.size();
            seq.checkpoints.push_back(std::move(c));
        }
    }
    if (j.contains("guarantee") && j.at("guarantee").is_object()) {
        const Json& gj = j.at("guarantee");
        seq.guarantee = Guarantee{static_cast<std::size_t>(as_integer(gj.at("W"), "guarantee W")),
                                  static_cast<std::size_t>(as_integer(gj.at("bound"), "guarantee bound")),
                                  gj.value("d_prime_minimum", false)};
    }
    if (j.contains("width")) {
        seq.width = static_cast<std::size_t>(as_integer(j.at("width"), "sequence JSON width"));
    } else {
        const auto sizes = seq.state_sizes();
        seq.width = *std::max_element(sizes.begin(), sizes.end());
    }
    return seq;
}

Json torus_to_json(const TorusInstance& inst) {
    Json j = graph_to_json(inst.graph);
    j["k"] = inst.k;
    j["d_box"] = set_to_json(inst.d_box);
    j["d_circ"] = set_to_json(inst.d_circ);
    Json pairs = Json::array();
    for (const auto& [a, b] : inst.pairs) pairs.push_back({a, b});
    j["pairs"] = std::move(pairs);
    return j;
}

TorusInstance torus_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("k")) throw ParseError("torus instance JSON: missing \"k\"", 0);
    const long long k = as_integer(j.at("k"), "torus instance JSON \"k\"");
    if (k < 2 || k > 4096) throw ParseError("torus instance JSON: k out of range", 0);
    TorusInstance inst = build_torus(static_cast<int>(k));
    const Graph stored = graph_from_json(j);
    if (stored.edges() != inst.graph.edges() || stored.n() != inst.graph.n()) {
        throw ParseError("torus instance JSON: graph does not match the construction for k=" + std::to_string(k), 0);
    }
    if (j.contains("d_box") && set_from_json(j.at("d_box"), stored.n()) != inst.d_box) {
        throw ParseError("torus instance JSON: d_box does not match the construction", 0);
    }
    if (j.contains("d_circ") && set_from_json(j.at("d_circ"), stored.n()) != inst.d_circ) {
        throw ParseError("torus instance JSON: d_circ does not match the construction", 0);
    }
    return inst;
}

Json gap_report_to_json(const GapReport& report) {
    Json j;
    j["gap"] = report.gap;
    j["k_star"] = report.k_star;
    j["witness"] = sequence_to_json(report.witness);
    j["states_explored"] = report.states_explored;
    j["witness_deterministic"] = true;
    return j;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(path + ": " + e.what(), 0, e.byte);
    }
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << j.dump() << '\n';
}

}  // namespace domrecon
