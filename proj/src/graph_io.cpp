#include "domrecon/graph_io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "domrecon/errors.hpp"
#include "domrecon/serialize.hpp"

namespace domrecon {

namespace {

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

Graph read_edge_list(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::size_t offset = 0;
    long long n = -1;
    std::vector<Edge> edges;
    std::set<Edge> seen;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t line_offset = offset;
        offset += line.size() + 1;
        if (blank(line)) continue;
        std::istringstream fields(line);
        if (n < 0) {
            std::string extra;
            if (!(fields >> n) || n < 0 || (fields >> extra)) {
                throw ParseError("edge list: expected a non-negative vertex count on line " + std::to_string(line_no),
                                 line_no, line_offset);
            }
            continue;
        }
        long long u = 0;
        long long v = 0;
        std::string extra;
        if (!(fields >> u >> v) || (fields >> extra)) {
            throw ParseError("edge list: expected 'u v' on line " + std::to_string(line_no), line_no, line_offset);
        }
        if (u < 0 || v < 0 || u >= n || v >= n) {
            throw ParseError("edge list: vertex id out of range on line " + std::to_string(line_no), line_no,
                             line_offset);
        }
        if (u == v) throw ParseError("edge list: self-loop on line " + std::to_string(line_no), line_no, line_offset);
        Edge e{static_cast<VertexId>(std::min(u, v)), static_cast<VertexId>(std::max(u, v))};
        if (!seen.insert(e).second) {
            throw ParseError("edge list: duplicate edge on line " + std::to_string(line_no), line_no, line_offset);
        }
        edges.push_back(e);
    }
    if (n < 0) throw ParseError("edge list: missing vertex count", line_no, offset);
    return Graph(static_cast<std::size_t>(n), edges);
}

}  // namespace

GraphFormat parse_graph_format(const std::string& name) {
    if (name == "json") return GraphFormat::json;
    if (name == "edge-list" || name == "edges") return GraphFormat::edge_list;
    throw InputError("unknown graph format '" + name + "' (expected json or edge-list)");
}

GraphFormat format_from_path(const std::string& path) {
    return path.size() >= 5 && path.ends_with(".json") ? GraphFormat::json : GraphFormat::edge_list;
}

Graph read_graph(std::istream& in, GraphFormat format) {
    if (format == GraphFormat::edge_list) return read_edge_list(in);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("graph JSON: ") + e.what(), 0, e.byte);
    }
    return graph_from_json(j);
}

Graph read_graph_file(const std::string& path) { return read_graph_file(path, format_from_path(path)); }

Graph read_graph_file(const std::string& path, GraphFormat format) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file '" + path + "'");
    return read_graph(in, format);
}

void write_graph(std::ostream& out, const Graph& g, GraphFormat format) {
    if (format == GraphFormat::json) {
        out << graph_to_json(g).dump() << '\n';
        return;
    }
    out << g.n() << '\n';
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_dot(std::ostream& out, const Graph& g, const std::optional<VertexSet>& highlight) {
    out << "graph G {\n";
    out << "  node [shape=circle];\n";
    for (std::size_t i = 0; i < g.n(); ++i) {
        const auto v = static_cast<VertexId>(i);
        out << "  " << v;
        std::vector<std::string> attrs;
        if (auto it = g.labels().find(v); it != g.labels().end()) attrs.push_back("label=\"" + it->second + "\"");
        if (highlight && highlight->contains(v)) attrs.emplace_back("style=filled");
        if (!attrs.empty()) {
            out << " [";
            for (std::size_t a = 0; a < attrs.size(); ++a) out << (a ? ", " : "") << attrs[a];
            out << ']';
        }
        out << ";\n";
    }
    for (const auto& [u, v] : g.edges()) out << "  " << u << " -- " << v << ";\n";
    out << "}\n";
}

}  // namespace domrecon
