#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "domrecon/graph.hpp"

namespace domrecon {

enum class GraphFormat { json, edge_list };

/// Parses "json" or "edge-list". Throws InputError otherwise.
GraphFormat parse_graph_format(const std::string& name);
/// Guesses from the file extension: ".json" is JSON, anything else edge list.
GraphFormat format_from_path(const std::string& path);

/// Throws ParseError (with line/offset) on malformed input.
Graph read_graph(std::istream& in, GraphFormat format);
Graph read_graph_file(const std::string& path);
Graph read_graph_file(const std::string& path, GraphFormat format);

/// Canonical form: edges sorted with u < v; labels included when present.
void write_graph(std::ostream& out, const Graph& g, GraphFormat format);

/// Graphviz export. Members of `highlight` get `style=filled`.
void write_dot(std::ostream& out, const Graph& g, const std::optional<VertexSet>& highlight = std::nullopt);

}  // namespace domrecon
