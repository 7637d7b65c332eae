#pragma once

// JSON conversions for every artifact the CLI reads or writes.

#include <string>

#include <nlohmann/json.hpp>

#include "domrecon/exactgap.hpp"
#include "domrecon/graph.hpp"
#include "domrecon/reconfig_types.hpp"
#include "domrecon/septree.hpp"
#include "domrecon/torus.hpp"

namespace domrecon {

using Json = nlohmann::json;

Json graph_to_json(const Graph& g);
/// Throws ParseError on schema violations, InputError on graph invariant violations.
Graph graph_from_json(const Json& j);

/// Sorted id list.
Json set_to_json(const VertexSet& s);
/// Accepts a bare id array or an object with a "set" array.
VertexSet set_from_json(const Json& j, std::size_t universe);

/// {"alpha", "leaf_threshold", "strategy", "nodes": [{"part", "children", "depth"}],
///  "root": 0, "max_path_weight"}
Json tree_to_json(const SeparatorTree& tree);
SeparatorTree tree_from_json(const Json& j, std::size_t universe);

/// {"start", "moves": [{"op", "v"}], "checkpoints": [{"index", "code"}], "width",
///  "guarantee": {"W", "bound", "d_prime_minimum"} | "none"}
Json sequence_to_json(const ReconfigSequence& seq);
ReconfigSequence sequence_from_json(const Json& j, std::size_t universe);

/// Graph JSON extended with "k", "d_box", "d_circ" and "pairs".
Json torus_to_json(const TorusInstance& inst);
/// Rebuilds the instance from "k" and checks the stored graph and sets agree.
TorusInstance torus_from_json(const Json& j);

Json gap_report_to_json(const GapReport& report);

/// Reads a whole file as JSON; ParseError carries the byte offset on failure.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace domrecon
