#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "domrecon/graph.hpp"
#include "domrecon/path_code.hpp"

namespace domrecon {

enum class MoveKind { add, remove };

struct Move {
    MoveKind kind;
    VertexId vertex;

    Move inverse() const { return {kind == MoveKind::add ? MoveKind::remove : MoveKind::add, vertex}; }
    friend bool operator==(const Move&, const Move&) = default;
};

/// Marks that the state after `index` moves is the special dominating set of
/// the path `code`. `source_size` is |D| for the transformation segment the
/// checkpoint belongs to (the set the segment started from).
struct Checkpoint {
    std::size_t index = 0;
    PathCode code;
    std::size_t source_size = 0;
    friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

/// Width guarantee attached to a sequence produced by the tree algorithm.
struct Guarantee {
    std::size_t max_path_weight = 0;
    /// max(|start|, |end|) + 4 * max_path_weight.
    std::size_t bound = 0;
    /// Whether every target set the algorithm routed into was certified minimum.
    bool d_prime_minimum = false;
};

struct ReconfigSequence {
    VertexSet start;
    std::vector<Move> moves;
    std::vector<Checkpoint> checkpoints;
    /// Maximum size over all prefix states.
    std::size_t width = 0;
    /// Empty when the route used a non-certified intermediate target.
    std::optional<Guarantee> guarantee;

    /// Replays all moves; throws InputError if a move is not applicable.
    VertexSet end() const;
    /// Sizes of the states D_0..D_l.
    std::vector<std::size_t> state_sizes() const;
    /// Moves inverted, order reversed; checkpoints remapped.
    ReconfigSequence reversed() const;
};

}  // namespace domrecon
