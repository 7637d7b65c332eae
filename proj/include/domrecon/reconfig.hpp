#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "domrecon/domset.hpp"
#include "domrecon/graph.hpp"
#include "domrecon/reconfig_types.hpp"
#include "domrecon/septree.hpp"

namespace domrecon {

/// D(P) = V_G(V(P)) ∪ (L_G(V(P)) ∩ d_prime) ∪ (R_G(V(P)) ∩ d).
/// Throws ContractError if d or d_prime is not dominating and InvariantError
/// if the result is not dominating (malformed tree).
VertexSet special_set(const Graph& g, const SeparatorTree& tree, const PathCode& code, const VertexSet& d,
                      const VertexSet& d_prime);

/// All root-to-leaf codes of the tree in lexicographic order.
std::vector<PathCode> lex_path_iter(const SeparatorTree& tree);

struct TransformOptions {
    /// Whether d_prime is certified minimum; recorded in the guarantee.
    bool d_prime_minimum = false;
    /// Refuse (ResourceError) when the projected move count exceeds this.
    std::size_t move_cap = 10'000'000;
};

/// Number of moves transform() will emit, computed without emitting them.
std::size_t projected_move_count(const SeparatorTree& tree, const VertexSet& d, const VertexSet& d_prime);

/// Walks the special sets D(P) in lexicographic order of the path codes:
/// first add the parts of the all-zeros path, then for consecutive paths
/// remove V(t_j) \ d_prime bottom-up along the old branch and add
/// V(t'_j) \ d top-down along the new one, and finally remove the parts of the
/// all-ones path outside d_prime bottom-up. Within a part: ascending id.
/// Every state is checked for domination as it is produced.
ReconfigSequence transform(const Graph& g, const VertexSet& d, const VertexSet& d_prime, const SeparatorTree& tree,
                           const TransformOptions& options = {});

struct RouteOptions {
    ExactOptions solver;
    /// On solver failure, route through a greedy minimal set instead of
    /// failing; the result then carries no guarantee.
    bool greedy_fallback = false;
    std::size_t move_cap = 10'000'000;
};

struct RouteResult {
    ReconfigSequence sequence;
    /// The intermediate target the route passes through.
    VertexSet via;
    bool via_certified_minimum = false;
};

/// d -> D'' -> d_prime where D'' is a minimum dominating set; the second leg
/// is transform(d_prime -> D'') reversed. Throws ResourceError (with a hint
/// about the greedy fallback) when the exact solver gives up.
RouteResult route_via_minimum(const Graph& g, const VertexSet& d, const VertexSet& d_prime, const SeparatorTree& tree,
                              const RouteOptions& options = {});

struct VerifyReport {
    bool valid = true;
    /// Maximum size over the states that were replayed.
    std::size_t width = 0;
    /// Index of the first state (0 = start) that violates the rules.
    std::optional<std::size_t> first_violation;
    std::string message;
    /// Final state when valid.
    VertexSet end;
};

/// Replays the sequence checking that every state is dominating and every
/// move adds an absent or removes a present vertex.
VerifyReport verify_sequence(const Graph& g, const ReconfigSequence& seq);

struct CheckpointAudit {
    /// Largest number of moves between any state and its nearest checkpoint.
    std::size_t max_checkpoint_distance = 0;
    /// Checkpoints whose state exceeds source_size + 2W.
    std::vector<std::size_t> checkpoint_violations;
    /// Whether width <= max(|start|, |end|) + 4W.
    bool width_within_bound = true;
};

CheckpointAudit audit_checkpoints(const ReconfigSequence& seq, std::size_t max_path_weight);

}  // namespace domrecon
