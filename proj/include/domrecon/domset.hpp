#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "domrecon/errors.hpp"
#include "domrecon/graph.hpp"

namespace domrecon {

struct ExactOptions {
    /// Branch-and-bound node limit.
    std::uint64_t budget = 50'000'000;
    /// Search is refused above this order (masks are 64-bit).
    std::size_t max_n = 64;
    /// Known dominating sets used as incumbents; a hint whose size meets the
    /// degree lower bound certifies optimality without search, at any order.
    std::vector<VertexSet> hints;
};

struct ExactResult {
    std::size_t size = 0;
    VertexSet set;
    /// True when `set` is proven minimum.
    bool certified = false;
    /// "lower-bound" when an incumbent met the degree bound, "search" otherwise.
    std::string method;
    std::uint64_t nodes = 0;
};

/// Thrown when the node budget runs out; carries the best set found so far.
class BudgetExceeded : public ResourceError {
public:
    BudgetExceeded(const std::string& what, VertexSet incumbent)
        : ResourceError(what), incumbent_(std::move(incumbent)) {}
    const VertexSet& incumbent() const noexcept { return incumbent_; }

private:
    VertexSet incumbent_;
};

/// Minimum dominating set. Branches on the lowest undominated vertex, trying
/// its closed neighborhood in ascending id order.
ExactResult gamma_exact(const Graph& g, const ExactOptions& options = {});

/// ceil(n / (max_degree + 1)).
std::size_t gamma_lower_bound_regular(const Graph& g);

enum class GreedyTieBreak { lowest_id, highest_id };

/// Max-coverage greedy: repeatedly add the vertex dominating the most
/// still-undominated vertices.
VertexSet greedy_dominating(const Graph& g, GreedyTieBreak tie_break = GreedyTieBreak::lowest_id);

/// Drops members in ascending id order while the set stays dominating.
/// Throws ContractError if `d` is not dominating.
VertexSet reduce_to_minimal(const Graph& g, const VertexSet& d);

bool is_minimal_dominating(const Graph& g, const VertexSet& d);

/// Upper domination number by exhaustive enumeration of minimal dominating
/// sets. Diagnostic only; refuses n > 12.
std::size_t upper_domination_exhaustive(const Graph& g);

}  // namespace domrecon
