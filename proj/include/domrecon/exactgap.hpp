#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "domrecon/errors.hpp"
#include "domrecon/graph.hpp"
#include "domrecon/reconfig_types.hpp"

namespace domrecon {

struct GapLimits {
    std::size_t max_n = 20;
    /// States stored in one breadth-first search (one cap value).
    std::uint64_t max_states = 50'000'000;
};

struct GapReport {
    /// k_star - max(|d|, |d_prime|).
    std::size_t gap = 0;
    /// Smallest cap k with a k-transformation from d to d_prime.
    std::size_t k_star = 0;
    /// A shortest d -> d_prime sequence within cap k_star.
    ReconfigSequence witness;
    /// States stored, summed over all caps tried.
    std::uint64_t states_explored = 0;
};

/// Thrown when a search exceeds the state budget. `largest_insufficient` is
/// the largest cap proven not to admit a transformation, if any.
class GapBudgetExceeded : public ResourceError {
public:
    GapBudgetExceeded(const std::string& what, std::optional<std::size_t> largest_insufficient)
        : ResourceError(what), largest_insufficient_(largest_insufficient) {}
    std::optional<std::size_t> largest_insufficient() const noexcept { return largest_insufficient_; }

private:
    std::optional<std::size_t> largest_insufficient_;
};

/// Whether d and d_prime are connected in the reconfiguration graph of
/// dominating sets of size <= cap. Returns a shortest witness if so.
std::optional<ReconfigSequence> reachable_within(const Graph& g, const VertexSet& d, const VertexSet& d_prime,
                                                 std::size_t cap, const GapLimits& limits = {},
                                                 std::uint64_t* states = nullptr);

/// Iterative deepening over the cap, starting at max(|d|, |d_prime|).
/// Throws ContractError for non-dominating inputs, ResourceError when
/// g.n() > limits.max_n, GapBudgetExceeded when a search runs out of states.
GapReport exact_gap(const Graph& g, const VertexSet& d, const VertexSet& d_prime, const GapLimits& limits = {});

struct GapBoundCheck {
    bool pass = false;
    std::size_t gamma = 0;
    /// floor(n / 2).
    std::size_t half_floor = 0;
    /// Odd n with gap == (n - 1) / 2: the rounding of n/2 matters here.
    bool needs_review = false;
};

/// gap <= min(gamma(G), floor(n/2)). Computes gamma with gamma_exact.
GapBoundCheck gap_upper_bound_check(const Graph& g, const GapReport& report);

}  // namespace domrecon
