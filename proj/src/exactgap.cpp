#include "domrecon/exactgap.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <unordered_map>

#include "domrecon/domset.hpp"

namespace domrecon {

namespace {

std::vector<std::uint64_t> closed_masks(const Graph& g) {
    std::vector<std::uint64_t> masks(g.n());
    for (std::size_t v = 0; v < g.n(); ++v) {
        std::uint64_t m = std::uint64_t{1} << v;
        for (VertexId u : g.neighbors(static_cast<VertexId>(v))) m |= std::uint64_t{1} << u;
        masks[v] = m;
    }
    return masks;
}

bool dominates(const std::vector<std::uint64_t>& closed, std::uint64_t state) {
    for (std::uint64_t m : closed) {
        if ((m & state) == 0) return false;
    }
    return true;
}

}  // namespace

std::optional<ReconfigSequence> reachable_within(const Graph& g, const VertexSet& d, const VertexSet& d_prime,
                                                 std::size_t cap, const GapLimits& limits, std::uint64_t* states) {
    const std::size_t n = g.n();
    if (n > 64) throw ResourceError("exact gap search supports at most 64 vertices");
    const auto closed = closed_masks(g);
    const std::uint64_t source = d.to_mask();
    const std::uint64_t target = d_prime.to_mask();
    if (static_cast<std::size_t>(std::popcount(source)) > cap || static_cast<std::size_t>(std::popcount(target)) > cap) {
        return std::nullopt;
    }

    // A state is its bitmask, which is a canonical encoding of the set.
    std::unordered_map<std::uint64_t, std::uint64_t> parent{{source, source}};
    std::deque<std::uint64_t> queue{source};
    auto found = source == target;
    while (!queue.empty() && !found) {
        const std::uint64_t cur = queue.front();
        queue.pop_front();
        const auto size = static_cast<std::size_t>(std::popcount(cur));
        for (std::size_t v = 0; v < n && !found; ++v) {
            const std::uint64_t bit = std::uint64_t{1} << v;
            std::uint64_t next = cur ^ bit;
            if ((cur & bit) == 0 && size + 1 > cap) continue;
            if ((cur & bit) != 0 && !dominates(closed, next)) continue;
            if (!parent.try_emplace(next, cur).second) continue;
            if (parent.size() > limits.max_states) {
                if (states) *states += parent.size();
                throw GapBudgetExceeded("exact gap search exceeded " + std::to_string(limits.max_states) +
                                            " states at cap " + std::to_string(cap),
                                        std::nullopt);
            }
            found = next == target;
            queue.push_back(next);
        }
    }
    if (states) *states += parent.size();
    if (!found) return std::nullopt;

    std::vector<std::uint64_t> chain{target};
    while (chain.back() != source) chain.push_back(parent.at(chain.back()));
    std::reverse(chain.begin(), chain.end());
    ReconfigSequence seq;
    seq.start = d;
    for (std::size_t i = 1; i < chain.size(); ++i) {
        const std::uint64_t diff = chain[i] ^ chain[i - 1];
        const auto v = static_cast<VertexId>(std::countr_zero(diff));
        seq.moves.push_back({(chain[i] & diff) != 0 ? MoveKind::add : MoveKind::remove, v});
    }
    const auto sizes = seq.state_sizes();
    seq.width = *std::max_element(sizes.begin(), sizes.end());
    return seq;
}

GapReport exact_gap(const Graph& g, const VertexSet& d, const VertexSet& d_prime, const GapLimits& limits) {
    if (d.universe() != g.n() || d_prime.universe() != g.n()) {
        throw InputError("exact_gap: set universe does not match graph order");
    }
    if (!is_dominating(g, d)) throw ContractError("exact_gap: d is not a dominating set");
    if (!is_dominating(g, d_prime)) throw ContractError("exact_gap: d_prime is not a dominating set");
    if (g.n() > limits.max_n || g.n() > 64) {
        throw ResourceError("exact gap search refused: order " + std::to_string(g.n()) + " exceeds guard " +
                            std::to_string(std::min<std::size_t>(limits.max_n, 64)));
    }
    GapReport report;
    const std::size_t base = std::max(d.size(), d_prime.size());
    std::optional<std::size_t> insufficient;
    // With cap n the full vertex set links everything, so the loop ends.
    for (std::size_t cap = base; cap <= std::max(base, g.n()); ++cap) {
        std::optional<ReconfigSequence> witness;
        try {
            witness = reachable_within(g, d, d_prime, cap, limits, &report.states_explored);
        } catch (const GapBudgetExceeded& e) {
            throw GapBudgetExceeded(e.what(), insufficient);
        }
        if (witness) {
            report.k_star = cap;
            report.gap = cap - base;
            report.witness = std::move(*witness);
            return report;
        }
        insufficient = cap;
    }
    throw InvariantError("exact_gap: no transformation even with cap n");
}

GapBoundCheck gap_upper_bound_check(const Graph& g, const GapReport& report) {
    GapBoundCheck check;
    check.gamma = gamma_exact(g).size;
    check.half_floor = g.n() / 2;
    check.pass = report.gap <= std::min(check.gamma, check.half_floor);
    check.needs_review = g.n() % 2 == 1 && report.gap == (g.n() - 1) / 2;
    return check;
}

}  // namespace domrecon
