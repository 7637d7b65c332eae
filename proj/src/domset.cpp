#include "domrecon/domset.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace domrecon {

namespace {

class BranchAndBound {
public:
    BranchAndBound(const Graph& g, std::uint64_t budget) : g_(g), budget_(budget) {
        const std::size_t n = g.n();
        all_ = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
        closed_.resize(n);
        for (std::size_t v = 0; v < n; ++v) {
            std::uint64_t m = std::uint64_t{1} << v;
            for (VertexId u : g.neighbors(static_cast<VertexId>(v))) m |= std::uint64_t{1} << u;
            closed_[v] = m;
        }
    }

    void seed(std::uint64_t set) {
        const auto size = static_cast<std::size_t>(std::popcount(set));
        if (size < best_size_) {
            best_size_ = size;
            best_ = set;
        }
    }

    void run() { search(0, 0, 0); }

    std::uint64_t best() const { return best_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    static constexpr std::size_t memo_cap = 1U << 20;

    void search(std::uint64_t dominated, std::uint64_t chosen, std::size_t size) {
        if (dominated == all_) {
            if (size < best_size_) {
                best_size_ = size;
                best_ = chosen;
            }
            return;
        }
        if (++nodes_ > budget_) {
            throw BudgetExceeded("exact domination search exceeded its node budget of " + std::to_string(budget_),
                                 VertexSet::from_mask(g_.n(), best_));
        }
        const std::uint64_t open = all_ & ~dominated;
        int max_cover = 1;
        for (std::uint64_t m : closed_) max_cover = std::max(max_cover, std::popcount(m & open));
        const auto remaining = static_cast<std::size_t>(std::popcount(open));
        const std::size_t lower = (remaining + static_cast<std::size_t>(max_cover) - 1) / static_cast<std::size_t>(max_cover);
        if (size + lower >= best_size_) return;

        // The same dominated mask reached with at most as many vertices
        // cannot lead anywhere new.
        if (auto it = memo_.find(dominated); it != memo_.end()) {
            if (it->second <= size) return;
            it->second = size;
        } else if (memo_.size() < memo_cap) {
            memo_.emplace(dominated, size);
        }

        const int x = std::countr_zero(open);
        std::uint64_t candidates = closed_[static_cast<std::size_t>(x)];
        while (candidates != 0) {
            const int w = std::countr_zero(candidates);
            candidates &= candidates - 1;
            search(dominated | closed_[static_cast<std::size_t>(w)], chosen | (std::uint64_t{1} << w), size + 1);
        }
    }

    const Graph& g_;
    std::uint64_t budget_;
    std::uint64_t all_ = 0;
    std::vector<std::uint64_t> closed_;
    std::unordered_map<std::uint64_t, std::size_t> memo_;
    std::uint64_t best_ = 0;
    std::size_t best_size_ = SIZE_MAX;
    std::uint64_t nodes_ = 0;
};

}  // namespace

std::size_t gamma_lower_bound_regular(const Graph& g) {
    const std::size_t denom = g.max_degree() + 1;
    return (g.n() + denom - 1) / denom;
}

VertexSet greedy_dominating(const Graph& g, GreedyTieBreak tie_break) {
    const std::size_t n = g.n();
    VertexSet chosen(n);
    std::vector<char> dominated(n, 0);
    std::size_t remaining = n;
    while (remaining > 0) {
        std::size_t best_gain = 0;
        VertexId best = -1;
        for (std::size_t i = 0; i < n; ++i) {
            const auto v = static_cast<VertexId>(i);
            std::size_t gain = dominated[i] ? 0 : 1;
            for (VertexId u : g.neighbors(v)) gain += dominated[static_cast<std::size_t>(u)] ? 0 : 1;
            const bool better = gain > best_gain || (gain == best_gain && gain > 0 && tie_break == GreedyTieBreak::highest_id);
            if (better) {
                best_gain = gain;
                best = v;
            }
        }
        chosen.insert(best);
        auto mark = [&](VertexId u) {
            if (!dominated[static_cast<std::size_t>(u)]) {
                dominated[static_cast<std::size_t>(u)] = 1;
                --remaining;
            }
        };
        mark(best);
        for (VertexId u : g.neighbors(best)) mark(u);
    }
    return chosen;
}

VertexSet reduce_to_minimal(const Graph& g, const VertexSet& d) {
    if (d.universe() != g.n()) throw InputError("vertex set universe does not match graph order");
    if (!is_dominating(g, d)) throw ContractError("reduce_to_minimal: input set is not dominating");
    // dominators[v] = |N[v] ∩ current|
    std::vector<int> dominators(g.n(), 0);
    d.for_each([&](VertexId u) {
        ++dominators[static_cast<std::size_t>(u)];
        for (VertexId w : g.neighbors(u)) ++dominators[static_cast<std::size_t>(w)];
    });
    VertexSet current = d;
    d.for_each([&](VertexId u) {
        bool removable = dominators[static_cast<std::size_t>(u)] >= 2;
        for (VertexId w : g.neighbors(u)) removable = removable && dominators[static_cast<std::size_t>(w)] >= 2;
        if (!removable) return;
        current.erase(u);
        --dominators[static_cast<std::size_t>(u)];
        for (VertexId w : g.neighbors(u)) --dominators[static_cast<std::size_t>(w)];
    });
    return current;
}

bool is_minimal_dominating(const Graph& g, const VertexSet& d) {
    if (!is_dominating(g, d)) return false;
    bool minimal = true;
    d.for_each([&](VertexId u) {
        VertexSet smaller = d;
        smaller.erase(u);
        if (is_dominating(g, smaller)) minimal = false;
    });
    return minimal;
}

ExactResult gamma_exact(const Graph& g, const ExactOptions& options) {
    const std::size_t n = g.n();
    ExactResult result;
    if (n == 0) {
        result.set = VertexSet(0);
        result.certified = true;
        result.method = "lower-bound";
        return result;
    }
    const std::size_t lower = gamma_lower_bound_regular(g);

    VertexSet incumbent = reduce_to_minimal(g, greedy_dominating(g));
    for (const auto& hint : options.hints) {
        if (hint.universe() != n) throw InputError("gamma_exact: hint universe does not match graph order");
        if (!is_dominating(g, hint)) throw ContractError("gamma_exact: hint set is not dominating");
        if (hint.size() < incumbent.size()) incumbent = hint;
    }
    if (incumbent.size() == lower) {
        result.size = incumbent.size();
        result.set = std::move(incumbent);
        result.certified = true;
        result.method = "lower-bound";
        return result;
    }
    if (n > options.max_n || n > 64) {
        throw BudgetExceeded("exact domination search refused: order " + std::to_string(n) + " exceeds guard " +
                                 std::to_string(std::min<std::size_t>(options.max_n, 64)),
                             incumbent);
    }
    BranchAndBound search(g, options.budget);
    search.seed(incumbent.to_mask());
    search.run();
    result.set = VertexSet::from_mask(n, search.best());
    result.size = result.set.size();
    result.certified = true;
    result.method = "search";
    result.nodes = search.nodes();
    return result;
}

std::size_t upper_domination_exhaustive(const Graph& g) {
    const std::size_t n = g.n();
    if (n > 12) throw ResourceError("upper domination enumeration refused: order " + std::to_string(n) + " > 12");
    std::size_t best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        const auto size = static_cast<std::size_t>(std::popcount(mask));
        if (size <= best) continue;
        if (is_minimal_dominating(g, VertexSet::from_mask(n, mask))) best = size;
    }
    return best;
}

}  // namespace domrecon
