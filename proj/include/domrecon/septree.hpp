#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "domrecon/graph.hpp"
#include "domrecon/path_code.hpp"

namespace domrecon {

struct TorusInstance;

/// S, A, B partition the working set; |A|, |B| <= 2m/3; no A-B edge.
/// A is the side holding the smallest id of A ∪ B.
struct BalancedSeparator {
    VertexSet s;
    VertexSet a;
    VertexSet b;
};

/// Planar integer coordinates per vertex. With a nonzero period both
/// coordinates live in Z_period and lines wrap around.
struct GridCoordinates {
    std::vector<std::pair<int, int>> xy;
    int period = 0;

    static GridCoordinates from_torus(const TorusInstance& inst);
    /// Labels "s,t,r" are read as torus coordinates (k inferred from n = 5k^2),
    /// labels "x,y" as planar grid points. nullopt if labels are missing or mixed.
    static std::optional<GridCoordinates> from_labels(const Graph& g);
};

class SeparatorStrategy {
public:
    virtual ~SeparatorStrategy() = default;
    virtual std::string name() const = 0;
    /// `working` has at least two vertices.
    virtual BalancedSeparator separate(const Graph& g, const VertexSet& working) const = 0;
};

/// Removes one or two coordinate lines; falls back to bfs-level when no line
/// cut is balanced. Objective: smallest separator, then best balance, then
/// lexicographically smallest separator.
class GridCutStrategy final : public SeparatorStrategy {
public:
    explicit GridCutStrategy(GridCoordinates coords);
    std::string name() const override { return "grid-cut"; }
    BalancedSeparator separate(const Graph& g, const VertexSet& working) const override;

private:
    GridCoordinates coords_;
};

/// BFS levels from a pseudo-peripheral vertex of the largest component; the
/// level giving the best balance is removed, repeated until balanced.
class BfsLevelStrategy final : public SeparatorStrategy {
public:
    std::string name() const override { return "bfs-level"; }
    BalancedSeparator separate(const Graph& g, const VertexSet& working) const override;
};

/// Minimum balanced separator by enumeration (lexicographically first among
/// minimum ones). Throws ResourceError above `max_working` vertices.
class ExactSeparatorStrategy final : public SeparatorStrategy {
public:
    explicit ExactSeparatorStrategy(std::size_t max_working = 18) : max_working_(max_working) {}
    std::string name() const override { return "exact"; }
    BalancedSeparator separate(const Graph& g, const VertexSet& working) const override;

private:
    std::size_t max_working_;
};

/// "grid-cut" needs coordinate labels on the graph; throws InputError otherwise.
std::unique_ptr<SeparatorStrategy> make_strategy(const std::string& name, const Graph& g);

/// Runs the strategy and checks the result (InvariantError if it is not a
/// balanced separator). Throws InputError if |working| < 2.
BalancedSeparator find_separator(const Graph& g, const VertexSet& working, const SeparatorStrategy& strategy);

bool is_balanced_separator(const Graph& g, const VertexSet& working, const BalancedSeparator& sep);

struct TreeNode {
    VertexSet part;
    std::optional<std::size_t> parent;
    /// Child reached by the edge labelled 0.
    std::optional<std::size_t> child0;
    /// Child reached by the edge labelled 1.
    std::optional<std::size_t> child1;
    std::size_t depth = 0;

    bool is_leaf() const noexcept { return !child0.has_value(); }
};

/// Full binary tree whose node parts partition V(G); all leaves share one
/// depth. Node 0 is the root and nodes are numbered in pre-order.
class SeparatorTree {
public:
    SeparatorTree() = default;
    /// Checks the shape (full binary, consistent parents/depths, equal leaf
    /// depth, pre-order numbering); throws InputError otherwise.
    SeparatorTree(std::size_t n, std::vector<TreeNode> nodes, double alpha, std::size_t leaf_threshold,
                  std::string strategy);

    std::size_t n() const noexcept { return n_; }
    const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
    const TreeNode& node(std::size_t i) const { return nodes_.at(i); }
    std::size_t root() const noexcept { return 0; }
    /// Common depth of all leaves.
    std::size_t depth() const noexcept { return depth_; }
    double alpha() const noexcept { return alpha_; }
    std::size_t leaf_threshold() const noexcept { return leaf_threshold_; }
    const std::string& strategy() const noexcept { return strategy_; }

    /// Nodes t_0..t_d of the root-to-leaf path with the given labels.
    std::vector<std::size_t> path_nodes(const PathCode& code) const;
    bool is_ancestor(std::size_t ancestor, std::size_t node) const;
    /// Node whose part contains each vertex.
    std::vector<std::size_t> owner() const;

private:
    std::size_t n_ = 0;
    std::vector<TreeNode> nodes_;
    double alpha_ = 0.5;
    std::size_t leaf_threshold_ = 1;
    std::size_t depth_ = 0;
    std::string strategy_;
};

/// ceil(n^alpha), at least 1.
std::size_t leaf_threshold_for(std::size_t n, double alpha);

/// Recursive separator decomposition. Node part = separator, child 0 gets the
/// A side, child 1 the B side; working sets of size <= ceil(n^alpha) become
/// leaves; shallow leaves are padded with empty children to equal depth.
/// Throws InputError unless 0 < alpha < 1.
SeparatorTree build_tree(const Graph& g, double alpha, const SeparatorStrategy& strategy);

struct TreeCheck {
    bool partition = true;
    bool leaf_bound = true;
    bool ancestor_edges = true;
    std::string message;

    bool ok() const noexcept { return partition && leaf_bound && ancestor_edges; }
};

/// Exhaustive scan of the partition, leaf-size and ancestor-edge properties.
TreeCheck check_tree(const Graph& g, const SeparatorTree& tree);

struct PathSets {
    VertexSet on_path;
    /// Parts of subtrees hanging off the path through a 0-labelled edge.
    VertexSet l_side;
    /// Parts of subtrees hanging off the path through a 1-labelled edge.
    VertexSet r_side;
};

/// Throws InputError if the code length differs from the tree depth.
PathSets path_sets(const SeparatorTree& tree, const PathCode& code);

/// Maximum over root-to-leaf paths of the total part size along the path.
std::size_t max_path_weight(const SeparatorTree& tree);

/// c2 / (1 - (2/3)^alpha) + 1.
double c3_constant(double c2, double alpha);

/// Smallest c2 with |V(t)| <= c2 (2/3)^(alpha d) n^alpha for every non-leaf t
/// at depth d (0 for a single-node tree).
double measured_c2(const SeparatorTree& tree);

}  // namespace domrecon
