#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "robgc/matrix.hpp"

namespace robgc {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>; // stored with first < second

/// Candidate pairs for addition: unordered, deduplicated, no self-loops,
/// disjoint from the source graph's edge set.
using EdgeCandidateSet = std::vector<Edge>;

struct RoleMasks {
    std::vector<NodeId> train;
    std::vector<NodeId> val;
    std::vector<NodeId> test;
};

/// Undirected unweighted graph in CSR form with dense node features and
/// integer class labels. Neighbor lists are sorted, symmetric, and free of
/// self-loops; instances are immutable after construction.
class Graph {
public:
    Graph() = default;

    std::size_t num_nodes() const { return num_nodes_; }
    std::size_t num_undirected_edges() const { return col_.size() / 2; }
    std::size_t degree(NodeId i) const { return row_ptr_[i + 1] - row_ptr_[i]; }

    std::span<const NodeId> neighbors(NodeId i) const {
        return {col_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
    }

    bool has_edge(NodeId u, NodeId v) const;

    /// Undirected edge list, pairs (u, v) with u < v, sorted lexicographically.
    std::vector<Edge> edges() const;

    const Matrix& features() const { return features_; }
    const std::vector<int>& labels() const { return labels_; }
    const RoleMasks& masks() const { return masks_; }
    int num_classes() const { return num_classes_; }

    /// Same nodes/features/labels/masks over a different edge set.
    Graph with_edges(const std::vector<Edge>& edges) const;

    friend Graph build_graph(const std::vector<Edge>& edge_list, std::size_t num_nodes,
                             Matrix features, std::vector<int> labels, RoleMasks masks);

private:
    std::size_t num_nodes_ = 0;
    std::vector<std::uint64_t> row_ptr_; // size num_nodes + 1
    std::vector<NodeId> col_;            // both directions of every edge
    Matrix features_;
    std::vector<int> labels_;
    RoleMasks masks_;
    int num_classes_ = 0;
};

/// Symmetric-normalized self-looped adjacency: D~^(-1/2) (A + I) D~^(-1/2),
/// stored CSR with the self-loop entry present in every row.
struct NormalizedAdjacency {
    std::size_t num_nodes = 0;
    std::vector<std::uint64_t> row_ptr;
    std::vector<NodeId> col;
    std::vector<double> val;
};

struct GraphStats {
    std::size_t num_nodes = 0;
    std::size_t directed_edges = 0; // 2|E|
    double sparsity_percent = 0.0;  // 100 * 2|E| / N^2
    double homophily = 0.0;
};

/// Symmetrizes, deduplicates and drops self-loops. Labels may be -1 for
/// unlabeled nodes. Throws on out-of-range endpoints or size mismatches,
/// naming the offending index.
Graph build_graph(const std::vector<Edge>& edge_list, std::size_t num_nodes,
                  Matrix features = {}, std::vector<int> labels = {}, RoleMasks masks = {});

NormalizedAdjacency normalize(const Graph& graph);

/// Normalized adjacency straight from an undirected edge list (no feature
/// payload); used by threshold search where graphs are edited per lattice point.
NormalizedAdjacency normalize_edge_list(std::size_t num_nodes, const std::vector<Edge>& edges);

/// Returns adj^steps * matrix. steps = 0 returns the input unchanged.
Matrix propagate(const NormalizedAdjacency& adj, const Matrix& matrix, int steps);

/// Fraction of edges joining same-class endpoints; 1.0 for an edgeless graph.
/// Throws if an edge endpoint is unlabeled.
double edge_homophily(const Graph& graph);

/// All pairs at BFS distance in [2, hops], i.e. candidate edges not already
/// present. Breadth-first per node, never dense matrix powers.
EdgeCandidateSet khop_candidates(const Graph& graph, int hops);

GraphStats graph_statistics(const Graph& graph);

} // namespace robgc
