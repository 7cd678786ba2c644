#include "robgc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

namespace robgc {

namespace {

std::vector<Edge> canonical_edges(const std::vector<Edge>& edge_list, std::size_t num_nodes) {
    std::vector<Edge> edges;
    edges.reserve(edge_list.size());
    for (std::size_t k = 0; k < edge_list.size(); ++k) {
        const auto [u, v] = edge_list[k];
        if (u >= num_nodes || v >= num_nodes)
            throw std::invalid_argument("edge " + std::to_string(k) + " endpoint out of range: (" +
                                        std::to_string(u) + ", " + std::to_string(v) + ")");
        if (u == v) continue; // self-loops dropped
        edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

void fill_csr(std::size_t num_nodes, const std::vector<Edge>& edges,
              std::vector<std::uint64_t>& row_ptr, std::vector<NodeId>& col) {
    row_ptr.assign(num_nodes + 1, 0);
    for (const auto& [u, v] : edges) {
        ++row_ptr[u + 1];
        ++row_ptr[v + 1];
    }
    for (std::size_t i = 0; i < num_nodes; ++i) row_ptr[i + 1] += row_ptr[i];
    col.resize(edges.size() * 2);
    std::vector<std::uint64_t> cursor(row_ptr.begin(), row_ptr.end() - 1);
    for (const auto& [u, v] : edges) {
        col[cursor[u]++] = v;
        col[cursor[v]++] = u;
    }
    for (std::size_t i = 0; i < num_nodes; ++i)
        std::sort(col.begin() + static_cast<std::ptrdiff_t>(row_ptr[i]),
                  col.begin() + static_cast<std::ptrdiff_t>(row_ptr[i + 1]));
}

} // namespace

Graph build_graph(const std::vector<Edge>& edge_list, std::size_t num_nodes, Matrix features,
                  std::vector<int> labels, RoleMasks masks) {
    if (!features.empty() && features.rows() != num_nodes)
        throw std::invalid_argument("feature rows (" + std::to_string(features.rows()) +
                                    ") do not match node count (" + std::to_string(num_nodes) + ")");
    if (!labels.empty() && labels.size() != num_nodes)
        throw std::invalid_argument("label count (" + std::to_string(labels.size()) +
                                    ") does not match node count (" + std::to_string(num_nodes) + ")");

    Graph g;
    g.num_nodes_ = num_nodes;
    const auto edges = canonical_edges(edge_list, num_nodes);
    fill_csr(num_nodes, edges, g.row_ptr_, g.col_);
    g.features_ = std::move(features);
    g.labels_ = std::move(labels);

    int num_classes = 0;
    for (std::size_t i = 0; i < g.labels_.size(); ++i) {
        if (g.labels_[i] < -1)
            throw std::invalid_argument("label of node " + std::to_string(i) + " is negative");
        num_classes = std::max(num_classes, g.labels_[i] + 1);
    }
    g.num_classes_ = num_classes;

    std::vector<char> role(num_nodes, 0);
    auto claim = [&](const std::vector<NodeId>& mask, const char* name) {
        for (NodeId id : mask) {
            if (id >= num_nodes)
                throw std::invalid_argument(std::string(name) + " mask node " + std::to_string(id) +
                                            " out of range");
            if (role[id]) throw std::invalid_argument("node " + std::to_string(id) + " appears in two masks");
            role[id] = 1;
        }
    };
    claim(masks.train, "train");
    claim(masks.val, "val");
    claim(masks.test, "test");
    g.masks_ = std::move(masks);
    return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(num_undirected_edges());
    for (NodeId u = 0; u < num_nodes_; ++u)
        for (NodeId v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph Graph::with_edges(const std::vector<Edge>& edges) const {
    return build_graph(edges, num_nodes_, features_, labels_, masks_);
}

NormalizedAdjacency normalize(const Graph& graph) {
    const std::size_t n = graph.num_nodes();
    NormalizedAdjacency adj;
    adj.num_nodes = n;
    adj.row_ptr.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i)
        adj.row_ptr[i + 1] = adj.row_ptr[i] + graph.degree(static_cast<NodeId>(i)) + 1;
    adj.col.resize(adj.row_ptr[n]);
    adj.val.resize(adj.row_ptr[n]);

    std::vector<double> inv_sqrt_deg(n);
    for (std::size_t i = 0; i < n; ++i)
        inv_sqrt_deg[i] = 1.0 / std::sqrt(static_cast<double>(graph.degree(static_cast<NodeId>(i)) + 1));

    for (NodeId i = 0; i < n; ++i) {
        std::uint64_t k = adj.row_ptr[i];
        bool placed_self = false;
        for (NodeId j : graph.neighbors(i)) {
            if (!placed_self && j > i) {
                adj.col[k] = i;
                adj.val[k] = inv_sqrt_deg[i] * inv_sqrt_deg[i];
                ++k;
                placed_self = true;
            }
            adj.col[k] = j;
            adj.val[k] = inv_sqrt_deg[i] * inv_sqrt_deg[j];
            ++k;
        }
        if (!placed_self) {
            adj.col[k] = i;
            adj.val[k] = inv_sqrt_deg[i] * inv_sqrt_deg[i];
        }
    }
    return adj;
}

NormalizedAdjacency normalize_edge_list(std::size_t num_nodes, const std::vector<Edge>& edges) {
    NormalizedAdjacency adj;
    adj.num_nodes = num_nodes;
    adj.row_ptr.assign(num_nodes + 1, 0);
    for (const auto& [u, v] : edges) {
        ++adj.row_ptr[u + 1];
        ++adj.row_ptr[v + 1];
    }
    for (std::size_t i = 0; i < num_nodes; ++i) adj.row_ptr[i + 1] += adj.row_ptr[i] + 1; // +1 self-loop

    std::vector<double> inv_sqrt_deg(num_nodes);
    for (std::size_t i = 0; i < num_nodes; ++i) {
        const std::uint64_t deg = adj.row_ptr[i + 1] - adj.row_ptr[i]; // self-loop included
        inv_sqrt_deg[i] = 1.0 / std::sqrt(static_cast<double>(deg));
    }

    adj.col.resize(adj.row_ptr[num_nodes]);
    adj.val.resize(adj.row_ptr[num_nodes]);
    std::vector<std::uint64_t> cursor(num_nodes);
    for (std::size_t i = 0; i < num_nodes; ++i) {
        cursor[i] = adj.row_ptr[i] + 1;
        adj.col[adj.row_ptr[i]] = static_cast<NodeId>(i);
        adj.val[adj.row_ptr[i]] = inv_sqrt_deg[i] * inv_sqrt_deg[i];
    }
    for (const auto& [u, v] : edges) {
        adj.col[cursor[u]] = v;
        adj.val[cursor[u]++] = inv_sqrt_deg[u] * inv_sqrt_deg[v];
        adj.col[cursor[v]] = u;
        adj.val[cursor[v]++] = inv_sqrt_deg[u] * inv_sqrt_deg[v];
    }
    return adj;
}

Matrix propagate(const NormalizedAdjacency& adj, const Matrix& matrix, int steps) {
    if (matrix.rows() != adj.num_nodes)
        throw std::invalid_argument("propagate: matrix rows do not match node count");
    if (steps < 0) throw std::invalid_argument("propagate: negative step count");
    Matrix cur = matrix;
    Matrix next(matrix.rows(), matrix.cols());
    for (int s = 0; s < steps; ++s) {
        next.fill(0.0);
        for (std::size_t i = 0; i < adj.num_nodes; ++i) {
            auto out = next.row(i);
            for (std::uint64_t k = adj.row_ptr[i]; k < adj.row_ptr[i + 1]; ++k) {
                const double w = adj.val[k];
                const auto src = cur.row(adj.col[k]);
                for (std::size_t c = 0; c < cur.cols(); ++c) out[c] += w * src[c];
            }
        }
        std::swap(cur, next);
    }
    return cur;
}

double edge_homophily(const Graph& graph) {
    std::size_t same = 0, total = 0;
    const auto& labels = graph.labels();
    for (NodeId u = 0; u < graph.num_nodes(); ++u) {
        for (NodeId v : graph.neighbors(u)) {
            if (u >= v) continue;
            if (labels.empty() || labels[u] < 0)
                throw std::invalid_argument("edge endpoint " + std::to_string(u) + " is unlabeled");
            if (labels[v] < 0)
                throw std::invalid_argument("edge endpoint " + std::to_string(v) + " is unlabeled");
            ++total;
            if (labels[u] == labels[v]) ++same;
        }
    }
    if (total == 0) return 1.0; // convention for edgeless graphs
    return static_cast<double>(same) / static_cast<double>(total);
}

EdgeCandidateSet khop_candidates(const Graph& graph, int hops) {
    if (hops < 1 || hops > 5) throw std::invalid_argument("khop_candidates: hops must be in [1, 5]");
    const std::size_t n = graph.num_nodes();
    EdgeCandidateSet out;
    std::vector<int> depth(n, -1);
    std::vector<NodeId> touched;
    std::vector<NodeId> frontier, next_frontier;
    for (NodeId src = 0; src < n; ++src) {
        depth[src] = 0;
        touched.push_back(src);
        frontier.assign(1, src);
        for (int d = 1; d <= hops && !frontier.empty(); ++d) {
            next_frontier.clear();
            for (NodeId u : frontier) {
                for (NodeId v : graph.neighbors(u)) {
                    if (depth[v] >= 0) continue;
                    depth[v] = d;
                    touched.push_back(v);
                    next_frontier.push_back(v);
                    if (d >= 2 && v > src) out.emplace_back(src, v);
                }
            }
            std::swap(frontier, next_frontier);
        }
        for (NodeId t : touched) depth[t] = -1;
        touched.clear();
    }
    std::sort(out.begin(), out.end());
    return out;
}

GraphStats graph_statistics(const Graph& graph) {
    GraphStats stats;
    stats.num_nodes = graph.num_nodes();
    stats.directed_edges = 2 * graph.num_undirected_edges();
    const double n = static_cast<double>(graph.num_nodes());
    stats.sparsity_percent = n > 0 ? 100.0 * static_cast<double>(stats.directed_edges) / (n * n) : 0.0;
    stats.homophily = graph.labels().empty() ? 1.0 : edge_homophily(graph);
    return stats;
}

} // namespace robgc
