#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "netgate/seed_stream.hpp"

namespace netgate {

using NodeId = std::uint32_t;

/// Sorted, duplicate-free list of node ids.
using NodeSet = std::vector<NodeId>;

/// Immutable undirected simple graph in compressed adjacency form.
///
/// Neighbor lists are sorted; the graph has no self-loops or parallel edges
/// and node ids are dense in [0, n).
class Graph {
public:
    Graph() = default;

    /// Builds a simple graph from an arbitrary edge list. Self-loops are dropped
    /// and parallel edges collapsed; the counts are reported through the out
    /// parameters when given.
    static Graph from_edges(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges,
                            std::size_t* self_loops_dropped = nullptr,
                            std::size_t* duplicates_dropped = nullptr);

    std::size_t num_nodes() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t num_edges() const noexcept { return adjacency_.size() / 2; }

    std::span<const NodeId> neighbors(NodeId i) const noexcept {
        return {adjacency_.data() + offsets_[i], adjacency_.data() + offsets_[i + 1]};
    }
    std::size_t degree(NodeId i) const noexcept { return offsets_[i + 1] - offsets_[i]; }
    double mean_degree() const noexcept;
    bool has_edge(NodeId i, NodeId j) const noexcept;
    bool has_isolated_node() const noexcept;

    /// Edges as (i, j) pairs with i < j, in lexicographic order.
    std::vector<std::pair<NodeId, NodeId>> edges() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> adjacency_;
};

enum class EdgeListFormat { automatic, whitespace, csv };

struct LoadedGraph {
    Graph graph;
    /// labels[i] is the original label of dense node i (first-appearance order).
    std::vector<std::string> labels;
    std::size_t self_loops_dropped = 0;
    std::size_t duplicates_dropped = 0;
};

/// Reads an edge list: one edge per line, two labels separated by whitespace or
/// a comma. Blank lines and lines starting with '#' are ignored.
/// Throws ParseError on malformed lines or when no edge is present.
LoadedGraph load_edge_list(std::istream& in, EdgeListFormat format = EdgeListFormat::automatic);
LoadedGraph load_edge_list_file(const std::string& path,
                                EdgeListFormat format = EdgeListFormat::automatic);

void write_label_map(std::ostream& out, std::span<const std::string> labels);

struct Subgraph {
    Graph graph;
    std::vector<NodeId> original_ids;  ///< original_ids[new id] = id in the parent graph
};

/// Induced subgraph on the largest connected component. Ties go to the
/// component containing the smallest node id.
Subgraph largest_connected_component(const Graph& g);

/// Connected-component label per node; labels are assigned in order of each
/// component's smallest node id.
std::vector<std::size_t> connected_components(const Graph& g);

/// All nodes within graph distance k of i, including i.
NodeSet k_hop_ball(const Graph& g, NodeId i, int k);

/// Reusable BFS scratch space for repeated ball queries on one graph.
class BallSearch {
public:
    explicit BallSearch(const Graph& g);

    /// Nodes at distance <= k from i, in BFS order (unsorted, i first).
    std::span<const NodeId> ball(NodeId i, int k);

private:
    const Graph* graph_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
    std::vector<NodeId> frontier_;
};

/// out_i = (1/d_i) sum_{j in N(i)} v_j, with out_i = 0 for isolated nodes.
Eigen::VectorXd normalized_adjacency_apply(const Graph& g, const Eigen::VectorXd& v);

/// Disjoint union of complete graphs, consecutively indexed.
Graph generate_clique_graph(std::span<const int> sizes);

/// Clique sizes drawn uniformly from [min_size, max_size] until they cover at
/// least target_nodes nodes.
std::vector<int> draw_clique_sizes(std::size_t target_nodes, int min_size, int max_size,
                                   const SeedStream& stream);

/// Watts-Strogatz rewiring of a ring lattice; the result is simplified.
Graph generate_small_world(std::size_t n, int mean_degree, double rewire_prob,
                           const SeedStream& stream);

}  // namespace netgate
