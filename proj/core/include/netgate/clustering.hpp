#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "netgate/graph.hpp"
#include "netgate/seed_stream.hpp"

namespace netgate {

/// Partition of the nodes. For k-hop-max clusterings the label of a cluster is
/// its center node; for graph-agnostic partitions it is the cluster index.
struct Clustering {
    std::vector<NodeId> label_of;  ///< per node
    std::vector<NodeId> labels;    ///< one per cluster, increasing
    std::vector<NodeSet> members;  ///< members[c] belongs to labels[c]

    std::size_t num_clusters() const noexcept { return labels.size(); }
    std::size_t num_nodes() const noexcept { return label_of.size(); }

    static Clustering from_labels(std::vector<NodeId> label_of);
};

/// Every node draws X ~ U(0,1) (node-id order, from the stream) and joins the
/// cluster labelled by the node with the largest draw in its k-hop ball.
/// Exact ties go to the smaller node id.
Clustering k_hop_max(const Graph& g, int k, const SeedStream& stream);

/// Graph-agnostic baseline: i.i.d. uniform labels in [0, num_clusters).
/// Empty clusters are dropped.
Clustering random_partition(std::size_t n, int num_clusters, const SeedStream& stream);

struct ClusterDiagnostics {
    std::size_t count = 0;
    double mean_size = 0.0;
    double size_moment2 = 0.0;  ///< second absolute central moment of sizes
    std::size_t max_size = 0;
    double moment_to_mean = 0.0;
    bool warning = false;  ///< max size > n/2 or fewer than 5 clusters
};

ClusterDiagnostics cluster_diagnostics(const Clustering& c);

/// Two-column CSV "node,center".
void write_clustering_csv(std::ostream& out, const Clustering& c);

}  // namespace netgate
