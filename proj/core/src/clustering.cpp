#include "netgate/clustering.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace netgate {

Clustering Clustering::from_labels(std::vector<NodeId> label_of) {
    Clustering c;
    c.labels = label_of;
    std::sort(c.labels.begin(), c.labels.end());
    c.labels.erase(std::unique(c.labels.begin(), c.labels.end()), c.labels.end());
    c.members.resize(c.labels.size());
    for (NodeId i = 0; i < label_of.size(); ++i) {
        const auto it = std::lower_bound(c.labels.begin(), c.labels.end(), label_of[i]);
        c.members[static_cast<std::size_t>(it - c.labels.begin())].push_back(i);
    }
    c.label_of = std::move(label_of);
    return c;
}

Clustering k_hop_max(const Graph& g, int k, const SeedStream& stream) {
    if (k < 1) throw std::invalid_argument("k_hop_max: k must be >= 1");
    const auto n = static_cast<NodeId>(g.num_nodes());
    std::vector<double> draw(n);
    auto eng = stream.engine();
    for (auto& x : draw) x = uniform01(eng);
    std::vector<NodeId> label(n);
    BallSearch search(g);
    for (NodeId i = 0; i < n; ++i) {
        NodeId best = i;
        for (NodeId j : search.ball(i, k))
            if (draw[j] > draw[best] || (draw[j] == draw[best] && j < best)) best = j;
        label[i] = best;
    }
    return Clustering::from_labels(std::move(label));
}

Clustering random_partition(std::size_t n, int num_clusters, const SeedStream& stream) {
    if (num_clusters < 1) throw std::invalid_argument("random_partition: need at least one cluster");
    std::vector<NodeId> label(n);
    auto eng = stream.engine();
    for (auto& l : label) l = static_cast<NodeId>(uniform_index(eng, static_cast<std::uint64_t>(num_clusters)));
    return Clustering::from_labels(std::move(label));
}

ClusterDiagnostics cluster_diagnostics(const Clustering& c) {
    ClusterDiagnostics d;
    d.count = c.num_clusters();
    if (d.count == 0) {
        d.warning = true;
        return d;
    }
    double total = 0.0;
    for (const auto& m : c.members) {
        total += static_cast<double>(m.size());
        d.max_size = std::max(d.max_size, m.size());
    }
    d.mean_size = total / static_cast<double>(d.count);
    double ss = 0.0;
    for (const auto& m : c.members) {
        const double dev = static_cast<double>(m.size()) - d.mean_size;
        ss += dev * dev;
    }
    d.size_moment2 = ss / static_cast<double>(d.count);
    d.moment_to_mean = d.size_moment2 / d.mean_size;
    d.warning = static_cast<double>(d.max_size) > static_cast<double>(c.num_nodes()) / 2.0 || d.count < 5;
    return d;
}

void write_clustering_csv(std::ostream& out, const Clustering& c) {
    out << "node,center\n";
    for (NodeId i = 0; i < c.label_of.size(); ++i) out << i << ',' << c.label_of[i] << '\n';
}

}  // namespace netgate
