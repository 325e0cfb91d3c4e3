#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "netgate/clustering.hpp"
#include "netgate/design.hpp"
#include "netgate/features.hpp"
#include "netgate/graph.hpp"
#include "netgate/lasso.hpp"
#include "netgate/seed_stream.hpp"
#include "netgate/selection.hpp"

namespace netgate {

enum class ClusteringScheme {
    k_hop_max,   ///< adaptive radius k = t_star + 1 unless overridden
    iid_random,  ///< graph-agnostic i.i.d. split into a fixed number of clusters
};

struct BootstrapConfig {
    int B = 100;     ///< replicates per clustering
    int ell = 3;     ///< number of independent clusterings
    double alpha = 0.1;
    std::optional<int> k_override;
    ClusteringScheme scheme = ClusteringScheme::k_hop_max;
    int iid_clusters = 5;
    int threads = 1;
    /// Share of discarded replicates above which the interval is flagged.
    double max_discard_share = 0.2;

    /// Throws std::invalid_argument when B < 1, ell < 1 or alpha not in (0,1).
    void validate() const;
};

struct IntervalEstimate {
    double lower = 0.0;
    double upper = 0.0;
    std::vector<double> replicate_estimates;  ///< kept replicates, (clustering, replicate) order
    int k_used = 0;
    std::size_t attempted = 0;
    std::size_t discarded = 0;
    bool validity_warning = false;

    double length() const noexcept { return upper - lower; }
    bool contains(double v) const noexcept { return lower <= v && v <= upper; }
    /// Sample standard deviation of the replicate estimates.
    double standard_error() const;
};

/// Empirical alpha/2 and 1-alpha/2 quantiles. Quantile p of sorted x_0..x_{N-1}
/// is x_h' + (h - h')(x_{h'+1} - x_h') with h = (N-1)p, h' = floor(h).
std::pair<double, double> percentile_interval(std::span<const double> samples, double alpha);

/// Estimate for one bootstrap sample given as a unit multiset. Throwing
/// EstimationError or std::invalid_argument discards the replicate.
using ReplicateEstimator =
    std::function<double(std::span<const RowIndex> rows, const SeedStream& stream)>;

/// Resamples whole clusters with replacement: for each of ell clusterings
/// (produced by make_clustering(l)), B replicates of C clusters drawn from the
/// C available ones. Results are collected in (l, b) order regardless of threads.
IntervalEstimate cluster_bootstrap(const std::function<Clustering(int l)>& make_clustering,
                                   const ReplicateEstimator& estimator, const BootstrapConfig& cfg,
                                   const SeedStream& stream);

/// Block bootstrap for post-selection adjustment: one LASSO per replicate over
/// the precomputed candidate columns, then the adjusted estimate with the
/// replicate's selected columns.
IntervalEstimate block_bootstrap_post(const Graph& g, const AssignmentVector& w,
                                      const Eigen::VectorXd& y, const FeatureMatrix& features,
                                      int t_star, const BootstrapConfig& cfg,
                                      const SelectionConfig& selection, const SeedStream& stream);

/// Block bootstrap for sequential selection: each replicate reruns the full
/// sequential loop with every LASSO fitted on the replicate rows while features
/// are generated on the original graph.
IntervalEstimate block_bootstrap_refex(const Graph& g, const AssignmentVector& w,
                                       const Eigen::VectorXd& y, int t_star,
                                       const BootstrapConfig& cfg,
                                       const SelectionConfig& selection, const SeedStream& stream);

/// Unit-level resampling with replacement, n rows per replicate.
IntervalEstimate naive_bootstrap(std::size_t n, const ReplicateEstimator& estimator, int B,
                                 double alpha, const SeedStream& stream, int threads = 1);

/// Replicate estimator rerunning sequential selection and adjustment on a row
/// multiset. The generations object must outlive the returned callable.
ReplicateEstimator refex_replicate_estimator(FeatureGenerations& generations,
                                             const Eigen::VectorXd& y,
                                             const SelectionConfig& selection);

}  // namespace netgate
