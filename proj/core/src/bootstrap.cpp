#include "netgate/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "netgate/error.hpp"
#include "netgate/estimators.hpp"
#include "netgate/parallel.hpp"

namespace netgate {

void BootstrapConfig::validate() const {
    if (B < 1) throw std::invalid_argument("bootstrap: B must be >= 1");
    if (ell < 1) throw std::invalid_argument("bootstrap: ell must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("bootstrap: alpha must lie in (0, 1)");
    if (k_override && *k_override < 1) throw std::invalid_argument("bootstrap: k must be >= 1");
    if (iid_clusters < 1) throw std::invalid_argument("bootstrap: iid_clusters must be >= 1");
    if (!(max_discard_share >= 0.0 && max_discard_share <= 1.0))
        throw std::invalid_argument("bootstrap: max_discard_share must lie in [0, 1]");
}

double IntervalEstimate::standard_error() const {
    const auto m = replicate_estimates.size();
    if (m < 2) return std::numeric_limits<double>::quiet_NaN();
    double mean = 0.0;
    for (double v : replicate_estimates) mean += v;
    mean /= static_cast<double>(m);
    double ss = 0.0;
    for (double v : replicate_estimates) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(m - 1));
}

std::pair<double, double> percentile_interval(std::span<const double> samples, double alpha) {
    if (samples.size() < 2) throw std::invalid_argument("percentile_interval: need at least 2 samples");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("percentile_interval: alpha must lie in (0, 1)");
    std::vector<double> x(samples.begin(), samples.end());
    std::sort(x.begin(), x.end());
    auto quantile = [&](double p) {
        const double h = static_cast<double>(x.size() - 1) * p;
        const auto lo = static_cast<std::size_t>(std::floor(h));
        if (lo + 1 >= x.size()) return x.back();
        return x[lo] + (h - static_cast<double>(lo)) * (x[lo + 1] - x[lo]);
    };
    return {quantile(alpha / 2.0), quantile(1.0 - alpha / 2.0)};
}

namespace {

constexpr double kDiscarded = std::numeric_limits<double>::quiet_NaN();

double run_replicate(const ReplicateEstimator& estimator, std::span<const RowIndex> rows,
                     const SeedStream& stream) {
    try {
        return estimator(rows, stream);
    } catch (const EstimationError&) {
        return kDiscarded;
    } catch (const std::invalid_argument&) {
        return kDiscarded;
    }
}

IntervalEstimate pool(const std::vector<double>& slots, double alpha, double max_discard_share) {
    IntervalEstimate out;
    out.attempted = slots.size();
    for (double v : slots) {
        if (std::isnan(v)) ++out.discarded;
        else out.replicate_estimates.push_back(v);
    }
    if (out.replicate_estimates.size() < 2)
        throw EstimationError("bootstrap: fewer than 2 usable replicates");
    std::tie(out.lower, out.upper) = percentile_interval(out.replicate_estimates, alpha);
    out.validity_warning =
        static_cast<double>(out.discarded) > max_discard_share * static_cast<double>(out.attempted);
    return out;
}

std::function<Clustering(int)> clustering_maker(const Graph& g, int k, const BootstrapConfig& cfg,
                                                const SeedStream& stream) {
    if (cfg.scheme == ClusteringScheme::iid_random) {
        return [&g, &cfg, stream](int l) {
            return random_partition(g.num_nodes(), cfg.iid_clusters,
                                    stream.child(1, static_cast<std::uint64_t>(l)));
        };
    }
    return [&g, k, stream](int l) { return k_hop_max(g, k, stream.child(1, static_cast<std::uint64_t>(l))); };
}

int radius(int t_star, const BootstrapConfig& cfg) { return cfg.k_override.value_or(t_star + 1); }

std::vector<std::size_t> column_indices(const std::vector<FeatureDescriptor>& all,
                                        const std::vector<FeatureDescriptor>& wanted) {
    std::vector<std::size_t> cols;
    cols.reserve(wanted.size());
    for (const auto& d : wanted) {
        const auto it = std::find(all.begin(), all.end(), d);
        if (it == all.end()) throw std::invalid_argument("bootstrap: selected feature missing from table");
        cols.push_back(static_cast<std::size_t>(it - all.begin()));
    }
    return cols;
}

}  // namespace

IntervalEstimate cluster_bootstrap(const std::function<Clustering(int l)>& make_clustering,
                                   const ReplicateEstimator& estimator, const BootstrapConfig& cfg,
                                   const SeedStream& stream) {
    cfg.validate();
    const auto ell = static_cast<std::size_t>(cfg.ell);
    const auto B = static_cast<std::size_t>(cfg.B);
    std::vector<Clustering> clusterings(ell);
    parallel_for(ell, cfg.threads, [&](std::size_t l) { clusterings[l] = make_clustering(static_cast<int>(l)); });

    std::vector<double> slots(ell * B, kDiscarded);
    parallel_for(ell * B, cfg.threads, [&](std::size_t task) {
        const std::size_t l = task / B, b = task % B;
        const Clustering& c = clusterings[l];
        if (c.num_clusters() == 0) return;
        const SeedStream rs = stream.child(2).child(l).child(b);
        auto eng = rs.engine();
        std::vector<RowIndex> rows;
        rows.reserve(c.num_nodes());
        for (std::size_t draw = 0; draw < c.num_clusters(); ++draw) {
            const auto& m = c.members[uniform_index(eng, c.num_clusters())];
            rows.insert(rows.end(), m.begin(), m.end());
        }
        slots[task] = run_replicate(estimator, rows, rs.child(0));
    });
    return pool(slots, cfg.alpha, cfg.max_discard_share);
}

IntervalEstimate block_bootstrap_post(const Graph& g, const AssignmentVector& w,
                                      const Eigen::VectorXd& y, const FeatureMatrix& features,
                                      int t_star, const BootstrapConfig& cfg,
                                      const SelectionConfig& selection, const SeedStream& stream) {
    cfg.validate();
    if (features.rows() != g.num_nodes() || w.size() != g.num_nodes() ||
        static_cast<std::size_t>(y.size()) != g.num_nodes())
        throw std::invalid_argument("block_bootstrap_post: input lengths differ");
    const int k = radius(t_star, cfg);
    const AdjustmentTables tables = AdjustmentTables::build(g, features, selection.features.edge_scope);
    ReplicateEstimator est = [&](std::span<const RowIndex> rows, const SeedStream& rs) {
        const SelectionResult sel = post_refex_lasso_on_rows(features, w, y, rows, selection, rs);
        const auto cols = column_indices(features.descriptors(), sel.selected);
        return adjusted_gate(tables, cols, w, y, rows).value;
    };
    IntervalEstimate out = cluster_bootstrap(clustering_maker(g, k, cfg, stream), est, cfg, stream);
    out.k_used = cfg.scheme == ClusteringScheme::k_hop_max ? k : 0;
    return out;
}

ReplicateEstimator refex_replicate_estimator(FeatureGenerations& generations,
                                             const Eigen::VectorXd& y,
                                             const SelectionConfig& selection) {
    if (selection.T < 1) throw std::invalid_argument("refex bootstrap: T must be >= 1");
    // Materialize every generation the loop can reach so concurrent replicates only read.
    const FeatureMatrix all = generations.stacked(selection.T - 1);
    auto tables = std::make_shared<const AdjustmentTables>(
        AdjustmentTables::build(generations.graph(), all, generations.options().edge_scope));
    auto descriptors = std::make_shared<const std::vector<FeatureDescriptor>>(all.descriptors());
    return [&generations, &y, selection, tables, descriptors](std::span<const RowIndex> rows,
                                                              const SeedStream& rs) {
        const SelectionResult sel = refex_lasso_on_rows(generations, y, rows, selection, rs);
        const auto cols = column_indices(*descriptors, sel.selected);
        return adjusted_gate(*tables, cols, generations.assignment(), y, rows).value;
    };
}

IntervalEstimate block_bootstrap_refex(const Graph& g, const AssignmentVector& w,
                                       const Eigen::VectorXd& y, int t_star,
                                       const BootstrapConfig& cfg,
                                       const SelectionConfig& selection, const SeedStream& stream) {
    cfg.validate();
    if (w.size() != g.num_nodes() || static_cast<std::size_t>(y.size()) != g.num_nodes())
        throw std::invalid_argument("block_bootstrap_refex: input lengths differ");
    const int k = radius(t_star, cfg);
    FeatureGenerations gens(g, w, selection.aggs, selection.features);
    const ReplicateEstimator est = refex_replicate_estimator(gens, y, selection);
    IntervalEstimate out = cluster_bootstrap(clustering_maker(g, k, cfg, stream), est, cfg, stream);
    out.k_used = cfg.scheme == ClusteringScheme::k_hop_max ? k : 0;
    return out;
}

IntervalEstimate naive_bootstrap(std::size_t n, const ReplicateEstimator& estimator, int B,
                                 double alpha, const SeedStream& stream, int threads) {
    if (B < 2) throw std::invalid_argument("naive_bootstrap: B must be >= 2");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("naive_bootstrap: alpha must lie in (0, 1)");
    if (n == 0) throw std::invalid_argument("naive_bootstrap: no units");
    const auto reps = static_cast<std::size_t>(B);
    std::vector<double> slots(reps, kDiscarded);
    parallel_for(reps, threads, [&](std::size_t b) {
        const SeedStream rs = stream.child(3).child(b);
        auto eng = rs.engine();
        std::vector<RowIndex> rows(n);
        for (auto& r : rows) r = static_cast<RowIndex>(uniform_index(eng, n));
        slots[b] = run_replicate(estimator, rows, rs.child(0));
    });
    return pool(slots, alpha, 0.2);
}

}  // namespace netgate
