#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "netgate/design.hpp"
#include "netgate/features.hpp"
#include "netgate/graph.hpp"
#include "netgate/lasso.hpp"
#include "netgate/seed_stream.hpp"

namespace netgate {

struct SelectionConfig {
    std::vector<Aggregator> aggs{Aggregator::mean, Aggregator::variance};
    int T = 2;
    FeatureOptions features;
    CvConfig cv;
    /// Candidates whose residual after projecting on [1 | w | S] has relative
    /// norm below this are removed before the LASSO.
    double collinearity_tol = 1e-10;
};

/// Lazily computed feature generations 0, 1, 2, ... for one (graph, assignment).
class FeatureGenerations {
public:
    FeatureGenerations(const Graph& g, const AssignmentVector& w, std::vector<Aggregator> aggs,
                       FeatureOptions options = {});

    const FeatureMatrix& generation(int t);
    /// Generations 0..T stacked column-wise.
    FeatureMatrix stacked(int T);

    const Graph& graph() const noexcept { return *graph_; }
    const AssignmentVector& assignment() const noexcept { return *w_; }
    const FeatureOptions& options() const noexcept { return options_; }

private:
    const Graph* graph_;
    const AssignmentVector* w_;
    std::vector<Aggregator> aggs_;
    FeatureOptions options_;
    std::vector<FeatureMatrix> generations_;
};

struct SelectionStep {
    int iteration = 0;
    std::vector<FeatureDescriptor> candidates;  ///< A after the collinearity guard
    std::vector<FeatureDescriptor> dropped_collinear;
    std::vector<FeatureDescriptor> newly_selected;
    double lambda = 0.0;
};

struct SelectionResult {
    std::vector<FeatureDescriptor> selected;  ///< insertion-ordered
    int t_star = 0;
    std::vector<SelectionStep> trail;
};

/// Sequential generation and selection: each iteration fits a weighted LASSO of
/// y on [w | S | A] with weight 0 on w and S, stops when no A column enters,
/// otherwise moves the entering columns into S and replaces A by the
/// aggregations of all of A.
SelectionResult refex_lasso(const Graph& g, const AssignmentVector& w, const Eigen::VectorXd& y,
                            const SelectionConfig& config, const SeedStream& stream);

/// Same algorithm with every LASSO fitted on a row multiset while features
/// always come from the full-graph generations.
SelectionResult refex_lasso_on_rows(FeatureGenerations& generations, const Eigen::VectorXd& y,
                                    std::span<const RowIndex> rows, const SelectionConfig& config,
                                    const SeedStream& stream);

/// Generate generations 0..T first, then select once with a single LASSO
/// (weight 0 on w, 1 on every generated column).
SelectionResult post_refex_lasso(const Graph& g, const AssignmentVector& w,
                                 const Eigen::VectorXd& y, const SelectionConfig& config,
                                 const SeedStream& stream);

SelectionResult post_refex_lasso_on_rows(const FeatureMatrix& candidates, const AssignmentVector& w,
                                         const Eigen::VectorXd& y, std::span<const RowIndex> rows,
                                         const SelectionConfig& config, const SeedStream& stream);

/// Indices of candidate columns whose projection residual on
/// [1 | unpenalized columns] is negligible over the given rows.
std::vector<std::size_t> collinear_candidates(const Eigen::MatrixXd& unpenalized,
                                              const Eigen::MatrixXd& candidates,
                                              std::span<const RowIndex> rows, double tol);

/// Checks the trail bookkeeping: the cumulative selections s_1, s_2, ... are
/// nested, selected equals their union in insertion order, nothing is selected
/// twice, and only the final iteration may select nothing.
bool trail_is_nested(const SelectionResult& r);

/// Audit dump of the trail as JSON.
void write_selection_json(std::ostream& out, const SelectionResult& r);

}  // namespace netgate
