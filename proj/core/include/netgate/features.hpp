#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "netgate/design.hpp"
#include "netgate/graph.hpp"

namespace netgate {

/// Unit-level features computable from a node's 1-hop neighborhood.
enum class BaseFeature {
    frac_treated_nbrs,  ///< rho_i = (1/d_i) sum_{j in N(i)} w_j
    num_treated_nbrs,   ///< nu_i = sum_{j in N(i)} w_j
    frac_tc_edges,      ///< share of neighborhood edges joining a treated and a control unit
    frac_tt_edges,      ///< share of neighborhood edges joining two treated units
};

enum class Aggregator { mean, variance, min, max, sum };

/// Which edges count as "edges in the neighborhood" for the edge-fraction bases.
enum class EdgeScope {
    closed,  ///< induced subgraph on N(i) plus i itself
    open,    ///< induced subgraph on N(i) only
};

std::string_view to_string(BaseFeature b);
std::string_view to_string(Aggregator a);
std::optional<BaseFeature> parse_base_feature(std::string_view s);
std::optional<Aggregator> parse_aggregator(std::string_view s);
/// Comma-separated aggregator list, e.g. "mean,variance". Throws std::invalid_argument.
std::vector<Aggregator> parse_aggregator_list(std::string_view s);
std::vector<BaseFeature> parse_base_feature_list(std::string_view s);

inline constexpr BaseFeature kAllBaseFeatures[] = {
    BaseFeature::frac_treated_nbrs, BaseFeature::num_treated_nbrs, BaseFeature::frac_tc_edges,
    BaseFeature::frac_tt_edges};

/// Recipe for one generated column: a base feature followed by a chain of
/// neighborhood aggregations. The generation index is the chain length.
struct FeatureDescriptor {
    BaseFeature base = BaseFeature::frac_treated_nbrs;
    std::vector<Aggregator> chain;

    int iteration() const noexcept { return static_cast<int>(chain.size()); }

    /// "frac_treated_nbrs|mean|variance"
    std::string name() const;
    /// Inverse of name(); throws std::invalid_argument on unknown tokens.
    static FeatureDescriptor parse(std::string_view name);

    FeatureDescriptor then(Aggregator a) const;

    friend auto operator<=>(const FeatureDescriptor&, const FeatureDescriptor&) = default;
    friend bool operator==(const FeatureDescriptor&, const FeatureDescriptor&) = default;
};

/// n x m column store of unit-level features, each column tagged with its recipe.
class FeatureMatrix {
public:
    FeatureMatrix() = default;
    explicit FeatureMatrix(std::size_t rows) : values_(static_cast<Eigen::Index>(rows), 0) {}

    std::size_t rows() const noexcept { return static_cast<std::size_t>(values_.rows()); }
    std::size_t cols() const noexcept { return descriptors_.size(); }

    const std::vector<FeatureDescriptor>& descriptors() const noexcept { return descriptors_; }
    const Eigen::MatrixXd& values() const noexcept { return values_; }
    auto column(std::size_t j) const { return values_.col(static_cast<Eigen::Index>(j)); }

    std::optional<std::size_t> index_of(const FeatureDescriptor& d) const;

    /// Appends a column; throws std::invalid_argument on a duplicate descriptor
    /// or a length mismatch.
    void append(FeatureDescriptor d, const Eigen::VectorXd& column);
    /// Appends every column of other.
    void append(const FeatureMatrix& other);

    /// Columns in the order given by the descriptor list; throws when one is missing.
    FeatureMatrix select(std::span<const FeatureDescriptor> wanted) const;

private:
    std::vector<FeatureDescriptor> descriptors_;
    Eigen::MatrixXd values_;
};

struct FeatureOptions {
    std::vector<BaseFeature> bases{std::begin(kAllBaseFeatures), std::end(kAllBaseFeatures)};
    EdgeScope edge_scope = EdgeScope::closed;
};

/// Base features under assignment w (0/1 entries, length n).
FeatureMatrix base_features(const Graph& g, const Eigen::VectorXd& w,
                            const FeatureOptions& options = {});
FeatureMatrix base_features(const Graph& g, const AssignmentVector& w,
                            const FeatureOptions& options = {});

/// One value per node of a single base feature.
Eigen::VectorXd base_feature_column(const Graph& g, const Eigen::VectorXd& w, BaseFeature base,
                                    EdgeScope scope = EdgeScope::closed);

/// value_i = agg({f_j : j in N(i)}) over the open neighborhood. Empty
/// neighborhoods give 0; variance is the population variance.
Eigen::VectorXd aggregate_column(const Graph& g, const Eigen::VectorXd& f, Aggregator agg);

/// Applies every aggregator to every column of prev (column-major order:
/// all aggregators of column 0, then column 1, ...).
FeatureMatrix aggregate_generation(const Graph& g, const FeatureMatrix& prev,
                                   std::span<const Aggregator> aggs);

/// Generations 0..T where generation t+1 aggregates generation t.
std::vector<FeatureMatrix> generate_generations(const Graph& g, const AssignmentVector& w,
                                                std::span<const Aggregator> aggs, int T,
                                                const FeatureOptions& options = {});

/// Evaluates each descriptor's full recipe under an arbitrary assignment.
FeatureMatrix evaluate_features(const Graph& g, const Eigen::VectorXd& w,
                                std::span<const FeatureDescriptor> descriptors,
                                EdgeScope scope = EdgeScope::closed);

enum class Arm { all_control, all_treated };

/// Features as they would be under global treatment or global control.
FeatureMatrix counterfactual_features(const Graph& g,
                                      std::span<const FeatureDescriptor> descriptors, Arm arm,
                                      EdgeScope scope = EdgeScope::closed);

/// CSV with descriptor names as header and full-precision values.
void write_feature_csv(std::ostream& out, const FeatureMatrix& m);

}  // namespace netgate
