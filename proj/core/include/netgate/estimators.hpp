#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "netgate/design.hpp"
#include "netgate/features.hpp"
#include "netgate/graph.hpp"
#include "netgate/lasso.hpp"
#include "netgate/outcome_model.hpp"

namespace netgate {

struct ArmFitSummary {
    std::size_t units = 0;
    int rank = 0;
    bool rank_deficient = false;
};

struct GateEstimate {
    double value = 0.0;
    std::string method;
    ArmFitSummary treated;
    ArmFitSummary control;
};

/// mean(y | w = 1) - mean(y | w = 0). Throws EstimationError on an empty arm.
GateEstimate difference_in_means(const AssignmentVector& w, const Eigen::VectorXd& y);
GateEstimate difference_in_means(const AssignmentVector& w, const Eigen::VectorXd& y,
                                 std::span<const RowIndex> rows);

/// Feature tables needed by the regression-adjustment estimator: the realized
/// columns plus the same recipes evaluated under global treatment and control.
struct AdjustmentTables {
    Eigen::MatrixXd realized;
    Eigen::MatrixXd all_treated;
    Eigen::MatrixXd all_control;

    static AdjustmentTables build(const Graph& g, const Eigen::VectorXd& w,
                                  std::span<const FeatureDescriptor> descriptors,
                                  EdgeScope scope = EdgeScope::closed);
    /// Realized columns taken from an existing matrix.
    static AdjustmentTables build(const Graph& g, const FeatureMatrix& realized,
                                  EdgeScope scope = EdgeScope::closed);
};

/// Arm-wise OLS (with intercepts) on the selected columns over a row multiset,
/// then the average over the same multiset of the treated-arm prediction at
/// global treatment minus the control-arm prediction at global control.
GateEstimate adjusted_gate(const AdjustmentTables& tables, std::span<const std::size_t> columns,
                           const AssignmentVector& w, const Eigen::VectorXd& y,
                           std::span<const RowIndex> rows);

/// Regression-adjusted GATE on the full sample with the given feature recipes.
GateEstimate adjusted_gate(const Graph& g, const AssignmentVector& w, const Eigen::VectorXd& y,
                           std::span<const FeatureDescriptor> selected,
                           EdgeScope scope = EdgeScope::closed);

enum class ExposureArm { treated, control };

/// Fractional exposure event: own assignment equals the arm and at least a
/// q-share (treated) or at most a (1-q)-share (control) of the hop-neighborhood
/// is treated.
struct ExposureEvent {
    ExposureArm arm = ExposureArm::treated;
    double q = 0.8;
    int hop = 1;
};

/// Treated-neighbor count thresholds: count >= ceil(q d) for the treated arm,
/// count <= floor((1-q) d) for the control arm.
std::size_t exposure_threshold(std::size_t d, double q, ExposureArm arm);

/// Exact probability of the exposure event under Bernoulli(p) with d relevant
/// neighbors. d = 0 gives p (treated) or 1-p (control).
double exposure_probability(std::size_t d, double p, double q, ExposureArm arm);

/// Ratio-of-sums estimate from explicit event indicators and probabilities.
/// Throws EstimationError when an arm has no exposed unit.
double hajek_ratio(const Eigen::VectorXd& y, std::span<const std::uint8_t> in_treated,
                   std::span<const double> prob_treated, std::span<const std::uint8_t> in_control,
                   std::span<const double> prob_control);

/// Hajek estimator under the fractional exposure model on the 1- or 2-hop
/// neighborhood (the ball minus the unit itself).
GateEstimate hajek_fractional(const Graph& g, const AssignmentVector& w, const Eigen::VectorXd& y,
                              double p, double q, int hop);

/// Analytic GATE of a linear outcome model on g. Throws std::invalid_argument
/// for the nonlinear model and for the truncated model on a graph with an
/// isolated node.
double true_gate_linear(const Graph& g, const OutcomeModelSpec& model);

}  // namespace netgate
