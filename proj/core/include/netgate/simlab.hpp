#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "netgate/experiment_config.hpp"
#include "netgate/graph.hpp"
#include "netgate/outcome_model.hpp"
#include "netgate/seed_stream.hpp"

namespace netgate {

/// Mean over reps of (1/n) sum_i [y_i(1) - y_i(0)] with fresh draws of the
/// random terms per rep. Models whose noise is purely additive are evaluated
/// once without noise.
double true_gate_monte_carlo(const Graph& g, const OutcomeModelSpec& model, int reps,
                             const SeedStream& stream);

struct EstimatorSummary {
    std::string name;
    std::size_t ok = 0;
    std::size_t failed = 0;
    double mean_estimate = 0.0;
    double bias = 0.0;
    double rmse = 0.0;
    double variance = 0.0;  ///< population variance of the estimates
    bool is_interval = false;
    double coverage = 0.0;
    double mean_length = 0.0;
    std::size_t flagged = 0;  ///< intervals with a validity warning
};

struct TrialReport {
    std::string experiment;
    std::string model;
    std::string graph;
    std::size_t nodes = 0;
    std::size_t edges = 0;
    double true_gate = 0.0;
    std::size_t trials = 0;
    std::vector<EstimatorSummary> rows;
    /// estimates[r][t]: estimate (or interval midpoint) of row r in trial t; NaN on failure.
    std::vector<std::vector<double>> estimates;
    double mean_selected_refex = 0.0;
    double mean_selected_post = 0.0;
    std::size_t nestedness_violations = 0;
    std::size_t trails_checked = 0;

    const EstimatorSummary& row(const std::string& name) const;
};

/// Builds the graph described by the config for one entry of graph.sizes.
Graph build_experiment_graph(const ExperimentConfig& config, std::size_t size_index,
                             std::string* description = nullptr);

/// Runs every trial on one graph: fresh assignment and outcomes per trial,
/// every configured estimator and interval. Deterministic given config.seed
/// whatever the thread count.
TrialReport run_trials(const ExperimentConfig& config, const Graph& g,
                       const std::string& graph_description);

/// One report per configured graph size. Throws std::invalid_argument for 0 trials.
std::vector<TrialReport> run_experiment(const ExperimentConfig& config);

/// Per-estimator CSV rows (full precision), one header line.
void write_report_csv(std::ostream& out, std::span<const TrialReport> reports);
/// Aligned text table, 6 significant digits.
void write_report_text(std::ostream& out, std::span<const TrialReport> reports);

}  // namespace netgate
