#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "netgate/seed_stream.hpp"

namespace netgate {

using RowIndex = Eigen::Index;

/// Row indices 0..n-1.
std::vector<RowIndex> all_rows(std::size_t n);

/// Column standardization statistics of a raw design.
///
/// Columns are centered and scaled to unit population variance. Columns whose
/// standard deviation is negligible relative to their magnitude are flagged
/// and must stay out of every fit.
class DesignMatrix {
public:
    static DesignMatrix standardize(const Eigen::MatrixXd& X);

    const Eigen::MatrixXd& standardized() const noexcept { return standardized_; }
    const Eigen::VectorXd& means() const noexcept { return means_; }
    const Eigen::VectorXd& scales() const noexcept { return scales_; }
    const std::vector<bool>& zero_variance() const noexcept { return zero_variance_; }

private:
    Eigen::MatrixXd standardized_;
    Eigen::VectorXd means_;
    Eigen::VectorXd scales_;
    std::vector<bool> zero_variance_;
};

/// True when a column with this mean and standard deviation is treated as constant.
bool is_negligible_scale(double sd, double mean) noexcept;

struct LassoOptions {
    double tolerance = 1e-7;  ///< max standardized coefficient change per sweep
    int max_sweeps = 100000;
    /// When set, receives the penalized objective after every sweep.
    std::vector<double>* objective_trace = nullptr;
};

struct LassoFit {
    double intercept = 0.0;
    Eigen::VectorXd coefficients;               ///< original scale
    Eigen::VectorXd standardized_coefficients;  ///< scale of the standardized columns
    std::vector<std::size_t> active_set;        ///< columns with a nonzero coefficient
    std::vector<bool> zero_variance;
    double lambda = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Weighted-penalty LASSO by cyclic coordinate descent on standardized columns.
///
/// Minimizes (1/(2N)) |y - b0 - Z beta|^2 + lambda sum_j weight_j |beta_j| where
/// Z is the standardized design over the selected rows (a multiset; repeated
/// indices count repeatedly). Weight 0 leaves a column unpenalized. The
/// intercept is never penalized. Coefficients are reported on both scales.
LassoFit fit_weighted_lasso(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                            std::span<const double> penalty_weights, double lambda,
                            const LassoOptions& options = {});
LassoFit fit_weighted_lasso(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                            std::span<const RowIndex> rows, std::span<const double> penalty_weights,
                            double lambda, const LassoOptions& options = {});

/// Smallest lambda at which every penalized coefficient is zero, given that
/// the intercept and all weight-0 columns are fitted freely.
/// Throws std::invalid_argument when no column is penalized.
double lambda_max(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                  std::span<const double> penalty_weights);
double lambda_max(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                  std::span<const RowIndex> rows, std::span<const double> penalty_weights);

struct CvConfig {
    int folds = 10;
    int grid_size = 100;
    double min_ratio = 1e-3;  ///< smallest grid value relative to lambda_max
    LassoOptions solver;
};

struct CvResult {
    std::vector<double> lambdas;     ///< decreasing
    std::vector<double> mean_error;  ///< pooled held-out mean squared error per lambda
    std::size_t best = 0;
    double lambda = 0.0;
    LassoFit fit;  ///< refit on all rows at the selected lambda
};

/// K-fold cross-validation over a log-spaced grid from lambda_max down to
/// min_ratio * lambda_max, lambda-min rule. Folds come from a seeded shuffle,
/// so the result is a pure function of the inputs and the stream.
CvResult cv_lasso(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                  std::span<const RowIndex> rows, std::span<const double> penalty_weights,
                  const CvConfig& config, const SeedStream& stream);

double cv_select_lambda(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                        std::span<const double> penalty_weights, int n_folds, int grid_size,
                        const SeedStream& stream);

struct OlsFit {
    double intercept = 0.0;
    Eigen::VectorXd coefficients;
    int rank = 0;
    bool rank_deficient = false;
};

/// Least squares with intercept via column-pivoted QR. Columns found to be
/// linearly dependent receive coefficient 0. Requires rows >= columns + 1.
OlsFit ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);
OlsFit ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, std::span<const RowIndex> rows);

}  // namespace netgate
