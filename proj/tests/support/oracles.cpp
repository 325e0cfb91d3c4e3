#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <Eigen/Dense>

namespace netgate::oracle {

Eigen::MatrixXd dense_adjacency(const Graph& g) {
    const auto n = static_cast<Eigen::Index>(g.num_nodes());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (i != j && g.has_edge(static_cast<NodeId>(i), static_cast<NodeId>(j))) a(i, j) = 1.0;
    return a;
}

Eigen::MatrixXd normalized_adjacency(const Graph& g) {
    Eigen::MatrixXd a = dense_adjacency(g);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        const double d = a.row(i).sum();
        if (d > 0) a.row(i) /= d;
    }
    return a;
}

std::vector<std::vector<int>> all_pairs_hops(const Graph& g) {
    const std::size_t n = g.num_nodes();
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
    for (std::size_t i = 0; i < n; ++i) dist[i][i] = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (dist[i][j] < 0) continue;
                for (std::size_t k = 0; k < n; ++k) {
                    if (!g.has_edge(static_cast<NodeId>(j), static_cast<NodeId>(k))) continue;
                    if (dist[i][k] < 0 || dist[i][k] > dist[i][j] + 1) {
                        dist[i][k] = dist[i][j] + 1;
                        changed = true;
                    }
                }
            }
    }
    return dist;
}

EdgeShares edge_shares_by_pairs(const Graph& g, const std::vector<NodeId>& nodes,
                                const std::vector<double>& w) {
    int total = 0, tc = 0, tt = 0;
    for (std::size_t a = 0; a < nodes.size(); ++a)
        for (std::size_t b = a + 1; b < nodes.size(); ++b) {
            if (!g.has_edge(nodes[a], nodes[b])) continue;
            ++total;
            const bool x = w[nodes[a]] == 1.0, y = w[nodes[b]] == 1.0;
            if (x != y) ++tc;
            if (x && y) ++tt;
        }
    if (total == 0) return {};
    return {static_cast<double>(tc) / total, static_cast<double>(tt) / total};
}

OlsSolution normal_equations(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    Eigen::MatrixXd d(X.rows(), X.cols() + 1);
    d.col(0).setOnes();
    d.rightCols(X.cols()) = X;
    const Eigen::VectorXd b = (d.transpose() * d).ldlt().solve(d.transpose() * y);
    return {b[0], b.tail(X.cols())};
}

double kkt_violation(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                     const std::vector<double>& weights, double lambda, double intercept,
                     const Eigen::VectorXd& coefficients) {
    const double n = static_cast<double>(X.rows());
    const Eigen::VectorXd r = y - X * coefficients - Eigen::VectorXd::Constant(X.rows(), intercept);
    double worst = std::abs(r.mean());  // intercept stationarity
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        const double mean = X.col(j).mean();
        const Eigen::VectorXd c = X.col(j).array() - mean;
        const double sd = std::sqrt(c.squaredNorm() / n);
        if (sd == 0.0) continue;
        const double score = (c / sd).dot(r) / n;
        const double bound = lambda * weights[static_cast<std::size_t>(j)];
        const double beta_std = coefficients[j] * sd;
        if (beta_std != 0.0) {
            worst = std::max(worst, std::abs(score - bound * (beta_std > 0 ? 1.0 : -1.0)));
        } else {
            worst = std::max(worst, std::abs(score) - bound);
        }
    }
    return worst;
}

namespace {

double choose(int d, int k) {
    // Each intermediate is an exact binomial coefficient; c * 60 stays below 2^64.
    std::uint64_t c = 1;
    for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(d - k + i) / static_cast<std::uint64_t>(i);
    return static_cast<double>(c);
}

}  // namespace

double binomial_upper_tail(int d, double p, int k) {
    if (d > 60) throw std::invalid_argument("oracle tail limited to d <= 60");
    double s = 0.0;
    for (int j = std::max(k, 0); j <= d; ++j) s += choose(d, j) * std::pow(p, j) * std::pow(1 - p, d - j);
    return s;
}

double binomial_lower_tail(int d, double p, int k) {
    if (d > 60) throw std::invalid_argument("oracle tail limited to d <= 60");
    double s = 0.0;
    for (int j = 0; j <= std::min(k, d); ++j) s += choose(d, j) * std::pow(p, j) * std::pow(1 - p, d - j);
    return s;
}

}  // namespace netgate::oracle
