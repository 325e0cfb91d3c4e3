#include "netgate/selection.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace netgate {

FeatureGenerations::FeatureGenerations(const Graph& g, const AssignmentVector& w,
                                       std::vector<Aggregator> aggs, FeatureOptions options)
    : graph_(&g), w_(&w), aggs_(std::move(aggs)), options_(std::move(options)) {
    if (w.size() != g.num_nodes())
        throw std::invalid_argument("FeatureGenerations: assignment length differs from node count");
}

const FeatureMatrix& FeatureGenerations::generation(int t) {
    if (t < 0) throw std::invalid_argument("FeatureGenerations: negative generation");
    if (generations_.empty()) generations_.push_back(base_features(*graph_, *w_, options_));
    while (static_cast<int>(generations_.size()) <= t)
        generations_.push_back(aggregate_generation(*graph_, generations_.back(), aggs_));
    return generations_[static_cast<std::size_t>(t)];
}

FeatureMatrix FeatureGenerations::stacked(int T) {
    FeatureMatrix out(graph_->num_nodes());
    for (int t = 0; t <= T; ++t) out.append(generation(t));
    return out;
}

std::vector<std::size_t> collinear_candidates(const Eigen::MatrixXd& unpenalized,
                                              const Eigen::MatrixXd& candidates,
                                              std::span<const RowIndex> rows, double tol) {
    const auto m = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd base(m, unpenalized.cols() + 1);
    Eigen::MatrixXd cand(m, candidates.cols());
    for (Eigen::Index k = 0; k < m; ++k) {
        const RowIndex r = rows[static_cast<std::size_t>(k)];
        base(k, 0) = 1.0;
        base.row(k).tail(unpenalized.cols()) = unpenalized.row(r);
        cand.row(k) = candidates.row(r);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(base);
    const auto rank = qr.rank();
    // Q is orthogonal, so the residual norm is the norm of Q'x past the rank.
    const Eigen::MatrixXd rotated = qr.householderQ().transpose() * cand;
    std::vector<std::size_t> out;
    for (Eigen::Index j = 0; j < cand.cols(); ++j) {
        const double resid = rotated.col(j).tail(m - rank).norm();
        if (resid < tol * std::max(1.0, cand.col(j).norm())) out.push_back(static_cast<std::size_t>(j));
    }
    return out;
}

namespace {

bool constant_on(const Eigen::VectorXd& y, std::span<const RowIndex> rows) {
    for (RowIndex r : rows)
        if (y[r] != y[rows.front()]) return false;
    return true;
}

struct GuardedFit {
    std::vector<std::size_t> kept;     // candidate indices entering the LASSO
    std::vector<std::size_t> dropped;  // removed by the collinearity guard
    std::vector<std::size_t> active;   // kept candidates with a nonzero coefficient
    double lambda = 0.0;
};

// LASSO of y on [fixed | candidates] with the fixed block unpenalized.
GuardedFit guarded_lasso(const Eigen::MatrixXd& fixed, const Eigen::MatrixXd& candidates,
                         const Eigen::VectorXd& y, std::span<const RowIndex> rows,
                         const SelectionConfig& cfg, const SeedStream& stream) {
    GuardedFit out;
    out.dropped = collinear_candidates(fixed, candidates, rows, cfg.collinearity_tol);
    for (std::size_t j = 0; j < static_cast<std::size_t>(candidates.cols()); ++j)
        if (!std::binary_search(out.dropped.begin(), out.dropped.end(), j)) out.kept.push_back(j);
    if (out.kept.empty()) return out;

    const auto nf = fixed.cols();
    Eigen::MatrixXd X(fixed.rows(), nf + static_cast<Eigen::Index>(out.kept.size()));
    X.leftCols(nf) = fixed;
    for (std::size_t k = 0; k < out.kept.size(); ++k)
        X.col(nf + static_cast<Eigen::Index>(k)) = candidates.col(static_cast<Eigen::Index>(out.kept[k]));
    std::vector<double> weights(static_cast<std::size_t>(X.cols()), 1.0);
    std::fill(weights.begin(), weights.begin() + nf, 0.0);

    const CvResult cv = cv_lasso(X, y, rows, weights, cfg.cv, stream);
    out.lambda = cv.lambda;
    for (std::size_t k = 0; k < out.kept.size(); ++k)
        if (cv.fit.coefficients[nf + static_cast<Eigen::Index>(k)] != 0.0) out.active.push_back(out.kept[k]);
    return out;
}

std::vector<FeatureDescriptor> pick(const std::vector<FeatureDescriptor>& from,
                                    const std::vector<std::size_t>& idx) {
    std::vector<FeatureDescriptor> out;
    out.reserve(idx.size());
    for (auto j : idx) out.push_back(from[j]);
    return out;
}

void check_selection_inputs(std::size_t n, const Eigen::VectorXd& y, std::span<const RowIndex> rows,
                            const SelectionConfig& cfg) {
    if (static_cast<std::size_t>(y.size()) != n)
        throw std::invalid_argument("selection: outcome length differs from node count");
    if (cfg.T < 0) throw std::invalid_argument("selection: T must be >= 0");
    if (rows.empty()) throw std::invalid_argument("selection: no rows");
}

}  // namespace

SelectionResult refex_lasso_on_rows(FeatureGenerations& gens, const Eigen::VectorXd& y,
                                    std::span<const RowIndex> rows, const SelectionConfig& cfg,
                                    const SeedStream& stream) {
    check_selection_inputs(gens.graph().num_nodes(), y, rows, cfg);
    SelectionResult result;
    if (cfg.T < 1) throw std::invalid_argument("refex_lasso: T must be >= 1");
    if (constant_on(y, rows)) return result;

    const Eigen::VectorXd w = gens.assignment().as_vector();
    const auto n = static_cast<Eigen::Index>(w.size());
    Eigen::MatrixXd fixed(n, 1);
    fixed.col(0) = w;

    for (int t = 1; t <= cfg.T; ++t) {
        const FeatureMatrix& A = gens.generation(t - 1);
        const GuardedFit fit = guarded_lasso(fixed, A.values(), y, rows, cfg, stream.child(static_cast<std::uint64_t>(t)));
        SelectionStep step;
        step.iteration = t;
        step.candidates = pick(A.descriptors(), fit.kept);
        step.dropped_collinear = pick(A.descriptors(), fit.dropped);
        step.newly_selected = pick(A.descriptors(), fit.active);
        step.lambda = fit.lambda;
        const bool stop = fit.active.empty();
        if (!stop) {
            fixed.conservativeResize(Eigen::NoChange, fixed.cols() + static_cast<Eigen::Index>(fit.active.size()));
            Eigen::Index c = fixed.cols() - static_cast<Eigen::Index>(fit.active.size());
            for (auto j : fit.active) fixed.col(c++) = A.column(j);
            result.selected.insert(result.selected.end(), step.newly_selected.begin(), step.newly_selected.end());
            result.t_star = t;
        }
        result.trail.push_back(std::move(step));
        if (stop) break;
    }
    return result;
}

SelectionResult refex_lasso(const Graph& g, const AssignmentVector& w, const Eigen::VectorXd& y,
                            const SelectionConfig& cfg, const SeedStream& stream) {
    FeatureGenerations gens(g, w, cfg.aggs, cfg.features);
    const auto rows = all_rows(g.num_nodes());
    return refex_lasso_on_rows(gens, y, rows, cfg, stream);
}

SelectionResult post_refex_lasso_on_rows(const FeatureMatrix& candidates, const AssignmentVector& w,
                                         const Eigen::VectorXd& y, std::span<const RowIndex> rows,
                                         const SelectionConfig& cfg, const SeedStream& stream) {
    check_selection_inputs(w.size(), y, rows, cfg);
    if (candidates.rows() != w.size())
        throw std::invalid_argument("post_refex_lasso: feature rows differ from node count");
    SelectionResult result;
    if (constant_on(y, rows)) return result;
    Eigen::MatrixXd fixed(static_cast<Eigen::Index>(w.size()), 1);
    fixed.col(0) = w.as_vector();
    const GuardedFit fit = guarded_lasso(fixed, candidates.values(), y, rows, cfg, stream);
    SelectionStep step;
    step.iteration = 1;
    step.candidates = pick(candidates.descriptors(), fit.kept);
    step.dropped_collinear = pick(candidates.descriptors(), fit.dropped);
    step.newly_selected = pick(candidates.descriptors(), fit.active);
    step.lambda = fit.lambda;
    result.selected = step.newly_selected;
    for (const auto& d : result.selected) result.t_star = std::max(result.t_star, d.iteration());
    result.trail.push_back(std::move(step));
    return result;
}

SelectionResult post_refex_lasso(const Graph& g, const AssignmentVector& w, const Eigen::VectorXd& y,
                                 const SelectionConfig& cfg, const SeedStream& stream) {
    FeatureGenerations gens(g, w, cfg.aggs, cfg.features);
    const FeatureMatrix all = gens.stacked(cfg.T);
    const auto rows = all_rows(g.num_nodes());
    return post_refex_lasso_on_rows(all, w, y, rows, cfg, stream);
}

bool trail_is_nested(const SelectionResult& r) {
    std::vector<FeatureDescriptor> cumulative;
    for (std::size_t t = 0; t < r.trail.size(); ++t) {
        const auto& step = r.trail[t];
        if (step.newly_selected.empty() && t + 1 != r.trail.size()) return false;
        for (const auto& d : step.newly_selected) {
            if (std::find(cumulative.begin(), cumulative.end(), d) != cumulative.end()) return false;
            cumulative.push_back(d);
        }
    }
    return cumulative == r.selected;
}

void write_selection_json(std::ostream& out, const SelectionResult& r) {
    auto names = [](const std::vector<FeatureDescriptor>& v) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& d : v) a.push_back(d.name());
        return a;
    };
    nlohmann::json j;
    j["selected"] = names(r.selected);
    j["t_star"] = r.t_star;
    j["trail"] = nlohmann::json::array();
    for (const auto& s : r.trail) {
        j["trail"].push_back({{"iteration", s.iteration},
                              {"lambda", s.lambda},
                              {"candidates", names(s.candidates)},
                              {"dropped_collinear", names(s.dropped_collinear)},
                              {"newly_selected", names(s.newly_selected)}});
    }
    out << j.dump(2) << '\n';
}

}  // namespace netgate
