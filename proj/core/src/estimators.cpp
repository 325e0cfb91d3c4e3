#include "netgate/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "netgate/error.hpp"

namespace netgate {

GateEstimate difference_in_means(const AssignmentVector& w, const Eigen::VectorXd& y,
                                 std::span<const RowIndex> rows) {
    if (static_cast<std::size_t>(y.size()) != w.size())
        throw std::invalid_argument("difference_in_means: outcome length differs from assignment");
    double s1 = 0.0, s0 = 0.0;
    std::size_t n1 = 0, n0 = 0;
    for (RowIndex r : rows) {
        if (w.treated(static_cast<std::size_t>(r))) {
            s1 += y[r];
            ++n1;
        } else {
            s0 += y[r];
            ++n0;
        }
    }
    if (n1 == 0 || n0 == 0) throw EstimationError("difference_in_means: empty arm");
    GateEstimate e;
    e.method = "dm";
    e.value = s1 / static_cast<double>(n1) - s0 / static_cast<double>(n0);
    e.treated.units = n1;
    e.control.units = n0;
    return e;
}

GateEstimate difference_in_means(const AssignmentVector& w, const Eigen::VectorXd& y) {
    const auto rows = all_rows(w.size());
    return difference_in_means(w, y, rows);
}

AdjustmentTables AdjustmentTables::build(const Graph& g, const Eigen::VectorXd& w,
                                         std::span<const FeatureDescriptor> descriptors,
                                         EdgeScope scope) {
    AdjustmentTables t;
    t.realized = evaluate_features(g, w, descriptors, scope).values();
    t.all_treated = counterfactual_features(g, descriptors, Arm::all_treated, scope).values();
    t.all_control = counterfactual_features(g, descriptors, Arm::all_control, scope).values();
    return t;
}

AdjustmentTables AdjustmentTables::build(const Graph& g, const FeatureMatrix& realized,
                                         EdgeScope scope) {
    if (realized.rows() != g.num_nodes())
        throw std::invalid_argument("AdjustmentTables: feature rows differ from node count");
    AdjustmentTables t;
    t.realized = realized.values();
    t.all_treated = counterfactual_features(g, realized.descriptors(), Arm::all_treated, scope).values();
    t.all_control = counterfactual_features(g, realized.descriptors(), Arm::all_control, scope).values();
    return t;
}

GateEstimate adjusted_gate(const AdjustmentTables& tables, std::span<const std::size_t> columns,
                           const AssignmentVector& w, const Eigen::VectorXd& y,
                           std::span<const RowIndex> rows) {
    const auto n = static_cast<Eigen::Index>(w.size());
    if (y.size() != n || tables.realized.rows() != n)
        throw std::invalid_argument("adjusted_gate: input lengths differ");
    const auto p = static_cast<Eigen::Index>(columns.size());
    for (auto c : columns)
        if (static_cast<Eigen::Index>(c) >= tables.realized.cols())
            throw std::out_of_range("adjusted_gate: column index out of range");

    std::vector<RowIndex> rows1, rows0;
    for (RowIndex r : rows) (w.treated(static_cast<std::size_t>(r)) ? rows1 : rows0).push_back(r);
    if (rows1.empty() || rows0.empty()) throw EstimationError("adjusted_gate: empty arm");
    if (static_cast<Eigen::Index>(rows1.size()) < p + 1 || static_cast<Eigen::Index>(rows0.size()) < p + 1)
        throw EstimationError("adjusted_gate: an arm has fewer units than parameters");

    Eigen::MatrixXd X(n, p);
    for (Eigen::Index k = 0; k < p; ++k) X.col(k) = tables.realized.col(static_cast<Eigen::Index>(columns[static_cast<std::size_t>(k)]));
    const OlsFit f1 = ols_fit(X, y, rows1);
    const OlsFit f0 = ols_fit(X, y, rows0);

    // Counterfactual feature means over the row multiset.
    Eigen::VectorXd mt = Eigen::VectorXd::Zero(p), mc = Eigen::VectorXd::Zero(p);
    for (Eigen::Index k = 0; k < p; ++k) {
        const auto c = static_cast<Eigen::Index>(columns[static_cast<std::size_t>(k)]);
        double st = 0.0, sc = 0.0;
        for (RowIndex r : rows) {
            st += tables.all_treated(r, c);
            sc += tables.all_control(r, c);
        }
        mt[k] = st / static_cast<double>(rows.size());
        mc[k] = sc / static_cast<double>(rows.size());
    }
    GateEstimate e;
    e.method = "adjust";
    e.value = (f1.intercept - f0.intercept) + (f1.coefficients.dot(mt) - f0.coefficients.dot(mc));
    e.treated = {rows1.size(), f1.rank, f1.rank_deficient};
    e.control = {rows0.size(), f0.rank, f0.rank_deficient};
    return e;
}

GateEstimate adjusted_gate(const Graph& g, const AssignmentVector& w, const Eigen::VectorXd& y,
                           std::span<const FeatureDescriptor> selected, EdgeScope scope) {
    const AdjustmentTables t = AdjustmentTables::build(g, w.as_vector(), selected, scope);
    std::vector<std::size_t> cols(selected.size());
    for (std::size_t k = 0; k < cols.size(); ++k) cols[k] = k;
    const auto rows = all_rows(w.size());
    return adjusted_gate(t, cols, w, y, rows);
}

std::size_t exposure_threshold(std::size_t d, double q, ExposureArm arm) {
    const double dd = static_cast<double>(d);
    // The epsilon keeps q d values that are integers in exact arithmetic from
    // drifting across the boundary.
    if (arm == ExposureArm::treated) return static_cast<std::size_t>(std::max(0.0, std::ceil(q * dd - 1e-9)));
    return static_cast<std::size_t>(std::max(0.0, std::floor((1.0 - q) * dd + 1e-9)));
}

namespace {

double binomial_pmf(std::size_t d, std::size_t k, double p) {
    if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
    if (p >= 1.0) return k == d ? 1.0 : 0.0;
    const double dd = static_cast<double>(d), kk = static_cast<double>(k);
    const double lg = std::lgamma(dd + 1) - std::lgamma(kk + 1) - std::lgamma(dd - kk + 1);
    return std::exp(lg + kk * std::log(p) + (dd - kk) * std::log1p(-p));
}

}  // namespace

double exposure_probability(std::size_t d, double p, double q, ExposureArm arm) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("exposure_probability: p outside [0, 1]");
    const std::size_t thr = exposure_threshold(d, q, arm);
    double tail = 0.0;
    if (arm == ExposureArm::treated) {
        for (std::size_t k = thr; k <= d; ++k) tail += binomial_pmf(d, k, p);
        return p * std::min(1.0, tail);
    }
    for (std::size_t k = 0; k <= std::min(thr, d); ++k) tail += binomial_pmf(d, k, p);
    return (1.0 - p) * std::min(1.0, tail);
}

double hajek_ratio(const Eigen::VectorXd& y, std::span<const std::uint8_t> in_treated,
                   std::span<const double> prob_treated, std::span<const std::uint8_t> in_control,
                   std::span<const double> prob_control) {
    const auto n = static_cast<std::size_t>(y.size());
    if (in_treated.size() != n || prob_treated.size() != n || in_control.size() != n ||
        prob_control.size() != n)
        throw std::invalid_argument("hajek_ratio: input lengths differ");
    double num1 = 0.0, den1 = 0.0, num0 = 0.0, den0 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (in_treated[i]) {
            num1 += y[static_cast<Eigen::Index>(i)] / prob_treated[i];
            den1 += 1.0 / prob_treated[i];
        }
        if (in_control[i]) {
            num0 += y[static_cast<Eigen::Index>(i)] / prob_control[i];
            den0 += 1.0 / prob_control[i];
        }
    }
    if (den1 == 0.0) throw EstimationError("hajek: no unit satisfies the treated exposure event");
    if (den0 == 0.0) throw EstimationError("hajek: no unit satisfies the control exposure event");
    return num1 / den1 - num0 / den0;
}

GateEstimate hajek_fractional(const Graph& g, const AssignmentVector& w, const Eigen::VectorXd& y,
                              double p, double q, int hop) {
    const std::size_t n = g.num_nodes();
    if (w.size() != n || static_cast<std::size_t>(y.size()) != n)
        throw std::invalid_argument("hajek_fractional: input lengths differ");
    if (hop != 1 && hop != 2) throw std::invalid_argument("hajek_fractional: hop must be 1 or 2");
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("hajek_fractional: q outside [0, 1]");
    std::vector<std::uint8_t> in1(n, 0), in0(n, 0);
    std::vector<double> pr1(n, 1.0), pr0(n, 1.0);
    BallSearch search(g);
    for (NodeId i = 0; i < n; ++i) {
        std::size_t d = 0, treated = 0;
        if (hop == 1) {
            for (NodeId j : g.neighbors(i)) treated += w.treated(j);
            d = g.degree(i);
        } else {
            const auto ball = search.ball(i, 2);
            for (NodeId j : ball.subspan(1)) treated += w.treated(j);
            d = ball.size() - 1;
        }
        if (w.treated(i)) {
            if (treated >= exposure_threshold(d, q, ExposureArm::treated)) {
                in1[i] = 1;
                pr1[i] = exposure_probability(d, p, q, ExposureArm::treated);
            }
        } else if (treated <= exposure_threshold(d, q, ExposureArm::control)) {
            in0[i] = 1;
            pr0[i] = exposure_probability(d, p, q, ExposureArm::control);
        }
    }
    GateEstimate e;
    e.method = hop == 1 ? "hajek" : "hajek2";
    e.value = hajek_ratio(y, in1, pr1, in0, pr0);
    e.treated.units = static_cast<std::size_t>(std::count(in1.begin(), in1.end(), 1));
    e.control.units = static_cast<std::size_t>(std::count(in0.begin(), in0.end(), 1));
    return e;
}

double true_gate_linear(const Graph& g, const OutcomeModelSpec& model) {
    if (const auto* m = std::get_if<SimpleLinearModel>(&model.params)) {
        // Under global treatment rho is 1 and nu is the degree, except at
        // isolated nodes where both stay 0.
        const std::size_t n = g.num_nodes();
        if (n == 0) throw std::invalid_argument("true_gate_linear: empty graph");
        std::size_t connected = 0;
        for (NodeId i = 0; i < n; ++i) connected += g.degree(i) > 0;
        return (m->alpha1 - m->alpha0) + m->xi1 * static_cast<double>(connected) / static_cast<double>(n) +
               m->gamma1 * g.mean_degree();
    }
    if (const auto* m = std::get_if<TruncatedLimModel>(&model.params)) {
        if (g.has_isolated_node())
            throw std::invalid_argument("true_gate_linear: truncated model needs a graph without isolated nodes");
        double s = 0.0, pw = 1.0;
        for (int j = 0; j < m->J; ++j, pw *= m->gamma) s += pw;
        return m->beta * s;
    }
    throw std::invalid_argument("true_gate_linear: model '" + model.name + "' is not linear");
}

}  // namespace netgate
