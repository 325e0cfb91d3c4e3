#include "netgate/outcome_model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace netgate {

double OutcomeModelSpec::noise_sd() const noexcept {
    return std::visit([](const auto& m) { return m.noise_sd; }, params);
}

namespace {

OutcomeModelSpec simple(std::string name, double xi0, double xi1, double g0, double g1) {
    return {std::move(name), SimpleLinearModel{0, 2, xi0, xi1, g0, g1, 1.0}};
}

OutcomeModelSpec lim(std::string name, double gamma, int J) {
    return {std::move(name), TruncatedLimModel{1, 5, gamma, J, 1.0}};
}

}  // namespace

OutcomeModelSpec preset_model(std::string_view name) {
    if (name == "model0") return simple("model0", 0, 0, 0, 0);
    if (name == "model1") return simple("model1", 1, 1.5, 0.005, 0.0025);
    if (name == "model2") return simple("model2", 1, 2, 0.005, 0.01);
    if (name == "model2a") return simple("model2a", 1, 3, 0.01, 0.025);
    if (name == "model2b") return simple("model2b", 1, 3, 0.05, 0.15);
    if (name == "model3") return lim("model3", 2, 2);
    if (name == "model4") return lim("model4", 3, 2);
    if (name == "model5") return lim("model5", 1, 3);
    if (name == "model6") return lim("model6", 2, 3);
    if (name == "nonlinear") return {"nonlinear", NonlinearSigmoidModel{1.0}};
    throw std::invalid_argument("unknown outcome model '" + std::string(name) + "'");
}

std::vector<std::string> preset_model_names() {
    return {"model0", "model1", "model2", "model2a", "model2b", "model3",
            "model4", "model5", "model6", "nonlinear"};
}

void validate(const OutcomeModelSpec& spec) {
    if (!(spec.noise_sd() >= 0.0) || !std::isfinite(spec.noise_sd()))
        throw std::invalid_argument("outcome model: noise_sd must be finite and >= 0");
    if (const auto* m = std::get_if<TruncatedLimModel>(&spec.params); m && m->J < 2)
        throw std::invalid_argument("outcome model: J must be >= 2");
}

Eigen::VectorXd mean_outcomes(const Graph& g, const Eigen::VectorXd& w, const OutcomeModelSpec& spec,
                              const Eigen::VectorXd* z) {
    validate(spec);
    const auto n = static_cast<Eigen::Index>(g.num_nodes());
    if (w.size() != n) throw std::invalid_argument("mean_outcomes: assignment length differs from node count");
    const Eigen::VectorXd rho = normalized_adjacency_apply(g, w);
    if (const auto* m = std::get_if<SimpleLinearModel>(&spec.params)) {
        const Eigen::VectorXd nu = base_feature_column(g, w, BaseFeature::num_treated_nbrs);
        Eigen::VectorXd y(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double f1 = m->alpha1 + m->xi1 * rho[i] + m->gamma1 * nu[i];
            const double f0 = m->alpha0 + m->xi0 * rho[i] + m->gamma0 * nu[i];
            y[i] = w[i] * f1 + (1.0 - w[i]) * f0;
        }
        return y;
    }
    if (const auto* m = std::get_if<TruncatedLimModel>(&spec.params)) {
        if (g.has_isolated_node())
            throw std::invalid_argument("truncated linear-in-means model needs a graph without isolated nodes");
        Eigen::VectorXd y = Eigen::VectorXd::Constant(n, m->alpha) + m->beta * w;
        Eigen::VectorXd power = w;
        double coef = m->beta;
        for (int j = 1; j < m->J; ++j) {
            power = normalized_adjacency_apply(g, power);
            coef *= m->gamma;
            y += coef * power;
        }
        return y;
    }
    const Eigen::VectorXd nu = base_feature_column(g, w, BaseFeature::num_treated_nbrs);
    if (z && z->size() != n) throw std::invalid_argument("mean_outcomes: z length differs from node count");
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double zi = z ? (*z)[i] : 0.0;
        y[i] = -5.0 + 2.0 * zi * w[i] + 0.03 * nu[i] + 1.0 / (1.0 + 0.001 * std::exp(-0.03 * nu[i] + 9.0)) +
               10.0 / (3.0 + std::exp(-8.0 * rho[i] + 3.2));
    }
    return y;
}

Eigen::VectorXd simulate_outcomes(const Graph& g, const AssignmentVector& w,
                                  const OutcomeModelSpec& spec, const SeedStream& stream) {
    const auto n = static_cast<Eigen::Index>(g.num_nodes());
    auto eng = stream.engine();
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd y;
    if (std::holds_alternative<NonlinearSigmoidModel>(spec.params)) {
        Eigen::VectorXd z(n);
        for (Eigen::Index i = 0; i < n; ++i) z[i] = normal(eng);
        y = mean_outcomes(g, w.as_vector(), spec, &z);
    } else {
        y = mean_outcomes(g, w.as_vector(), spec);
    }
    const double sd = spec.noise_sd();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double eps = normal(eng);
        y[i] += sd * eps;
    }
    return y;
}

std::vector<FeatureDescriptor> oracle_features(const OutcomeModelSpec& spec) {
    if (std::holds_alternative<SimpleLinearModel>(spec.params))
        return {{BaseFeature::frac_treated_nbrs, {}}, {BaseFeature::num_treated_nbrs, {}}};
    if (const auto* m = std::get_if<TruncatedLimModel>(&spec.params)) {
        std::vector<FeatureDescriptor> out;
        FeatureDescriptor d{BaseFeature::frac_treated_nbrs, {}};
        for (int j = 1; j < m->J; ++j) {
            out.push_back(d);
            d = d.then(Aggregator::mean);
        }
        return out;
    }
    return {};
}

}  // namespace netgate
