#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "netgate/design.hpp"
#include "netgate/features.hpp"
#include "netgate/graph.hpp"
#include "netgate/seed_stream.hpp"

namespace netgate {

/// f_w = alpha_w + xi_w rho_i + gamma_w nu_i for arm w.
struct SimpleLinearModel {
    double alpha0 = 0, alpha1 = 0;
    double xi0 = 0, xi1 = 0;
    double gamma0 = 0, gamma1 = 0;
    double noise_sd = 1.0;
};

/// y = alpha 1 + beta w + beta sum_{j=1}^{J-1} gamma^j A_norm^j w + eps.
///
/// This finite-horizon form is a reconstruction: it is the truncation of the
/// geometric linear-in-means expansion that reproduces the published true
/// effects for all four parameter sets.
struct TruncatedLimModel {
    double alpha = 1, beta = 5, gamma = 2;
    int J = 2;
    double noise_sd = 1.0;
};

/// Sigmoid-type response in (rho, nu) with a random individual effect z_i:
/// y = -5 + 2 z w + 0.03 nu + 1/(1 + 0.001 e^{9 - 0.03 nu}) + 10/(3 + e^{3.2 - 8 rho}) + eps.
struct NonlinearSigmoidModel {
    double noise_sd = 1.0;
};

struct OutcomeModelSpec {
    std::string name;
    std::variant<SimpleLinearModel, TruncatedLimModel, NonlinearSigmoidModel> params;

    bool is_linear() const noexcept {
        return !std::holds_alternative<NonlinearSigmoidModel>(params);
    }
    double noise_sd() const noexcept;
};

/// Named parameter sets: model0, model1, model2, model2a, model2b, model3 ..
/// model6, nonlinear. Throws std::invalid_argument for unknown names.
OutcomeModelSpec preset_model(std::string_view name);
std::vector<std::string> preset_model_names();

/// Validates the spec (noise_sd >= 0, J >= 2); throws std::invalid_argument.
void validate(const OutcomeModelSpec& spec);

/// Noise-free part of the outcome under an arbitrary assignment vector (0/1 entries).
/// For the nonlinear model the individual effects z are passed in (zeros allowed).
Eigen::VectorXd mean_outcomes(const Graph& g, const Eigen::VectorXd& w,
                              const OutcomeModelSpec& spec, const Eigen::VectorXd* z = nullptr);

/// Draws outcomes for a realized assignment. Throws for the truncated
/// linear-in-means model on a graph with isolated nodes.
Eigen::VectorXd simulate_outcomes(const Graph& g, const AssignmentVector& w,
                                  const OutcomeModelSpec& spec, const SeedStream& stream);

/// Feature recipes that make the model exactly linear (empty for nonlinear).
std::vector<FeatureDescriptor> oracle_features(const OutcomeModelSpec& spec);

}  // namespace netgate
