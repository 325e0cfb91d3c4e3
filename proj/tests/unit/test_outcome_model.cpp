#include <cmath>

#include <gtest/gtest.h>

#include "netgate/outcome_model.hpp"
#include "oracles.hpp"

using namespace netgate;

namespace {

OutcomeModelSpec noiseless(std::string_view name) {
    OutcomeModelSpec m = preset_model(name);
    std::visit([](auto& p) { p.noise_sd = 0.0; }, m.params);
    return m;
}

}  // namespace

TEST(OutcomeModelTest, modelZeroIsTwiceAssignment) {
    const Graph g = generate_small_world(100, 4, 0.1, SeedStream(1));
    const auto w = bernoulli_assign(100, 0.5, SeedStream(2));
    const Eigen::VectorXd y = simulate_outcomes(g, w, noiseless("model0"), SeedStream(3));
    EXPECT_EQ(y, 2.0 * w.as_vector());
}

TEST(OutcomeModelTest, truncatedShiftMatchesPublishedEffects) {
    const Graph g = generate_small_world(300, 6, 0.3, SeedStream(4));
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(300);
    const Eigen::VectorXd zeros = Eigen::VectorXd::Zero(300);
    const std::pair<const char*, double> cases[] = {
        {"model3", 15}, {"model4", 20}, {"model5", 15}, {"model6", 35}};
    for (const auto& [name, gate] : cases) {
        const auto m = noiseless(name);
        const Eigen::VectorXd y1 = mean_outcomes(g, ones, m);
        const Eigen::VectorXd y0 = mean_outcomes(g, zeros, m);
        EXPECT_NEAR((y1 - y0).mean(), gate, 1e-12) << name;
    }
    const Eigen::VectorXd y1 = mean_outcomes(g, ones, noiseless("model3"));
    for (double v : y1) EXPECT_NEAR(v, 16.0, 1e-12);
}

TEST(OutcomeModelTest, truncatedFormAgainstDenseOracle) {
    const Graph g = generate_small_world(60, 4, 0.3, SeedStream(5));
    const auto w = bernoulli_assign(60, 0.5, SeedStream(6));
    const Eigen::MatrixXd A = oracle::normalized_adjacency(g);
    const auto m = noiseless("model6");
    const auto& p = std::get<TruncatedLimModel>(m.params);
    Eigen::VectorXd expect = Eigen::VectorXd::Constant(60, p.alpha) + p.beta * w.as_vector();
    Eigen::VectorXd power = w.as_vector();
    double gj = 1.0;
    for (int j = 1; j < p.J; ++j) {
        power = A * power;
        gj *= p.gamma;
        expect += p.beta * gj * power;
    }
    EXPECT_LT((simulate_outcomes(g, w, m, SeedStream(7)) - expect).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(OutcomeModelTest, nonlinearConstants) {
    const Graph g = generate_clique_graph(std::vector<int>{3, 3});
    const Eigen::VectorXd zeros = Eigen::VectorXd::Zero(6);
    const Eigen::VectorXd y = mean_outcomes(g, zeros, preset_model("nonlinear"), &zeros);
    const double expect = -5 + 1 / (1 + 0.001 * std::exp(9.0)) + 10 / (3 + std::exp(3.2));
    for (double v : y) EXPECT_NEAR(v, expect, 1e-14);
}

TEST(OutcomeModelTest, noiseHasRequestedScale) {
    const Graph g = generate_small_world(20000, 4, 0.1, SeedStream(8));
    const auto w = bernoulli_assign(20000, 0.5, SeedStream(9));
    const auto m = preset_model("model0");
    const Eigen::VectorXd eps = simulate_outcomes(g, w, m, SeedStream(10)) - 2.0 * w.as_vector();
    EXPECT_NEAR(eps.mean(), 0.0, 0.05);
    EXPECT_NEAR(std::sqrt(eps.squaredNorm() / 20000.0), 1.0, 0.03);
}

TEST(OutcomeModelTest, validation) {
    EXPECT_THROW(preset_model("model9"), std::invalid_argument);
    OutcomeModelSpec m = preset_model("model3");
    std::get<TruncatedLimModel>(m.params).J = 1;
    EXPECT_THROW(validate(m), std::invalid_argument);
    m = preset_model("model1");
    std::get<SimpleLinearModel>(m.params).noise_sd = -1;
    EXPECT_THROW(validate(m), std::invalid_argument);
    const std::vector<std::pair<NodeId, NodeId>> edges{{0, 1}};
    const Graph isolated = Graph::from_edges(3, edges);
    EXPECT_THROW(simulate_outcomes(isolated, bernoulli_assign(3, 0.5, SeedStream(1)),
                                   preset_model("model3"), SeedStream(2)),
                 std::invalid_argument);
    EXPECT_TRUE(oracle_features(preset_model("nonlinear")).empty());
}
