#include <sstream>

#include <gtest/gtest.h>

#include "netgate/csv.hpp"
#include "netgate/error.hpp"
#include "netgate/experiment_config.hpp"

using namespace netgate;

TEST(ExperimentConfigTest, parsesKeys) {
    const auto c = ExperimentConfig::parse_string(R"(# comment
name = prop3
seed = 42
trials = 50
graph = cliques
graph.n = 300, 1200,4800
model = model3   # trailing comment
model.noise_sd = 0.5
estimators = dm, refex-lasso
intervals = block-refex
T = 3
aggregators = mean,max
bootstrap.B = 7
bootstrap.k = auto
)");
    EXPECT_EQ(c.name, "prop3");
    EXPECT_EQ(c.seed, 42u);
    EXPECT_EQ(c.trials, 50u);
    EXPECT_EQ(c.graph.source, GraphSource::cliques);
    EXPECT_EQ(c.graph.sizes, (std::vector<std::size_t>{300, 1200, 4800}));
    EXPECT_EQ(c.model.name, "model3");
    EXPECT_EQ(c.model.noise_sd(), 0.5);
    EXPECT_EQ(c.estimators, (std::vector<std::string>{"dm", "refex-lasso"}));
    EXPECT_EQ(c.selection.T, 3);
    EXPECT_EQ(c.selection.aggs, (std::vector<Aggregator>{Aggregator::mean, Aggregator::max}));
    EXPECT_EQ(c.bootstrap.B, 7);
    EXPECT_FALSE(c.bootstrap.k_override.has_value());
}

TEST(ExperimentConfigTest, unknownKeyIsNamed) {
    try {
        ExperimentConfig::parse_string("trials = 3\nbootstrap.bb = 4\n");
        FAIL() << "expected an error";
    } catch (const std::exception& e) {
        EXPECT_NE(std::string(e.what()).find("bootstrap.bb"), std::string::npos);
    }
}

TEST(ExperimentConfigTest, rejectsBadValues) {
    EXPECT_ANY_THROW(ExperimentConfig::parse_string("trials = many\n"));
    EXPECT_ANY_THROW(ExperimentConfig::parse_string("trials = 3\ntrials = 4\n"));
    EXPECT_ANY_THROW(ExperimentConfig::parse_string("estimators = dm, magic\n"));
    EXPECT_ANY_THROW(ExperimentConfig::parse_string("bootstrap.alpha = 1.5\n"));
    EXPECT_ANY_THROW(ExperimentConfig::parse_string("model = model12\n"));
    EXPECT_ANY_THROW(ExperimentConfig::parse_string("no equals sign\n"));
}

TEST(ExperimentConfigTest, modelParameterOverrides) {
    const auto c = ExperimentConfig::parse_string("model = model0\nmodel.xi0 = 1\nmodel.xi1 = 2.5\n");
    const auto& m = std::get<SimpleLinearModel>(c.model.params);
    EXPECT_EQ(m.alpha1, 2.0);
    EXPECT_EQ(m.xi1, 2.5);
    const auto l = ExperimentConfig::parse_string("model = model3\nmodel.J = 4\n");
    EXPECT_EQ(std::get<TruncatedLimModel>(l.model.params).J, 4);
    EXPECT_ANY_THROW(ExperimentConfig::parse_string("model = model3\nmodel.xi1 = 1\n"));
    EXPECT_ANY_THROW(ExperimentConfig::parse_string("model = model3\nmodel.J = 1\n"));
}

TEST(ExperimentConfigTest, roundTrips) {
    const auto c = ExperimentConfig::parse_string(
        "graph = cliques\ngraph.n = 900\nmodel = model6\nintervals = block-refex, naive-refex\n"
        "bootstrap.k = 2\np = 0.3\nedge_scope = open\nmodel.gamma = 1.5\n");
    const std::string text = c.to_text();
    EXPECT_EQ(ExperimentConfig::parse_string(text).to_text(), text);
}

TEST(CsvTest, unitValuesInNodeOrder) {
    std::istringstream in("y\n1.5\n-2\n3e2\n");
    const std::vector<std::string> labels{"0", "1", "2"};
    const Eigen::VectorXd v = read_unit_values(in, labels);
    ASSERT_EQ(v.size(), 3);
    EXPECT_EQ(v[2], 300.0);
}

TEST(CsvTest, unitValuesByLabel) {
    const std::vector<std::string> labels{"a", "b"};
    std::istringstream in("node,y\nb, 2\na,1\n");
    const Eigen::VectorXd v = read_unit_values(in, labels);
    EXPECT_EQ(v, Eigen::Vector2d(1, 2));
    std::istringstream missing("a,1\n");
    EXPECT_THROW(read_unit_values(missing, labels), ParseError);
    std::istringstream bad("a,1\nb,x\n");
    EXPECT_THROW(read_unit_values(bad, labels), ParseError);
}

TEST(CsvTest, formatting) {
    EXPECT_EQ(format_full(0.1), "0.10000000000000001");
    EXPECT_EQ(format_sig6(3.14159265), "3.14159");
    EXPECT_EQ(split_fields(" a, b ,c", ','), (std::vector<std::string>{"a", "b", "c"}));
}
