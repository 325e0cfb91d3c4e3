#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "netgate/lasso.hpp"
#include "oracles.hpp"

using namespace netgate;

namespace {

struct Problem {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
};

Problem random_problem(int n, int p, std::uint64_t seed, double noise = 1.0) {
    auto eng = SeedStream(seed).engine();
    std::normal_distribution<double> z(0.0, 1.0);
    Problem pr{Eigen::MatrixXd(n, p), Eigen::VectorXd(n)};
    for (int j = 0; j < p; ++j) {
        const double scale = std::pow(3.0, j % 4);
        for (int i = 0; i < n; ++i) pr.X(i, j) = scale * z(eng) + j;
    }
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    for (int j = 0; j < p; j += 2) beta[j] = 1.0 / (1 + j);
    for (int i = 0; i < n; ++i) pr.y[i] = 0.5 + pr.X.row(i).dot(beta) + noise * z(eng);
    return pr;
}

}  // namespace

TEST(LassoTest, lambdaZeroIsOls) {
    const Problem pr = random_problem(60, 5, 1);
    const std::vector<double> w(5, 1.0);
    LassoOptions opt;
    opt.tolerance = 1e-12;
    const LassoFit fit = fit_weighted_lasso(pr.X, pr.y, w, 0.0, opt);
    const auto ref = oracle::normal_equations(pr.X, pr.y);
    EXPECT_TRUE(fit.converged);
    for (int j = 0; j < 5; ++j) EXPECT_NEAR(fit.coefficients[j], ref.coefficients[j], 1e-8 * std::max(1.0, std::abs(ref.coefficients[j])));
    EXPECT_NEAR(fit.intercept, ref.intercept, 1e-8 * std::max(1.0, std::abs(ref.intercept)));
}

TEST(LassoTest, aboveLambdaMaxEverythingIsZero) {
    const Problem pr = random_problem(50, 6, 2);
    const std::vector<double> w(6, 1.0);
    const double lm = lambda_max(pr.X, pr.y, w);
    const LassoFit fit = fit_weighted_lasso(pr.X, pr.y, w, lm * (1 + 1e-9));
    EXPECT_EQ(fit.coefficients.cwiseAbs().maxCoeff(), 0.0);
    EXPECT_TRUE(fit.active_set.empty());
    EXPECT_DOUBLE_EQ(fit.intercept, pr.y.mean());
    const LassoFit below = fit_weighted_lasso(pr.X, pr.y, w, lm * 0.99);
    EXPECT_FALSE(below.active_set.empty());
}

TEST(LassoTest, kktHoldsOnRandomProblems) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Problem pr = random_problem(50, 8, 100 + seed);
        std::vector<double> w(8, 1.0);
        w[seed % 8] = 0.0;
        w[(seed + 3) % 8] = 2.5;
        const double lambda = 0.1;
        const LassoFit fit = fit_weighted_lasso(pr.X, pr.y, w, lambda);
        ASSERT_TRUE(fit.converged);
        EXPECT_LE(oracle::kkt_violation(pr.X, pr.y, w, lambda, fit.intercept, fit.coefficients), 1e-6) << seed;
    }
}

TEST(LassoTest, objectiveNeverIncreases) {
    const Problem pr = random_problem(80, 10, 7);
    const std::vector<double> w(10, 1.0);
    std::vector<double> trace;
    LassoOptions opt;
    opt.objective_trace = &trace;
    fit_weighted_lasso(pr.X, pr.y, w, 0.02, opt);
    ASSERT_GE(trace.size(), 2u);
    for (std::size_t k = 1; k < trace.size(); ++k) EXPECT_LE(trace[k], trace[k - 1] + 1e-12);
}

TEST(LassoTest, unpenalizedColumnsAreNotShrunk) {
    const Problem pr = random_problem(70, 5, 9);
    const std::vector<double> w{0.0, 0.0, 1.0, 1.0, 1.0};
    const double lm = lambda_max(pr.X, pr.y, w);
    const LassoFit fit = fit_weighted_lasso(pr.X, pr.y, w, 2 * lm);
    EXPECT_EQ(fit.coefficients.tail(3).cwiseAbs().maxCoeff(), 0.0);
    const auto ref = oracle::normal_equations(pr.X.leftCols(2), pr.y);
    EXPECT_NEAR(fit.coefficients[0], ref.coefficients[0], 1e-7);
    EXPECT_NEAR(fit.coefficients[1], ref.coefficients[1], 1e-7);
}

TEST(LassoTest, lambdaMaxByHand) {
    // One column, five rows: standardized x has mean 0 and population sd 1.
    Eigen::MatrixXd X(5, 1);
    X << 1, 2, 3, 4, 5;
    const Eigen::VectorXd y = (Eigen::VectorXd(5) << 2, 1, 4, 3, 6).finished();
    const double sd = std::sqrt(2.0);
    const Eigen::VectorXd z = (X.col(0).array() - 3.0) / sd;
    const double expected = std::abs(z.dot(y.array().matrix() - Eigen::VectorXd::Constant(5, y.mean()))) / 5.0;
    const std::vector<double> w{1.0};
    EXPECT_NEAR(lambda_max(X, y, w), expected, 1e-14);
    const std::vector<double> w2{2.0};
    EXPECT_NEAR(lambda_max(X, y, w2), expected / 2.0, 1e-14);
}

TEST(LassoTest, lambdaMaxOrthogonalResponseIsZero) {
    Eigen::MatrixXd X(4, 1);
    X << 1, -1, 1, -1;
    const Eigen::VectorXd y = (Eigen::VectorXd(4) << 1, 1, -1, -1).finished();
    const std::vector<double> w{1.0};
    EXPECT_NEAR(lambda_max(X, y, w), 0.0, 1e-15);
    const std::vector<double> none{0.0};
    EXPECT_THROW(lambda_max(X, y, none), std::invalid_argument);
}

TEST(LassoTest, constantColumnStaysInactive) {
    Problem pr = random_problem(40, 4, 13);
    pr.X.col(2).setConstant(7.0);
    const std::vector<double> w{1.0, 1.0, 0.0, 1.0};
    const LassoFit fit = fit_weighted_lasso(pr.X, pr.y, w, 0.0);
    EXPECT_TRUE(fit.zero_variance[2]);
    EXPECT_EQ(fit.coefficients[2], 0.0);
    const DesignMatrix d = DesignMatrix::standardize(pr.X);
    EXPECT_TRUE(d.zero_variance()[2]);
    EXPECT_FALSE(d.zero_variance()[0]);
    EXPECT_NEAR(d.standardized().col(0).squaredNorm() / 40.0, 1.0, 1e-12);
}

TEST(LassoTest, rowMultisetEqualsDuplicatedRows) {
    const Problem pr = random_problem(30, 3, 17);
    const std::vector<RowIndex> rows{0, 0, 1, 5, 5, 5, 7, 9, 11, 12, 20, 21, 22, 29};
    Eigen::MatrixXd Xd(static_cast<Eigen::Index>(rows.size()), 3);
    Eigen::VectorXd yd(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t k = 0; k < rows.size(); ++k) {
        Xd.row(static_cast<Eigen::Index>(k)) = pr.X.row(rows[k]);
        yd[static_cast<Eigen::Index>(k)] = pr.y[rows[k]];
    }
    const std::vector<double> w(3, 1.0);
    const LassoFit a = fit_weighted_lasso(pr.X, pr.y, rows, w, 0.05);
    const LassoFit b = fit_weighted_lasso(Xd, yd, w, 0.05);
    EXPECT_LE((a.coefficients - b.coefficients).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(LassoTest, rejectsNonFiniteInput) {
    Problem pr = random_problem(20, 2, 3);
    pr.y[4] = std::nan("");
    const std::vector<double> w(2, 1.0);
    EXPECT_THROW(fit_weighted_lasso(pr.X, pr.y, w, 0.1), std::invalid_argument);
}

TEST(LassoTest, cvIsDeterministic) {
    const Problem pr = random_problem(120, 6, 5);
    const std::vector<double> w(6, 1.0);
    const double a = cv_select_lambda(pr.X, pr.y, w, 10, 100, SeedStream(3));
    const double b = cv_select_lambda(pr.X, pr.y, w, 10, 100, SeedStream(3));
    EXPECT_EQ(a, b);
}

TEST(LassoTest, cvHeldOutErrorMatchesDirectEvaluation) {
    const Problem pr = random_problem(40, 3, 31);
    const std::vector<double> w(3, 1.0);
    CvConfig cfg;
    cfg.folds = 4;
    cfg.grid_size = 5;
    const auto rows = all_rows(40);
    const CvResult cv = cv_lasso(pr.X, pr.y, rows, w, cfg, SeedStream(8));
    ASSERT_EQ(cv.lambdas.size(), 5u);
    EXPECT_NEAR(cv.lambdas.back(), cv.lambdas.front() * 1e-3, 1e-15);
    // Rebuild the folds the same way and recompute the pooled error directly.
    std::vector<Eigen::Index> perm(40);
    std::iota(perm.begin(), perm.end(), 0);
    auto eng = SeedStream(8).engine();
    for (std::size_t i = 39; i > 0; --i) std::swap(perm[i], perm[uniform_index(eng, i + 1)]);
    for (std::size_t l = 0; l < cv.lambdas.size(); ++l) {
        double sse = 0.0;
        for (int f = 0; f < 4; ++f) {
            std::vector<RowIndex> train, held;
            for (std::size_t k = 0; k < 40; ++k) (static_cast<int>(k % 4) == f ? held : train).push_back(perm[k]);
            LassoOptions opt;
            opt.tolerance = 1e-12;
            const LassoFit fit = fit_weighted_lasso(pr.X, pr.y, train, w, cv.lambdas[l], opt);
            for (RowIndex r : held) {
                const double e = pr.y[r] - fit.intercept - pr.X.row(r).dot(fit.coefficients);
                sse += e * e;
            }
        }
        EXPECT_NEAR(cv.mean_error[l], sse / 40.0, 1e-6 * (1 + sse / 40.0)) << l;
    }
}

TEST(LassoTest, cvShrinksPureNoise) {
    int top_quartile = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto eng = SeedStream(500 + s).engine();
        std::normal_distribution<double> z(0.0, 1.0);
        Eigen::MatrixXd X(200, 5);
        Eigen::VectorXd y(200);
        for (int i = 0; i < 200; ++i) {
            for (int j = 0; j < 5; ++j) X(i, j) = z(eng);
            y[i] = z(eng);
        }
        const std::vector<double> w(5, 1.0);
        CvConfig cfg;
        const auto rows = all_rows(200);
        const CvResult cv = cv_lasso(X, y, rows, w, cfg, SeedStream(s));
        if (cv.best < 25) ++top_quartile;
    }
    EXPECT_GE(top_quartile, 14);
}

TEST(LassoTest, cvKeepsExactSignal) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Problem pr = random_problem(200, 5, 700 + s, 0.0);
        const std::vector<double> w(5, 1.0);
        const auto rows = all_rows(200);
        const CvResult cv = cv_lasso(pr.X, pr.y, rows, w, CvConfig{}, SeedStream(s));
        EXPECT_GE(cv.best, 90u);
    }
}

TEST(LassoTest, degenerateResponseGivesLambdaMax) {
    const Problem pr = random_problem(50, 3, 4);
    const Eigen::VectorXd y = Eigen::VectorXd::Constant(50, 2.0);
    const std::vector<double> w(3, 1.0);
    const auto rows = all_rows(50);
    const CvResult cv = cv_lasso(pr.X, y, rows, w, CvConfig{}, SeedStream(1));
    EXPECT_EQ(cv.lambda, lambda_max(pr.X, y, w));
    EXPECT_TRUE(cv.fit.active_set.empty());
}

TEST(OlsTest, exactLine) {
    Eigen::MatrixXd X(4, 1);
    X << 0, 1, 2, 3;
    const Eigen::VectorXd y = 2 * X.col(0) + Eigen::VectorXd::Ones(4);
    const OlsFit f = ols_fit(X, y);
    EXPECT_NEAR(f.coefficients[0], 2.0, 1e-14);
    EXPECT_NEAR(f.intercept, 1.0, 1e-14);
    EXPECT_FALSE(f.rank_deficient);
}

TEST(OlsTest, duplicatedColumnIsZeroed) {
    const Problem pr = random_problem(30, 2, 6);
    Eigen::MatrixXd X(30, 3);
    X << pr.X, pr.X.col(1);
    const OlsFit f = ols_fit(X, pr.y);
    EXPECT_TRUE(f.rank_deficient);
    EXPECT_EQ(f.rank, 2);
    EXPECT_TRUE(f.coefficients[1] == 0.0 || f.coefficients[2] == 0.0);
    const auto ref = oracle::normal_equations(pr.X, pr.y);
    EXPECT_NEAR(f.coefficients[1] + f.coefficients[2], ref.coefficients[1], 1e-9);
}

TEST(OlsTest, matchesNormalEquations) {
    const Problem pr = random_problem(100, 3, 8);
    const OlsFit f = ols_fit(pr.X, pr.y);
    const auto ref = oracle::normal_equations(pr.X, pr.y);
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(f.coefficients[j], ref.coefficients[j], 1e-10 * std::abs(ref.coefficients[j]));
    EXPECT_NEAR(f.intercept, ref.intercept, 1e-10 * std::max(1.0, std::abs(ref.intercept)));
}

TEST(OlsTest, needsMoreRowsThanParameters) {
    const Problem pr = random_problem(3, 3, 1);
    EXPECT_THROW(ols_fit(pr.X, pr.y), std::invalid_argument);
}
