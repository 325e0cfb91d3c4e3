#include <random>

#include <benchmark/benchmark.h>

#include "netgate/bootstrap.hpp"
#include "netgate/clustering.hpp"
#include "netgate/lasso.hpp"
#include "netgate/outcome_model.hpp"
#include "netgate/selection.hpp"

using namespace netgate;

namespace {

struct Data {
    Graph g;
    AssignmentVector w;
    Eigen::VectorXd y;
};

Data small_world_data(std::size_t n, const char* model) {
    Data d{generate_small_world(n, 20, 0.1, SeedStream(1)), {}, {}};
    d.w = bernoulli_assign(n, 0.5, SeedStream(2));
    d.y = simulate_outcomes(d.g, d.w, preset_model(model), SeedStream(3));
    return d;
}

Data clique_data(std::size_t n, const char* model) {
    Data d{generate_clique_graph(draw_clique_sizes(n, 3, 8, SeedStream(4))), {}, {}};
    d.w = bernoulli_assign(d.g.num_nodes(), 0.5, SeedStream(5));
    d.y = simulate_outcomes(d.g, d.w, preset_model(model), SeedStream(6));
    return d;
}

}  // namespace

static void BM_CvLasso(benchmark::State& state) {
    const auto n = static_cast<Eigen::Index>(state.range(0));
    const auto p = static_cast<Eigen::Index>(state.range(1));
    auto eng = SeedStream(7).engine();
    std::normal_distribution<double> z(0.0, 1.0);
    Eigen::MatrixXd X(n, p);
    for (auto& v : X.reshaped()) v = z(eng);
    Eigen::VectorXd y = X.leftCols(3).rowwise().sum();
    for (auto& v : y) v += z(eng);
    std::vector<double> weights(static_cast<std::size_t>(p), 1.0);
    weights[0] = 0.0;
    const auto rows = all_rows(static_cast<std::size_t>(n));
    for (auto _ : state) benchmark::DoNotOptimize(cv_lasso(X, y, rows, weights, CvConfig{}, SeedStream(8)));
}
BENCHMARK(BM_CvLasso)->Args({1000, 20})->Args({5000, 60})->Unit(benchmark::kMillisecond);

static void BM_FeatureGenerations(benchmark::State& state) {
    const Data d = small_world_data(static_cast<std::size_t>(state.range(0)), "model0");
    const std::vector<Aggregator> aggs{Aggregator::mean, Aggregator::variance};
    for (auto _ : state) {
        FeatureGenerations gens(d.g, d.w, aggs);
        benchmark::DoNotOptimize(gens.stacked(2));
    }
}
BENCHMARK(BM_FeatureGenerations)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

static void BM_KHopMax(benchmark::State& state) {
    const Graph g = generate_small_world(20000, 10, 0.1, SeedStream(9));
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(k_hop_max(g, k, SeedStream(10)));
}
BENCHMARK(BM_KHopMax)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_RefexSelection(benchmark::State& state) {
    const Data d = small_world_data(static_cast<std::size_t>(state.range(0)), "model6");
    for (auto _ : state) benchmark::DoNotOptimize(refex_lasso(d.g, d.w, d.y, SelectionConfig{}, SeedStream(11)));
}
BENCHMARK(BM_RefexSelection)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_PostRefexSelection(benchmark::State& state) {
    const Data d = small_world_data(static_cast<std::size_t>(state.range(0)), "model6");
    for (auto _ : state)
        benchmark::DoNotOptimize(post_refex_lasso(d.g, d.w, d.y, SelectionConfig{}, SeedStream(12)));
}
BENCHMARK(BM_PostRefexSelection)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_BlockBootstrapRefex(benchmark::State& state) {
    const Data d = clique_data(3000, "model6");
    BootstrapConfig cfg;
    cfg.B = static_cast<int>(state.range(0));
    cfg.ell = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(block_bootstrap_refex(d.g, d.w, d.y, 1, cfg, SelectionConfig{}, SeedStream(13)));
    state.SetItemsProcessed(state.iterations() * cfg.B);
}
BENCHMARK(BM_BlockBootstrapRefex)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
