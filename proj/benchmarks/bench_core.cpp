#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "gdpcast/lstm.hpp"
#include "gdpcast/sarima.hpp"
#include "gdpcast/unitroot.hpp"

using namespace gdpcast;

namespace {

std::vector<double> ar_series(std::size_t n, double phi, int lag) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> z(0.0, 1.0);
    std::vector<double> y(n, 0.0);
    for (std::size_t t = 0; t < n; ++t) y[t] = z(rng) + (t >= std::size_t(lag) ? phi * y[t - lag] : 0.0);
    return y;
}

Eigen::MatrixXd windows(int lookback, int batch) {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> z(0.0, 1.0);
    Eigen::MatrixXd x(lookback, batch);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = z(rng);
    return x;
}

void BM_LstmForward(benchmark::State& state) {
    const int units = static_cast<int>(state.range(0));
    const int batch = static_cast<int>(state.range(1));
    auto w = lstm::glorot_init(units, 3);
    auto x = windows(4, batch);
    for (auto _ : state) benchmark::DoNotOptimize(lstm::forward(w, x, lstm::Activation::Relu).predictions);
    state.SetItemsProcessed(state.iterations() * batch);
}
BENCHMARK(BM_LstmForward)->ArgsProduct({{8, 250}, {1, 8}});

void BM_LstmLossAndGradient(benchmark::State& state) {
    const int units = static_cast<int>(state.range(0));
    const int batch = static_cast<int>(state.range(1));
    auto w = lstm::glorot_init(units, 3);
    auto x = windows(4, batch);
    Eigen::RowVectorXd y = Eigen::RowVectorXd::Ones(batch);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lstm::loss_and_gradient(w, x, y, 0.01, lstm::Activation::Relu).first);
    }
    state.SetItemsProcessed(state.iterations() * batch);
}
BENCHMARK(BM_LstmLossAndGradient)->ArgsProduct({{8, 250}, {1, 8}});

void BM_CssObjective(benchmark::State& state) {
    auto w = ar_series(112, 0.5, 1);
    sarima::SarimaOrder order{2, 0, 2, 1, 0, 1, 4};
    sarima::SarimaParams p{{0.3, 0.1}, {0.2, 0.1}, {0.3}, {0.2}, 0.0, 1.0};
    for (auto _ : state) benchmark::DoNotOptimize(sarima::css_objective(w, order, p).loglik);
}
BENCHMARK(BM_CssObjective);

void BM_SarimaFit(benchmark::State& state) {
    auto y = ar_series(112, 0.6, 4);
    sarima::SarimaOrder order{2, 1, 2, 1, 1, 1, 4};
    for (auto _ : state) benchmark::DoNotOptimize(sarima::fit(y, order).aic);
}
BENCHMARK(BM_SarimaFit)->Unit(benchmark::kMillisecond);

void BM_AdfTest(benchmark::State& state) {
    auto y = ar_series(static_cast<std::size_t>(state.range(0)), 0.9, 1);
    for (auto _ : state) benchmark::DoNotOptimize(adf_test(y).statistic);
}
BENCHMARK(BM_AdfTest)->Arg(116)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
