// Serial reference loops against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include "wmlab/grid.hpp"
#include "wmlab/kernels.hpp"
#include "wmlab/spectrum.hpp"
#include "wmlab/verification.hpp"

using namespace wmlab;

namespace {

Execution exec_of(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

void BM_matvec(benchmark::State& state) {
    const int n = static_cast<int>(state.range(1));
    Rng rng(1);
    Eigen::MatrixXd A(n, n);
    Eigen::VectorXd x(n), y(n);
    for (int i = 0; i < n; ++i) {
        x[i] = rng.uniform(-1.0, 1.0);
        for (int j = 0; j < n; ++j) A(i, j) = rng.uniform(-1.0, 1.0);
    }
    const Execution e = exec_of(state);
    for (auto _ : state) {
        matvec(e, A, x, y);
        benchmark::DoNotOptimize(y.data());
    }
}

void BM_nhat_grid(benchmark::State& state) {
    const Dimension dim(5);
    const RadialGrid g = build_grid(static_cast<int>(state.range(1)), dim);
    Rng rng(2);
    Eigen::VectorXd zeta(g.n), out(g.n);
    for (int j = 0; j < g.n; ++j) zeta[j] = rng.uniform(-0.5, 0.5);
    const bool par = state.range(0);
    for (auto _ : state) {
        par ? parallel::nhat_grid(g.rho, zeta, dim, out) : serial::nhat_grid(g.rho, zeta, dim, out);
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_connection_batch(benchmark::State& state) {
    const Dimension dim(5);
    std::vector<cd> lambdas;
    for (int k = 0; k < state.range(1); ++k) lambdas.emplace_back(0.3 + 0.1 * k, 0.5);
    const Execution e = exec_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(connection_batch(lambdas, dim, ConnectionOptions{}, e));
}

}  // namespace

BENCHMARK(BM_matvec)->ArgsProduct({{0, 1}, {64, 256, 1024}});
BENCHMARK(BM_nhat_grid)->ArgsProduct({{0, 1}, {32, 128}});
BENCHMARK(BM_connection_batch)->ArgsProduct({{0, 1}, {8}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
