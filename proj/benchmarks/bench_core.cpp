#include <benchmark/benchmark.h>

#include "jumplab/bvp.hpp"
#include "jumplab/eigensolve.hpp"
#include "jumplab/montecarlo.hpp"

using namespace jumplab;

static void BM_tridiagonal_solve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Grid g = Grid::uniform(n);
    const RateField rate = build_rate_field(RatePreset::constant(), g);
    const TridiagonalOperator op = assemble(0.0, 100.0, rate, g);
    const std::vector<double> rhs(static_cast<size_t>(n), 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_tridiagonal(op, rhs));
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_tridiagonal_solve)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_eigen_fixed_point(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Grid g = Grid::uniform(n);
    const RateField rate = build_rate_field(RatePreset::constant(), g);
    const JumpMeasure mu = build_jump_measure(JumpPreset::uniform(), g);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            principal_eigenvalue_fixed_point(100.0, rate, mu, g, 1e-10).lambda0);
    }
}
BENCHMARK(BM_eigen_fixed_point)->Arg(2000)->Arg(8000);

static void BM_eigen_matrix(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Grid g = Grid::uniform(n);
    const RateField rate = build_rate_field(RatePreset::constant(), g);
    const JumpMeasure mu = build_jump_measure(JumpPreset::uniform(), g);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            principal_eigenvalue_matrix(100.0, rate, mu, g, 1e-12).lambda0);
    }
}
BENCHMARK(BM_eigen_matrix)->Arg(2000)->Arg(8000);

static void BM_path_steps(benchmark::State& state) {
    const double gamma = static_cast<double>(state.range(0));
    const Grid g = Grid::uniform(500);
    const RateField rate = build_rate_field(RatePreset::constant(), g);
    const JumpMeasure mu = build_jump_measure(JumpPreset::uniform(), g);
    PathConfig cfg;
    cfg.horizon = 1.0;
    cfg.dt = 1e-4;
    uint64_t stream = 0;
    for (auto _ : state) {
        PathRng rng(1234, stream++);
        benchmark::DoNotOptimize(simulate_path(0.5, gamma, rate, mu, g, cfg, rng));
    }
    state.SetItemsProcessed(state.iterations() * 10000);  // steps per unit horizon
}
BENCHMARK(BM_path_steps)->Arg(0)->Arg(50);

BENCHMARK_MAIN();
