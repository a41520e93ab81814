#include <benchmark/benchmark.h>

#include "share_sense/experiment_harness.hpp"
#include "share_sense/new_agent.hpp"
#include "share_sense/sensitivity_bounds.hpp"
#include "support/random_instances.hpp"

using namespace share_sense;

namespace {

CargoConfig cargo(int m) {
    CargoConfig cfg;
    cfg.m = m;
    cfg.d_min = 220;
    cfg.d_max = 400;
    cfg.weight_capacity = 20000;
    cfg.volume_capacity = 30;
    return cfg;
}

AssembledLp cargo_lp(int m, std::uint64_t seed) {
    const CargoConfig cfg = cargo(m);
    StreamRng rng(seed);
    std::vector<AgentProfile> agents;
    for (int i = 0; i < m; ++i) agents.push_back(sample_cargo_agent(cfg, rng));
    return assemble(cargo_problem(cfg, std::move(agents)));
}

void BM_PolyValue(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(poly_value(m, m / 2, 1e-7, 0.9));
}
BENCHMARK(BM_PolyValue)->Arg(100)->Arg(1000);

void BM_EpsilonTable(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(epsilon_table(m, 1e-7, 1));
}
BENCHMARK(BM_EpsilonTable)->Arg(100)->Arg(250)->Unit(benchmark::kMillisecond);

void BM_SolveCargo(benchmark::State& state) {
    const AssembledLp lp = cargo_lp(static_cast<int>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(solve_primal(lp));
}
BENCHMARK(BM_SolveCargo)->Arg(100)->Arg(200)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_SolveRandomSmall(benchmark::State& state) {
    std::vector<AssembledLp> lps;
    for (std::uint64_t s = 1; s <= 64; ++s) lps.push_back(assemble(share_sense::testing::random_instance(s)));
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(solve_primal(lps[i++ % lps.size()]));
}
BENCHMARK(BM_SolveRandomSmall);

void BM_ArrivalVerdict(benchmark::State& state) {
    const CargoConfig cfg = cargo(100);
    const AssembledLp lp = cargo_lp(100, 5);
    const PrimalSolution s = solve_primal(lp);
    const ArrivalCertifier certifier(lp, s);
    StreamRng rng(9);
    const AgentProfile newcomer = sample_cargo_agent(cfg, rng);
    for (auto _ : state) benchmark::DoNotOptimize(certifier.verdict(newcomer));
}
BENCHMARK(BM_ArrivalVerdict);

void BM_Trial(benchmark::State& state) {
    CargoConfig cfg = cargo(100);
    cfg.arrivals = 5000;
    const EpsilonTable table = epsilon_table(cfg.m, cfg.beta, 1);
    int t = 0;
    for (auto _ : state) benchmark::DoNotOptimize(run_trial(cfg, table, t++));
}
BENCHMARK(BM_Trial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
