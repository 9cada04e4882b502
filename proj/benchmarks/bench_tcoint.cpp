#include <benchmark/benchmark.h>

#include <filesystem>
#include <utility>

#include "tcoint/linctr.hpp"
#include "tcoint/simulate.hpp"
#include "tcoint/spec_io.hpp"
#include "tcoint/suplm.hpp"
#include "tcoint/tvecm.hpp"

using namespace tcoint;

namespace {

struct Setup {
    Panel panel;
    CointVector coint;
    int q = 1;
};

const Setup& mexico() {
    static const Setup s = [] {
        Panel panel = simulate_tvecm(load_dgp(std::filesystem::path(TCOINT_DATA_DIR) / "mexico_like.json"));
        CointVector coint = engle_granger(panel).coint;
        return Setup{std::move(panel), coint};
    }();
    return s;
}

void BM_LmStatistic(benchmark::State& state) {
    const auto& s = mexico();
    for (auto _ : state) benchmark::DoNotOptimize(lm_statistic_at(s.panel, s.q, s.coint, 0.0, 0.05));
}
BENCHMARK(BM_LmStatistic);

void BM_SupLm(benchmark::State& state) {
    const auto& s = mexico();
    GridConfig cfg;
    cfg.gridPoints = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(suplm_statistic(s.panel, s.q, s.coint, cfg));
}
BENCHMARK(BM_SupLm)->Arg(50)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_GridSearch(benchmark::State& state) {
    const auto& s = mexico();
    GridConfig cfg;
    cfg.gridPoints = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(grid_search_tvecm(s.panel, s.q, s.coint, cfg));
}
BENCHMARK(BM_GridSearch)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_BootstrapReplication(benchmark::State& state) {
    const auto& s = mexico();
    GridConfig cfg;
    cfg.gridPoints = 50;
    BootstrapOptions opts;
    opts.replications = 1;
    for (auto _ : state) benchmark::DoNotOptimize(bootstrap_pvalue(s.panel, s.q, cfg, opts));
}
BENCHMARK(BM_BootstrapReplication)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
