#include <benchmark/benchmark.h>

#include "slabperc/percolation.hpp"
#include "slabperc/tree.hpp"

using namespace slabperc;

namespace {

ParamSeed desk(std::uint64_t s) {
    ParamSeed p;
    p.l0 = 2;
    p.d0 = 3;
    p.L = {3, 4, 5};
    p.seed = s;
    return p;
}

PlanarRect viewport(std::int64_t side) {
    return PlanarRect(Block(0, side - 1), Block(0, side - 1));
}

SlabAssembly desk_assembly(std::int64_t side) {
    auto cat = build_catalog(desk(21), viewport(side));
    auto tree = build_overlap_tree(cat);
    return build_assembly(cat, tree, {1, 1, 1, 1, 1, 3}, 21);
}

}  // namespace

static void BM_BuildAssembly(benchmark::State& state) {
    auto cat = build_catalog(desk(21), viewport(state.range(0)));
    auto tree = build_overlap_tree(cat);
    for (auto _ : state) {
        auto assembly = build_assembly(cat, tree, {1, 1, 1, 1, 1, 3}, 21);
        benchmark::DoNotOptimize(assembly.component_count);
    }
}
BENCHMARK(BM_BuildAssembly)->Arg(600)->Unit(benchmark::kMillisecond);

static void BM_OverlapAudit(benchmark::State& state) {
    auto assembly = desk_assembly(state.range(0));
    for (auto _ : state) {
        auto audit = overlap_audit(assembly);
        benchmark::DoNotOptimize(audit.pairs_checked);
    }
}
BENCHMARK(BM_OverlapAudit)->Arg(600)->Unit(benchmark::kMillisecond);

static void BM_SampleAndLabel(benchmark::State& state) {
    PlanarRect box = viewport(state.range(0));
    auto g = induced_rect_graph(box);
    std::uint64_t s = 0;
    for (auto _ : state) {
        auto omega = sample_config(g, 0.6, s++);
        auto labels = label_clusters(omega);
        benchmark::DoNotOptimize(labels.count);
    }
}
BENCHMARK(BM_SampleAndLabel)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_CrossingEstimate(benchmark::State& state) {
    std::int64_t n = state.range(0);
    PlanarRect r(Block(0, 2 * n - 1), Block(0, n - 1));
    auto g = induced_rect_graph(r);
    auto spec = rect_crossing(g, r, CrossDir::Horizontal);
    std::uint64_t s = 0;
    for (auto _ : state) {
        auto est = estimate_crossing(g, spec, 0.6, 100, s++);
        benchmark::DoNotOptimize(est.p_hat);
    }
}
BENCHMARK(BM_CrossingEstimate)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_SpanningCensus(benchmark::State& state) {
    auto assembly = desk_assembly(600);
    auto span = default_span(assembly);
    std::uint64_t s = 0;
    for (auto _ : state) {
        auto census = spanning_census(assembly, 0.95, 10, s++, span);
        benchmark::DoNotOptimize(census.median);
    }
}
BENCHMARK(BM_SpanningCensus)->Unit(benchmark::kMillisecond);
