#include <benchmark/benchmark.h>

#include "slabperc/gridgen.hpp"

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

}  // namespace

static void BM_BuildCatalog(benchmark::State& state) {
    std::uint64_t s = 1;
    for (auto _ : state) {
        auto cat = build_catalog(desk(s++), viewport(state.range(0)));
        benchmark::DoNotOptimize(cat.entries.data());
    }
}
BENCHMARK(BM_BuildCatalog)->Arg(600)->Arg(1200);

static void BM_CatalogAudit(benchmark::State& state) {
    auto cat = build_catalog(desk(1), viewport(state.range(0)));
    for (auto _ : state) {
        auto audit = catalog_audit(cat);
        benchmark::DoNotOptimize(audit.pairs_checked);
    }
}
BENCHMARK(BM_CatalogAudit)->Arg(600)->Arg(1200);

BENCHMARK_MAIN();
