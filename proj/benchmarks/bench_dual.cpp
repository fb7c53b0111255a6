#include <benchmark/benchmark.h>

#include "slabperc/dual.hpp"

using namespace slabperc;

static void BM_DualOfConfig(benchmark::State& state) {
    std::int64_t side = state.range(0);
    PlanarRect box(Block(0, side - 1), Block(0, side - 1));
    auto g = induced_rect_graph(box);
    auto omega = sample_config(g, 0.5, 7);
    for (auto _ : state) {
        auto dual = dual_of_config(omega);
        benchmark::DoNotOptimize(dual.state.data());
    }
}
BENCHMARK(BM_DualOfConfig)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_SeparationWitness(benchmark::State& state) {
    // Seed 44 on the 16 x 16 box yields two disjoint vertically spanning
    // clusters at p = 1/2, so the witness search runs end to end.
    PlanarRect box(Block(0, 15), Block(0, 15));
    auto g = induced_rect_graph(box);
    const auto& verts = g.vertices();
    BondConfig omega;
    ClusterLabeling lab;
    std::uint32_t c1 = 0, c2 = 0;
    for (std::uint64_t s = 0; s < 500; ++s) {
        omega = sample_config(g, 0.5, s);
        lab = label_clusters(omega);
        std::vector<char> top(lab.count, 0), bottom(lab.count, 0);
        for (std::uint32_t v = 0; v < verts.size(); ++v) {
            if (verts[v].y == box.v.lo) bottom[lab.label[v]] = 1;
            if (verts[v].y == box.v.hi) top[lab.label[v]] = 1;
        }
        std::vector<std::uint32_t> spanning;
        for (std::uint32_t c = 0; c < lab.count; ++c)
            if (top[c] && bottom[c]) spanning.push_back(c);
        if (spanning.size() >= 2) {
            c1 = spanning[0];
            c2 = spanning[1];
            break;
        }
    }
    for (auto _ : state) {
        auto w = separation_witness(omega, lab, c1, c2);
        benchmark::DoNotOptimize(w.has_value());
    }
}
BENCHMARK(BM_SeparationWitness);
