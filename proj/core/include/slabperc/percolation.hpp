#pragma once
#include <cstdint>
#include <functional>
#include <vector>

#include "slabperc/rng.hpp"
#include "slabperc/slicing.hpp"

namespace slabperc {

// Bernoulli bond configuration over a fixed graph. The open flags align
// with graph->edges(); the graph is borrowed, not owned.
struct BondConfig {
    const FiniteGraph* graph = nullptr;
    std::vector<std::uint8_t> open;
    double p = 0.0;
    std::uint64_t seed = 0;
};

// One uniform per edge in canonical edge order. Sharing the uniforms across
// a p grid couples the configs monotonically: raising p only opens edges.
std::vector<double> sample_uniforms(const FiniteGraph& g, std::uint64_t seed);
BondConfig config_from_uniforms(const FiniteGraph& g, const std::vector<double>& u,
                                double p);
BondConfig sample_config(const FiniteGraph& g, double p, std::uint64_t seed);

// Connected components of the open subgraph, ids in first-seen vertex order.
struct ClusterLabeling {
    std::vector<std::uint32_t> label;  // per vertex
    std::vector<std::uint32_t> sizes;  // per cluster id
    std::size_t count = 0;
};

ClusterLabeling label_clusters(const BondConfig& config);

// Two designated vertex sets of one graph plus an optional vertex mask.
// A crossing is an open path from side_a to side_b through allowed
// vertices; an empty mask allows every vertex.
struct CrossingSpec {
    std::vector<std::uint32_t> side_a, side_b;  // vertex indices
    std::vector<std::uint8_t> allowed;          // per vertex; empty = all
};

enum class CrossDir { Horizontal, Vertical };

// Ends of a planar rectangle inside g: leftmost and rightmost columns for
// Horizontal, top and bottom rows for Vertical. The mask confines paths to
// the rectangle, so the spec is usable on graphs larger than the rectangle.
CrossingSpec rect_crossing(const FiniteGraph& g, const PlanarRect& r, CrossDir dir,
                           std::uint8_t layer = 1);

// Ends of a folded slice inside its own graph: the fold images of the two
// short-side rows or columns of the source rectangle.
CrossingSpec folded_crossing(const FoldedSlice& fs, CrossDir dir);

bool crossing_event(const CrossingSpec& spec, const BondConfig& config);

struct Estimate {
    double p_hat = 0.0;
    double sigma = 0.0;  // binomial standard error
    std::size_t trials = 0;
};

// Monte Carlo crossing frequency; per-trial substreams come off the master
// seed, so serial and parallel runs agree.
Estimate estimate_crossing(const FiniteGraph& g, const CrossingSpec& spec, double p,
                           std::size_t trials, std::uint64_t seed);

// One estimate per retention value, all fed by the same per-trial uniforms;
// the estimates are pathwise nondecreasing in p.
std::vector<Estimate> estimate_crossing_curve(const FiniteGraph& g,
                                              const CrossingSpec& spec,
                                              const std::vector<double>& ps,
                                              std::size_t trials, std::uint64_t seed);

// Exact crossing probability by exhausting all configurations; needs at
// most 20 edges.
double crossing_probability_exact(const FiniteGraph& g, const CrossingSpec& spec,
                                  double p);

// A chain of crossing targets over one shared graph, each tagged with its
// own direction via the spec's side sets and mask.
struct Road {
    FiniteGraph graph;
    std::vector<CrossingSpec> specs;
};

// Union graph of the member rectangles with per-member crossing specs:
// Vertical members cross top to bottom, Horizontal ones left to right.
Road make_road(const std::vector<PlanarRect>& members);

struct RoadSurvival {
    Estimate joint;                   // all member crossings at once
    std::vector<Estimate> marginals;  // per member, same trials
    // Joint successes whose open union failed to connect the first member's
    // near end to the last member's far end. Overlapping perpendicular
    // crossings always intersect, so this stays zero.
    std::size_t span_failures = 0;
};

RoadSurvival road_survival(const Road& road, double p, std::size_t trials,
                           std::uint64_t seed);

enum class SpanMode { Horizontal, Vertical, Either };

// Arena whose opposite sides a cluster must join, using only vertices
// inside the arena (either layer).
struct SpanSpec {
    PlanarRect arena;
    SpanMode mode = SpanMode::Either;
};

SpanSpec default_span(const SlabAssembly& assembly);

struct CensusResult {
    std::vector<std::uint32_t> counts;  // per trial
    std::uint32_t min = 0, max = 0;
    double mean = 0.0, median = 0.0;
};

// Per trial, the number of distinct assembly components owning an open
// cluster that spans the arena.
CensusResult spanning_census(const SlabAssembly& assembly, double p,
                             std::size_t trials, std::uint64_t seed,
                             const SpanSpec& span);
CensusResult spanning_census(const SlabAssembly& assembly, double p,
                             std::size_t trials, std::uint64_t seed);

// Censuses over a p grid from shared per-trial uniforms; each trial's count
// is nondecreasing in p.
std::vector<CensusResult> spanning_census_curve(const SlabAssembly& assembly,
                                                const std::vector<double>& ps,
                                                std::size_t trials,
                                                std::uint64_t seed,
                                                const SpanSpec& span);

using EventFn = std::function<bool(const BondConfig&)>;

struct FkgResult {
    double p_joint = 0.0;
    double p_a = 0.0;
    double p_b = 0.0;
    bool pass = false;  // p_joint >= p_a * p_b
};

// Exact check of positive correlation for two increasing events on a small
// graph (at most 20 edges). Monotonicity of each event is verified
// exhaustively first; a non-increasing event is refused.
FkgResult fkg_check(const FiniteGraph& g, const EventFn& a, const EventFn& b,
                    double p);

}  // namespace slabperc
