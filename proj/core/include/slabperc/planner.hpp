#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "slabperc/gridgen.hpp"

namespace slabperc {

// Side lengths of the two joined rectangle shapes of index pair (2i, 2i+1),
// their shorter sides n and rounded-up aspect ratios Λ.
struct RectDims {
    std::int64_t vertical_w = 0, vertical_h = 0;
    std::int64_t horizontal_w = 0, horizontal_h = 0;
    std::int64_t n_vertical = 0, n_horizontal = 0;
    std::int64_t lambda_vertical = 0, lambda_horizontal = 0;
};

RectDims rect_dimensions(const std::vector<LevelParams>& levels, int i);

// Tail thresholds over a nonnegative weight prefix. The tail at j is the
// prefix sum from j plus a remainder allowance equal to the final weight;
// j_s is the least index whose tail drops under 2^-s and k_i counts the
// thresholds at or before i. k saturates at 64 once tails vanish.
struct KResult {
    std::vector<std::uint32_t> k;       // per index
    std::vector<double> tail;           // estimated tail per index
    std::vector<std::size_t> thresholds;  // j_s for s = 0,1,...
    double weighted_sum = 0.0;          // sum of a_i * k_i over the prefix
};

KResult construct_k(const std::vector<double>& a);

// Full parameter plan: derived level sizes, per-index shape data, tail
// counters, and the multiplicity sequence. m defaults to all ones; callers
// assign or derive it before validation.
struct ParamPlan {
    ParamSeed seed;
    double gamma = 1.0;
    std::int64_t nu0 = 1;
    std::vector<LevelParams> levels;
    std::vector<std::int64_t> n;       // per index j, 2 per level pair
    std::vector<std::int64_t> lambda;  // per index j
    std::vector<double> a;             // lambda / n^gamma
    std::vector<std::uint32_t> k;      // per index j
    std::vector<std::uint32_t> m;      // per index j
};

ParamPlan make_plan(const ParamSeed& seed, double gamma = 1.0, std::int64_t nu0 = 1);

// Largest multiplicities satisfying the selection rule: nondecreasing,
// within the tail cap k^(1/gamma), keeping the margin n/(2m) > nu0 and a
// slice side of at least 3. Throws naming the first index with no feasible
// value.
struct ChooseResult {
    std::vector<std::uint32_t> m;
    std::vector<std::size_t> increases;  // indices where m steps up
    // True when geometry limited the final step; false when the tail counter
    // was the binding cap, so a longer plan would keep raising m.
    bool growth_capped = false;
};

ChooseResult choose_m(const ParamPlan& plan);

// Feasibility report. Hard failures make pass false and name the first
// offending index; advisory findings go to warnings. Identity bags (m = 1)
// cut nothing, so the margin and slice-side rules bind only where m >= 2;
// there they guarantee cut_rect and the fold preconditions. Two adjacent
// indices above 1 are rejected outright: their fold detours are known to
// collide on the bottom layer.
struct PlanReport {
    bool pass = true;
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    double sum_inverse_L = 0.0;   // prefix of sum 1/L_i
    double sum_target = 0.0;      // prefix of sum m^gamma * lambda / n^gamma
    double weighted_k_sum = 0.0;  // sum a_j k_j
    bool seam_risk = false;       // adjacent multiplicities above 1
    bool n_strictly_increasing = false;
    bool scaling_identity_ok = false;  // lambda/(n/m)^g equals m^g*lambda/n^g
};

PlanReport validate_plan(const ParamPlan& plan, bool strict = false);

}  // namespace slabperc
