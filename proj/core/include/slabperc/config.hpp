#pragma once
#include <string>
#include <vector>

#include "slabperc/planner.hpp"

namespace slabperc {

// One run's knobs, read from a key=value file. Omitted keys take the desk
// defaults below; unknown keys are rejected with their line number.
struct RunConfig {
    ParamSeed params{2, 3, {3, 4, 5}, 0};  // l0, d0, L, seed
    std::int64_t viewport_w = 600, viewport_h = 600;
    double gamma = 1.0;
    std::int64_t nu0 = 1;
    double c = 0.5;  // reporting base for bound values only
    std::vector<double> p = {0.5};
    std::size_t trials = 1000;
    std::vector<std::uint32_t> m;  // multiplicities; empty = all ones
    std::vector<std::string> experiments = {"crossing", "road", "fkg"};
    std::string out = "runs";
    bool strict = false;
    std::string span_mode = "either";  // either | h | v
    std::string arena = "auto";        // auto | top_band
    std::string view = "catalog";      // catalog | window | assembly | config
};

RunConfig parse_config(const std::string& text);

// Canonical text form; parse(serialize(x)) reproduces x exactly.
std::string serialize_config(const RunConfig& cfg);

PlanarRect config_viewport(const RunConfig& cfg);

// Plan assembled from the config with its multiplicities applied and the
// feasibility report attached; hard violations are the caller's to act on.
struct ConfiguredPlan {
    ParamPlan plan;
    PlanReport report;
};

ConfiguredPlan plan_from_config(const RunConfig& cfg);

}  // namespace slabperc
