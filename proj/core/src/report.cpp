#include "slabperc/report.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace slabperc {
namespace {

using nlohmann::json;

json rect_json(const PlanarRect& r) {
    return json{{"x", {r.h.lo, r.h.hi}}, {"y", {r.v.lo, r.v.hi}}};
}

json plan_json(const ParamPlan& plan) {
    json j;
    j["l0"] = plan.seed.l0;
    j["d0"] = plan.seed.d0;
    j["L"] = plan.seed.L;
    j["seed"] = plan.seed.seed;
    j["gamma"] = plan.gamma;
    j["nu0"] = plan.nu0;
    json levels = json::array();
    for (const auto& lv : plan.levels) levels.push_back({{"l", lv.l}, {"d", lv.d}});
    j["levels"] = levels;
    j["n"] = plan.n;
    j["lambda"] = plan.lambda;
    j["a"] = plan.a;
    j["k"] = plan.k;
    j["m"] = plan.m;
    return j;
}

json plan_report_json(const PlanReport& rep) {
    json j;
    j["pass"] = rep.pass;
    j["errors"] = rep.errors;
    j["warnings"] = rep.warnings;
    j["sum_inverse_L"] = rep.sum_inverse_L;
    j["sum_target"] = rep.sum_target;
    j["weighted_k_sum"] = rep.weighted_k_sum;
    j["seam_risk"] = rep.seam_risk;
    j["n_strictly_increasing"] = rep.n_strictly_increasing;
    j["scaling_identity_ok"] = rep.scaling_identity_ok;
    return j;
}

json catalog_json(const RectCatalog& cat) {
    json j;
    j["entries"] = cat.entries.size();
    j["windows"] = cat.windows.size();
    j["vertical"] = cat.count(Orientation::Vertical);
    j["horizontal"] = cat.count(Orientation::Horizontal);
    j["viewport"] = rect_json(cat.viewport);
    std::size_t clipped = 0;
    for (const auto& e : cat.entries) clipped += e.clipped ? 1 : 0;
    j["clipped"] = clipped;
    json per_level = json::object();
    for (const auto& e : cat.entries) {
        auto key = std::to_string(e.index_i);
        per_level[key] = per_level.value(key, 0) + 1;
    }
    j["entries_by_level"] = per_level;
    return j;
}

json audit_json(const CatalogAudit& audit) {
    json j;
    j["pairs_checked"] = audit.pairs_checked;
    j["violations"] = audit.violations.size();
    j["passed"] = audit.passed();
    json details = json::array();
    for (const auto& v : audit.violations) {
        details.push_back({{"entry_a", v.entry_a}, {"entry_b", v.entry_b}, {"detail", v.detail}});
        if (details.size() >= 16) break;  // keep failure reports readable
    }
    if (!details.empty()) j["violation_sample"] = details;
    return j;
}

json assembly_json(const SlabAssembly& a) {
    json j;
    j["slices"] = a.slices.size();
    j["slots"] = a.forest.slot_count();
    j["components"] = a.component_count;
    j["vertices"] = a.graph.vertex_count();
    j["edges"] = a.graph.edge_count();
    return j;
}

json estimate_json(const Estimate& e) {
    return json{{"p_hat", e.p_hat}, {"sigma", e.sigma}, {"trials", e.trials}};
}

json census_json(const CensusResult& c) {
    json j;
    j["min"] = c.min;
    j["max"] = c.max;
    j["mean"] = c.mean;
    j["median"] = c.median;
    j["trials"] = c.counts.size();
    json hist = json::object();
    for (auto v : c.counts) {
        auto key = std::to_string(v);
        hist[key] = hist.value(key, 0) + 1;
    }
    j["histogram"] = hist;
    j["counts"] = c.counts;
    return j;
}

}  // namespace

std::string emit_report(const ReportBundle& bundle) {
    json j;
    j["schema"] = kReportSchema;
    j["subcommand"] = bundle.subcommand;
    if (bundle.config) {
        j["seed"] = bundle.config->params.seed;
        j["config"] = serialize_config(*bundle.config);
    }
    if (bundle.plan) j["plan"] = plan_json(*bundle.plan);
    if (bundle.plan_report) j["plan_report"] = plan_report_json(*bundle.plan_report);
    if (bundle.catalog) j["catalog"] = catalog_json(*bundle.catalog);
    if (bundle.catalog_audit) j["catalog_audit"] = audit_json(*bundle.catalog_audit);
    if (bundle.assembly) j["assembly"] = assembly_json(*bundle.assembly);
    if (!bundle.experiments.empty()) {
        json arr = json::array();
        for (const auto& e : bundle.experiments)
            arr.push_back({{"name", e.name}, {"p", e.p}, {"estimate", estimate_json(e.estimate)}});
        j["experiments"] = arr;
    }
    if (!bundle.census.empty()) {
        json arr = json::array();
        for (const auto& c : bundle.census)
            arr.push_back({{"p", c.p}, {"census", census_json(c.result)}});
        j["census"] = arr;
    }
    if (!bundle.notes.empty()) j["notes"] = bundle.notes;
    return j.dump(2) + "\n";
}

std::string write_artifact(const std::string& dir, const std::string& stem,
                           const std::string& ext, const std::string& text) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    fs::path target = fs::path(dir) / (stem + ext);
    for (int n = 2; fs::exists(target); ++n)
        target = fs::path(dir) / (stem + "-" + std::to_string(n) + ext);
    std::ofstream out(target, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + target.string() + " for writing");
    out << text;
    return target.string();
}

std::string write_report(const std::string& dir, const std::string& stem,
                         const std::string& text) {
    return write_artifact(dir, stem, ".json", text);
}

}  // namespace slabperc
