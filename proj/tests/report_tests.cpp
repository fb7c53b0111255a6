#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "slabperc/gridgen.hpp"
#include "slabperc/report.hpp"

using namespace slabperc;
using nlohmann::json;

namespace {

RunConfig desk_config() {
    return parse_config("seed = 5\nviewport = 300\n");
}

}  // namespace

TEST_CASE("report carries the schema tag and echoes the config") {
    RunConfig cfg = desk_config();
    ReportBundle bundle;
    bundle.subcommand = "plan";
    bundle.config = &cfg;
    ConfiguredPlan cp = plan_from_config(cfg);
    bundle.plan = &cp.plan;
    bundle.plan_report = &cp.report;

    json j = json::parse(emit_report(bundle));
    CHECK(j["schema"] == kReportSchema);
    CHECK(j["subcommand"] == "plan");
    CHECK(j["seed"] == 5);
    CHECK(parse_config(j["config"].get<std::string>()).params.seed == 5);
    CHECK(j["plan"]["l0"] == 2);
    CHECK(j["plan"]["m"].size() == cp.plan.m.size());
    CHECK(j["plan_report"]["pass"] == cp.report.pass);
    CHECK_FALSE(j.contains("catalog"));
    CHECK_FALSE(j.contains("experiments"));
    CHECK_FALSE(j.contains("census"));
}

TEST_CASE("catalog and audit sections summarize the build") {
    RunConfig cfg = desk_config();
    RectCatalog cat = build_catalog(cfg.params, config_viewport(cfg));
    CatalogAudit audit = catalog_audit(cat);
    ReportBundle bundle;
    bundle.subcommand = "build";
    bundle.catalog = &cat;
    bundle.catalog_audit = &audit;

    json j = json::parse(emit_report(bundle));
    CHECK(j["catalog"]["entries"] == cat.entries.size());
    CHECK(j["catalog"]["vertical"] == cat.count(Orientation::Vertical));
    CHECK(j["catalog"]["horizontal"] == cat.count(Orientation::Horizontal));
    CHECK(j["catalog_audit"]["passed"] == true);
    CHECK(j["catalog_audit"]["violations"] == 0);
    CHECK(j["catalog_audit"]["pairs_checked"] == audit.pairs_checked);
}

TEST_CASE("census counts pass through exactly") {
    CensusResult census;
    census.counts = {3, 2, 3, 3, 1};
    census.min = 1;
    census.max = 3;
    census.mean = 2.4;
    census.median = 3.0;
    ReportBundle bundle;
    bundle.subcommand = "census";
    bundle.census.push_back({0.95, census});
    bundle.experiments.push_back({"crossing", 0.5, Estimate{0.75, 0.01, 1500}});

    json j = json::parse(emit_report(bundle));
    auto& c = j["census"][0];
    CHECK(c["p"] == 0.95);
    CHECK(c["census"]["counts"] == json({3, 2, 3, 3, 1}));
    CHECK(c["census"]["min"] == 1);
    CHECK(c["census"]["max"] == 3);
    CHECK(c["census"]["median"] == 3.0);
    CHECK(c["census"]["histogram"]["3"] == 3);
    CHECK(c["census"]["histogram"]["1"] == 1);
    auto& e = j["experiments"][0];
    CHECK(e["name"] == "crossing");
    CHECK(e["estimate"]["p_hat"] == 0.75);
    CHECK(e["estimate"]["trials"] == 1500);
}

TEST_CASE("write_report never touches an existing file") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "slabperc-report-test";
    fs::remove_all(dir);

    std::string first = write_report(dir.string(), "run-seed5", "{\"a\":1}\n");
    std::string second = write_report(dir.string(), "run-seed5", "{\"a\":2}\n");
    std::string third = write_report(dir.string(), "run-seed5", "{\"a\":3}\n");
    CHECK(first != second);
    CHECK(second != third);
    CHECK(fs::path(first).filename() == "run-seed5.json");
    CHECK(fs::path(second).filename() == "run-seed5-2.json");
    CHECK(fs::path(third).filename() == "run-seed5-3.json");

    std::ifstream in(first);
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(body == "{\"a\":1}\n");
    fs::remove_all(dir);
}
