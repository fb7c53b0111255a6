#pragma once
#include <string>
#include <vector>

#include "slabperc/config.hpp"
#include "slabperc/percolation.hpp"
#include "slabperc/slicing.hpp"

namespace slabperc {

// Everything one run wants written down. Optional sections are keyed by
// null pointers; absent sections are simply omitted from the report.
struct ReportBundle {
    std::string subcommand;
    const RunConfig* config = nullptr;
    const ParamPlan* plan = nullptr;
    const PlanReport* plan_report = nullptr;
    const RectCatalog* catalog = nullptr;
    const CatalogAudit* catalog_audit = nullptr;
    const SlabAssembly* assembly = nullptr;

    struct ExperimentRecord {
        std::string name;
        double p = 0.0;
        Estimate estimate;
    };
    std::vector<ExperimentRecord> experiments;

    struct CensusRecord {
        double p = 0.0;
        CensusResult result;
    };
    std::vector<CensusRecord> census;

    std::vector<std::string> notes;
};

// Serialized JSON document. The schema identifier is bumped whenever a
// field changes meaning; consumers should check it before reading further.
std::string emit_report(const ReportBundle& bundle);

inline constexpr const char* kReportSchema = "slabperc-report/1";

// Writes text under dir as <stem><ext>, or <stem>-2<ext>, -3, ... if
// earlier runs already claimed the name. Existing files are never touched.
// Returns the path written.
std::string write_artifact(const std::string& dir, const std::string& stem,
                           const std::string& ext, const std::string& text);

std::string write_report(const std::string& dir, const std::string& stem,
                         const std::string& text);

}  // namespace slabperc
