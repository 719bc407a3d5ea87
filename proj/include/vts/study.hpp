#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vts/case.hpp"
#include "vts/formulation.hpp"
#include "vts/metrics.hpp"
#include "vts/model.hpp"
#include "vts/solve.hpp"

namespace vts {

struct StudyConfig {
    std::vector<SchemeId> schemes = all_schemes();
    SolverConfig solver;
    // Study runs schedule a repeating day: storage must end at or above its
    // initial energy so no scheme is credited for draining pre-charged MWh.
    BuildOptions build = {.cyclic_storage = true};
    std::string out_dir;  // empty -> no CSV emission

    // Branch the PT scheme duplicates; 0 -> the first VT pair's spanned
    // branch.
    int pt_branch = 0;

    std::vector<double> sweep_sizes_mw = {100, 150, 200, 250, 300, 350, 400};
    double sweep_duration_h = 4.0;

    double binding_tol = 1e-4;
    double stress_threshold = 0.70;
    std::string note;  // free-form run annotation, copied to run_info.txt
};

// One scheme solved end to end: model, incumbent, commitment-fixed LP and
// the derived market metrics.
struct SchemeRun {
    SchemeId scheme = SchemeId::Scuc;
    Case study_case;  // the case actually solved (PT adds the twin line)
    MilpModel model;
    MipSolution mip;
    std::optional<LpSolution> lp;
    std::optional<LmpMatrix> lmp;
    std::string error;  // non-empty if the run failed before producing a solution

    bool ok() const { return error.empty() && has_solution(mip.status); }
};

struct ComparisonRow {
    SchemeId scheme = SchemeId::Scuc;
    std::string status;
    std::optional<double> operation_cost;
    std::optional<double> cost_reduction;  // fraction vs benchmark
    std::optional<double> avg_congested_per_hour;
    double solve_time_s = 0.0;
    std::optional<double> gap;
};

struct SweepPoint {
    double size_mw = 0.0;
    double energy_mwh = 0.0;
    std::string status;
    std::optional<double> operation_cost;
    std::optional<double> load_payment;
};

struct FlowTracePoint {
    SchemeId scheme = SchemeId::Scuc;
    int t = 0;
    double flow_mw = 0.0;            // flow on the traced branch
    double corridor_total_mw = 0.0;  // traced branch plus any parallel twins
};

struct StudyResult {
    std::vector<ComparisonRow> rows;
    std::map<SchemeId, SchemeRun> runs;
};

// The case a scheme is solved on (PT gets the duplicated line).
Case case_for_scheme(const Case& c, SchemeId scheme, const StudyConfig& config);

SchemeRun run_scheme(const Case& c, SchemeId scheme, const StudyConfig& config);

// Solves every configured scheme, benchmark SCUC first, and computes the
// comparison table. Scheme failures are recorded in the row status and do
// not abort the run.
StudyResult run_comparison(const Case& c, const StudyConfig& config);

std::vector<SweepPoint> run_size_sweep(const Case& c, const StudyConfig& config);

std::vector<FlowTracePoint> run_flow_trace(const Case& c, const StudyConfig& config,
                                           int branch_id, const std::vector<SchemeId>& schemes);

// CSV emission. Columns are documented in the README.
void write_comparison_csv(const std::string& path, const std::vector<ComparisonRow>& rows);
void write_sweep_csv(const std::string& path, const std::vector<SweepPoint>& points);
void write_flow_trace_csv(const std::string& path, const std::vector<FlowTracePoint>& points);
void write_study_csvs(const StudyResult& result, const StudyConfig& config);
void write_lmp_diff_csv(const std::string& path, const LmpMatrix& diff);

}  // namespace vts
