#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "vts/case.hpp"
#include "vts/formulation.hpp"
#include "vts/metrics.hpp"
#include "vts/mps.hpp"
#include "vts/rts.hpp"
#include "vts/solve.hpp"
#include "vts/study.hpp"

namespace fs = std::filesystem;
using namespace vts;

namespace {

std::vector<SchemeId> parse_schemes(const std::vector<std::string>& names) {
    if (names.empty()) return all_schemes();
    std::vector<SchemeId> out;
    for (const auto& n : names) out.push_back(scheme_from_name(n));
    return out;
}

void print_run_summary(const SchemeRun& run, const StudyConfig& cfg) {
    std::cout << scheme_name(run.scheme) << ": ";
    if (!run.error.empty()) {
        std::cout << "error: " << run.error << "\n";
        return;
    }
    std::cout << status_name(run.mip.status);
    if (has_solution(run.mip.status)) {
        std::cout << " objective=" << run.mip.objective << " gap=" << run.mip.gap
                  << " time=" << run.mip.solve_time_s << "s";
        CongestionReport cong = congestion_stats(run.model, run.mip.values, run.study_case,
                                                 cfg.binding_tol, cfg.stress_threshold);
        std::cout << " congested_line_hours=" << cong.binding_line_hours.size();
    }
    std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Day-ahead scheduling study toolkit: SCUC variants with storage-based "
                 "virtual transmission, line additions and network reconfiguration"};
    app.require_subcommand(1);

    StudyConfig cfg;
    bool strict_paper = false;
    app.add_option("--time-limit", cfg.solver.time_limit_s, "Solver time limit, seconds");
    app.add_option("--gap", cfg.solver.mip_gap, "Relative MIP gap tolerance");
    app.add_option("--seed-note", cfg.note, "Free-form annotation recorded with the outputs");
    app.add_flag("--strict-paper", strict_paper, "Enforce the published study totals when building cases");
    app.add_option("--backend-script", cfg.solver.backend_script, "Path to the solver bridge script");
    app.add_option("--python", cfg.solver.python, "Python interpreter for the solver bridge");

    std::string case_path, out_dir, scheme_name_a, scheme_name_b, format = "mps";
    std::vector<std::string> scheme_names;
    std::vector<double> sizes;
    int branch_id = 0;

    auto* validate_cmd = app.add_subcommand("validate", "Validate a case file");
    validate_cmd->add_option("case", case_path, "Case file")->required();

    auto* run_cmd = app.add_subcommand("run", "Build and solve one scheme");
    run_cmd->add_option("--case", case_path, "Case file")->required();
    run_cmd->add_option("--scheme", scheme_name_a, "Scheme name")->required();
    run_cmd->add_option("--out", out_dir, "Output directory for CSVs");

    auto* compare_cmd = app.add_subcommand("compare", "Run the scheme comparison study");
    compare_cmd->add_option("--case", case_path, "Case file")->required();
    compare_cmd->add_option("--out", out_dir, "Output directory")->required();
    compare_cmd->add_option("--schemes", scheme_names, "Subset of schemes to run");

    auto* sweep_cmd = app.add_subcommand("sweep", "Storage size sweep under the VT scheme");
    sweep_cmd->add_option("--case", case_path, "Case file")->required();
    sweep_cmd->add_option("--sizes", sizes, "Storage power ratings, MW");
    sweep_cmd->add_option("--out", out_dir, "Output directory")->required();

    auto* diff_cmd = app.add_subcommand("lmp-diff", "Hourly LMP difference between two schemes");
    diff_cmd->add_option("--case", case_path, "Case file")->required();
    diff_cmd->add_option("--a", scheme_name_a, "First scheme")->required();
    diff_cmd->add_option("--b", scheme_name_b, "Second scheme")->required();
    diff_cmd->add_option("--out", out_dir, "Output directory")->required();

    auto* export_cmd = app.add_subcommand("export", "Export a scheme's model to MPS or LP text");
    export_cmd->add_option("--case", case_path, "Case file")->required();
    export_cmd->add_option("--scheme", scheme_name_a, "Scheme name")->required();
    export_cmd->add_option("--format", format, "mps or lp")->check(CLI::IsMember({"mps", "lp"}));
    export_cmd->add_option("--out", out_dir, "Output directory")->required();

    auto* flows_cmd = app.add_subcommand("flow-trace", "Hourly flow on one branch per scheme");
    flows_cmd->add_option("--case", case_path, "Case file")->required();
    flows_cmd->add_option("--branch", branch_id, "Branch id")->required();
    flows_cmd->add_option("--schemes", scheme_names, "Schemes to trace");
    flows_cmd->add_option("--out", out_dir, "Output directory")->required();

    auto* make_cmd = app.add_subcommand("make-case", "Write the bundled modified 24-bus study case");
    make_cmd->add_option("--out", out_dir, "Output file path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate_cmd->parsed()) {
            Case c = load_case(case_path);
            std::cout << "ok: " << c.buses.size() << " buses, " << c.branches.size()
                      << " branches, " << c.generators.size() << " generators, "
                      << c.solar_plants.size() << " solar plants, " << c.storage_units.size()
                      << " storage units\n";
            return 0;
        }
        if (make_cmd->parsed()) {
            StudyCaseConfig scc;
            scc.strict_paper = true;
            save_case(build_modified_rts_case(scc), out_dir);
            std::cout << "wrote " << out_dir << "\n";
            return 0;
        }

        Case c = load_case(case_path);
        cfg.out_dir = out_dir;

        if (run_cmd->parsed()) {
            cfg.schemes = {scheme_from_name(scheme_name_a)};
            StudyResult result = run_comparison(c, cfg);
            write_study_csvs(result, cfg);
            print_run_summary(result.runs.at(cfg.schemes[0]), cfg);
            return result.runs.at(cfg.schemes[0]).ok() ? 0 : 1;
        }
        if (compare_cmd->parsed()) {
            cfg.schemes = parse_schemes(scheme_names);
            StudyResult result = run_comparison(c, cfg);
            write_study_csvs(result, cfg);
            for (const auto& [scheme, run] : result.runs) print_run_summary(run, cfg);
            std::cout << "wrote " << (fs::path(out_dir) / "comparison.csv").string() << "\n";
            return 0;
        }
        if (sweep_cmd->parsed()) {
            if (!sizes.empty()) cfg.sweep_sizes_mw = sizes;
            auto points = run_size_sweep(c, cfg);
            fs::create_directories(out_dir);
            write_sweep_csv((fs::path(out_dir) / "sweep.csv").string(), points);
            for (const auto& p : points)
                std::cout << p.size_mw << " MW: "
                          << (p.operation_cost ? std::to_string(*p.operation_cost) : p.status)
                          << "\n";
            return 0;
        }
        if (diff_cmd->parsed()) {
            SchemeRun a = run_scheme(c, scheme_from_name(scheme_name_a), cfg);
            SchemeRun b = run_scheme(c, scheme_from_name(scheme_name_b), cfg);
            if (!a.lmp || !b.lmp) {
                std::cerr << "lmp-diff: a scheme failed to produce prices ("
                          << (a.error.empty() ? status_name(a.mip.status) : a.error) << " / "
                          << (b.error.empty() ? status_name(b.mip.status) : b.error) << ")\n";
                return 1;
            }
            fs::create_directories(out_dir);
            write_lmp_diff_csv((fs::path(out_dir) / "lmp_diff.csv").string(),
                               lmp_difference(*a.lmp, *b.lmp));
            std::cout << "wrote " << (fs::path(out_dir) / "lmp_diff.csv").string() << "\n";
            return 0;
        }
        if (export_cmd->parsed()) {
            SchemeId scheme = scheme_from_name(scheme_name_a);
            MilpModel model = build(case_for_scheme(c, scheme, cfg), scheme, cfg.build);
            fs::create_directories(out_dir);
            fs::path file = fs::path(out_dir) / (scheme_name(scheme) + "." + format);
            export_model(model, file.string(),
                         format == "mps" ? ExportFormat::Mps : ExportFormat::Lp);
            std::cout << "wrote " << file.string() << "\n";
            return 0;
        }
        if (flows_cmd->parsed()) {
            auto points = run_flow_trace(c, cfg, branch_id, parse_schemes(scheme_names));
            fs::create_directories(out_dir);
            write_flow_trace_csv((fs::path(out_dir) / "flows.csv").string(), points);
            std::cout << "wrote " << (fs::path(out_dir) / "flows.csv").string() << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
