#include "vts/study.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace fs = std::filesystem;

namespace vts {

namespace {

std::ofstream open_csv(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << std::setprecision(12);
    return out;
}

std::string opt_cell(const std::optional<double>& v) {
    if (!v) return "";
    std::ostringstream ss;
    ss << std::setprecision(12) << *v;
    return ss.str();
}

int resolve_pt_branch(const Case& c, const StudyConfig& config) {
    if (config.pt_branch > 0) return config.pt_branch;
    if (!c.vt_pairs.empty()) return c.vt_pairs.front().spanned_branch;
    throw ValidationError("PT scheme needs pt_branch or a VT pair to locate the corridor");
}

Case strip_storage(const Case& c) {
    Case out = c;
    out.storage_units.clear();
    out.vt_pairs.clear();
    return out;
}

}  // namespace

Case case_for_scheme(const Case& c, SchemeId scheme, const StudyConfig& config) {
    if (scheme == SchemeId::ScucPt)
        return add_parallel_line(strip_storage(c), resolve_pt_branch(c, config));
    if (!scheme_has_storage(scheme)) return strip_storage(c);
    return c;
}

SchemeRun run_scheme(const Case& c, SchemeId scheme, const StudyConfig& config) {
    SchemeRun run;
    run.scheme = scheme;
    try {
        run.study_case = case_for_scheme(c, scheme, config);
        run.model = build(run.study_case, scheme, config.build);
        run.mip = solve_mip(run.model, config.solver);
        if (has_solution(run.mip.status)) {
            run.lp = resolve_lp_fixed(run.model, run.mip, config.solver);
            if (run.lp->status == SolveStatus::Optimal)
                run.lmp = compute_lmp(*run.lp, run.study_case);
        }
    } catch (const std::exception& e) {
        run.error = e.what();
    }
    return run;
}

StudyResult run_comparison(const Case& c, const StudyConfig& config) {
    StudyResult result;
    std::vector<SchemeId> order = config.schemes;
    // The benchmark is solved first so reductions can be computed against it.
    std::optional<double> benchmark_cost;

    auto scuc_it = std::find(order.begin(), order.end(), SchemeId::Scuc);
    if (scuc_it != order.end()) std::rotate(order.begin(), scuc_it, scuc_it + 1);

    for (SchemeId scheme : order) {
        SchemeRun run = run_scheme(c, scheme, config);
        ComparisonRow row;
        row.scheme = scheme;
        if (!run.error.empty()) {
            row.status = "error: " + run.error;
        } else {
            row.status = status_name(run.mip.status);
            row.solve_time_s = run.mip.solve_time_s;
            if (has_solution(run.mip.status)) {
                row.operation_cost = run.mip.objective;
                row.gap = run.mip.gap;
                CongestionReport cong = congestion_stats(run.model, run.mip.values, run.study_case,
                                                         config.binding_tol, config.stress_threshold);
                row.avg_congested_per_hour = cong.avg_congested_per_hour;
                if (scheme == SchemeId::Scuc) benchmark_cost = run.mip.objective;
                if (benchmark_cost) row.cost_reduction = 1.0 - run.mip.objective / *benchmark_cost;
            }
        }
        result.rows.push_back(row);
        result.runs.emplace(scheme, std::move(run));
    }
    return result;
}

std::vector<SweepPoint> run_size_sweep(const Case& c, const StudyConfig& config) {
    if (c.storage_units.empty())
        throw ValidationError("size sweep requires a case with storage units");
    std::vector<SweepPoint> points;
    for (double size : config.sweep_sizes_mw) {
        Case scaled = c;
        for (auto& e : scaled.storage_units) {
            double soc_fraction = e.e_max_mwh > 0 ? e.e_initial_mwh / e.e_max_mwh : 0.0;
            e.p_charge_max_mw = size;
            e.p_discharge_max_mw = size;
            e.e_max_mwh = size * config.sweep_duration_h;
            e.e_min_mwh = 0.0;
            e.e_initial_mwh = soc_fraction * e.e_max_mwh;
        }
        SweepPoint pt;
        pt.size_mw = size;
        pt.energy_mwh = size * config.sweep_duration_h;
        if (size <= 0) {
            // Degenerate size: solve without storage, equals plain SCUC.
            SchemeRun run = run_scheme(strip_storage(scaled), SchemeId::Scuc, config);
            pt.status = run.error.empty() ? status_name(run.mip.status) : "error: " + run.error;
            if (run.ok()) pt.operation_cost = run.mip.objective;
            if (run.lmp) pt.load_payment = load_payment(*run.lmp, run.study_case);
            points.push_back(pt);
            continue;
        }
        SchemeRun run = run_scheme(scaled, SchemeId::ScucVt, config);
        pt.status = run.error.empty() ? status_name(run.mip.status) : "error: " + run.error;
        if (run.ok()) pt.operation_cost = run.mip.objective;
        if (run.lmp) pt.load_payment = load_payment(*run.lmp, run.study_case);
        points.push_back(pt);
    }
    return points;
}

std::vector<FlowTracePoint> run_flow_trace(const Case& c, const StudyConfig& config,
                                           int branch_id, const std::vector<SchemeId>& schemes) {
    const Branch* target = c.find_branch(branch_id);
    if (!target) throw ValidationError("unknown branch " + std::to_string(branch_id));
    std::vector<FlowTracePoint> points;
    for (SchemeId scheme : schemes) {
        SchemeRun run = run_scheme(c, scheme, config);
        if (!run.ok())
            throw std::runtime_error("flow trace: scheme " + scheme_name(scheme) + " failed: " +
                                     (run.error.empty() ? status_name(run.mip.status) : run.error));
        for (int t = 0; t < run.study_case.horizon_hours; ++t) {
            FlowTracePoint p;
            p.scheme = scheme;
            p.t = t;
            p.flow_mw = branch_flow(run.model, run.mip.values, branch_id, t);
            p.corridor_total_mw = 0.0;
            for (const auto& k : run.study_case.branches) {
                bool same = (k.from_bus == target->from_bus && k.to_bus == target->to_bus) ||
                            (k.from_bus == target->to_bus && k.to_bus == target->from_bus);
                if (!same) continue;
                double f = branch_flow(run.model, run.mip.values, k.id, t);
                p.corridor_total_mw += (k.from_bus == target->from_bus) ? f : -f;
            }
            points.push_back(p);
        }
    }
    return points;
}

void write_comparison_csv(const std::string& path, const std::vector<ComparisonRow>& rows) {
    auto out = open_csv(path);
    out << "scheme,total_cost_usd,cost_reduction_pct,avg_congested_lines_per_hour,"
           "solve_time_s,mip_gap,status\n";
    for (const auto& r : rows) {
        std::optional<double> pct;
        if (r.cost_reduction) pct = *r.cost_reduction * 100.0;
        out << scheme_name(r.scheme) << "," << opt_cell(r.operation_cost) << ","
            << opt_cell(pct) << "," << opt_cell(r.avg_congested_per_hour) << ","
            << r.solve_time_s << "," << opt_cell(r.gap) << "," << r.status << "\n";
    }
}

void write_sweep_csv(const std::string& path, const std::vector<SweepPoint>& points) {
    auto out = open_csv(path);
    out << "size_mw,energy_mwh,total_cost_usd,load_payment_usd,status\n";
    for (const auto& p : points)
        out << p.size_mw << "," << p.energy_mwh << "," << opt_cell(p.operation_cost) << ","
            << opt_cell(p.load_payment) << "," << p.status << "\n";
}

void write_flow_trace_csv(const std::string& path, const std::vector<FlowTracePoint>& points) {
    auto out = open_csv(path);
    out << "scheme,hour,flow_mw,corridor_total_mw\n";
    for (const auto& p : points)
        out << scheme_name(p.scheme) << "," << p.t << "," << p.flow_mw << ","
            << p.corridor_total_mw << "\n";
}

void write_lmp_diff_csv(const std::string& path, const LmpMatrix& diff) {
    auto out = open_csv(path);
    out << "bus,hour,price_delta\n";
    for (int bus : diff.bus_ids)
        for (int t = 0; t < diff.horizon; ++t)
            out << bus << "," << t << "," << diff.at(bus, t) << "\n";
}

void write_study_csvs(const StudyResult& result, const StudyConfig& config) {
    if (config.out_dir.empty()) return;
    fs::create_directories(config.out_dir);
    fs::path dir(config.out_dir);

    write_comparison_csv((dir / "comparison.csv").string(), result.rows);

    auto settle = open_csv((dir / "settlement.csv").string());
    settle << "scheme,total_cost,load_payment,reduction\n";
    auto cong = open_csv((dir / "congestion.csv").string());
    cong << "scheme,branch,hour,utilization\n";
    auto lmps = open_csv((dir / "lmp.csv").string());
    lmps << "scheme,bus,hour,price\n";
    auto storage = open_csv((dir / "storage.csv").string());
    storage << "scheme,unit,hour,charge,discharge,energy\n";

    std::optional<double> benchmark_cost;
    for (const auto& row : result.rows)
        if (row.scheme == SchemeId::Scuc && row.operation_cost) benchmark_cost = row.operation_cost;

    for (const auto& row : result.rows) {
        auto it = result.runs.find(row.scheme);
        if (it == result.runs.end() || !it->second.ok()) continue;
        const SchemeRun& run = it->second;
        std::string name = scheme_name(row.scheme);

        if (run.lmp) {
            SettlementReport rep = settlement(run.mip, *run.lmp, run.study_case, benchmark_cost);
            settle << name << "," << rep.total_cost << "," << rep.load_payment << ","
                   << opt_cell(rep.cost_reduction_vs_benchmark) << "\n";
            for (int bus : run.lmp->bus_ids)
                for (int t = 0; t < run.lmp->horizon; ++t)
                    lmps << name << "," << bus << "," << t << "," << run.lmp->at(bus, t) << "\n";
        }
        CongestionReport crep = congestion_stats(run.model, run.mip.values, run.study_case,
                                                 config.binding_tol, config.stress_threshold);
        for (const auto& b : crep.binding_line_hours)
            cong << name << "," << b.branch << "," << b.t << "," << b.utilization << "\n";
        if (scheme_has_storage(row.scheme)) {
            StorageProfile prof = storage_profile(run.model, run.mip.values, run.study_case, 1e-4);
            for (const auto& [unit, series] : prof.units)
                for (int t = 0; t < (int)series.size(); ++t)
                    storage << name << "," << unit << "," << t << "," << series[t].charge_mw << ","
                            << series[t].discharge_mw << "," << series[t].energy_mwh << "\n";
        }
    }

    if (!config.note.empty()) {
        std::ofstream info(dir / "run_info.txt");
        info << config.note << "\n";
    }
}

}  // namespace vts
