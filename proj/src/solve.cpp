#include "vts/solve.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "vts/backend_path.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace vts {

namespace {

std::string backend_script_path(const SolverConfig& cfg) {
    if (!cfg.backend_script.empty()) return cfg.backend_script;
    if (const char* env = std::getenv("VTS_SOLVER_BACKEND")) return env;
    return kDefaultBackendScript;
}

json vars_to_json(const MilpModel& m) {
    json vars = json::array();
    for (const auto& v : m.vars) {
        json jv;
        jv["name"] = v.name;
        jv["lb"] = std::isinf(v.lb) ? json() : json(v.lb);
        jv["ub"] = std::isinf(v.ub) ? json() : json(v.ub);
        jv["integer"] = v.is_integer;
        jv["obj"] = v.obj;
        vars.push_back(std::move(jv));
    }
    return vars;
}

json cons_to_json(const MilpModel& m) {
    json cons = json::array();
    for (const auto& con : m.cons) {
        json jc;
        jc["tag"] = con.tag;
        jc["sense"] = std::string(1, con.sense);
        jc["rhs"] = con.rhs;
        json terms = json::array();
        for (const auto& [col, coef] : con.terms) terms.push_back({col, coef});
        jc["terms"] = std::move(terms);
        cons.push_back(std::move(jc));
    }
    return cons;
}

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() /
               ("vts_solve_" + std::to_string(rd()) + "_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

json run_backend(const std::string& mode, const json& model, const SolverConfig& cfg) {
    if (cfg.backend != "scipy-highs")
        throw SolverError("unknown solver backend: " + cfg.backend);
    std::string script = backend_script_path(cfg);
    if (!fs::exists(script))
        throw SolverError("solver backend script not found: " + script);

    TempDir tmp;
    fs::path in = tmp.path / "model.json";
    fs::path out = tmp.path / "result.json";
    fs::path log = tmp.path / "backend.log";
    {
        std::ofstream os(in);
        os << model.dump();
    }
    std::string cmd = cfg.python + " '" + script + "' " + mode + " '" + in.string() +
                      "' '" + out.string() + "' 2> '" + log.string() + "'";
    int rc = std::system(cmd.c_str());
    if (rc != 0 || !fs::exists(out)) {
        std::stringstream msg;
        msg << "solver backend failed (exit " << rc << ")";
        std::ifstream lf(log);
        std::string line;
        while (std::getline(lf, line)) msg << "\n" << line;
        throw SolverError(msg.str());
    }
    std::ifstream is(out);
    json result;
    is >> result;
    return result;
}

SolveStatus parse_status(const std::string& s) {
    if (s == "optimal") return SolveStatus::Optimal;
    if (s == "gap_limit") return SolveStatus::GapLimit;
    if (s == "time_limit" || s == "time_limit_no_incumbent") return SolveStatus::TimeLimit;
    if (s == "infeasible") return SolveStatus::Infeasible;
    if (s == "unbounded") return SolveStatus::Unbounded;
    return SolveStatus::Error;
}

double value_of(const MilpModel& m, const std::vector<double>& values,
                VarKind kind, int entity, int t) {
    int col = m.column(kind, entity, t);
    if (col >= static_cast<int>(values.size()))
        throw std::out_of_range("solution has no value for column " + std::to_string(col));
    return values[col];
}

}  // namespace

std::string status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::GapLimit: return "gap_limit";
        case SolveStatus::TimeLimit: return "time_limit";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::Error: return "error";
    }
    return "?";
}

bool has_solution(SolveStatus s) {
    return s == SolveStatus::Optimal || s == SolveStatus::GapLimit || s == SolveStatus::TimeLimit;
}

double MipSolution::value(const MilpModel& m, VarKind kind, int entity, int t) const {
    return value_of(m, values, kind, entity, t);
}

double LpSolution::value(const MilpModel& m, VarKind kind, int entity, int t) const {
    return value_of(m, values, kind, entity, t);
}

double LpSolution::dual(const std::string& tag) const {
    auto it = duals.find(tag);
    if (it == duals.end()) throw std::out_of_range("no dual for constraint tag " + tag);
    return it->second;
}

std::string model_to_backend_json(const MilpModel& model, const SolverConfig& config) {
    json j;
    j["vars"] = vars_to_json(model);
    j["cons"] = cons_to_json(model);
    j["options"] = {{"time_limit_s", config.time_limit_s},
                    {"mip_gap", config.mip_gap},
                    {"feasibility_tol", config.feasibility_tol}};
    return j.dump();
}

MipSolution solve_mip(const MilpModel& model, const SolverConfig& config) {
    json j = json::parse(model_to_backend_json(model, config));
    json r = run_backend("solve-mip", j, config);

    MipSolution sol;
    sol.status = parse_status(r.value("status", "error"));
    sol.message = r.value("message", "");
    sol.solve_time_s = r.value("solve_time_s", 0.0);
    if (r.contains("values")) {
        sol.values = r["values"].get<std::vector<double>>();
        sol.objective = r.value("objective", 0.0);
        sol.gap = r["gap"].is_number() ? r["gap"].get<double>() : 0.0;
        sol.best_bound = r["best_bound"].is_number() ? r["best_bound"].get<double>()
                                                     : sol.objective;
        // Terminated at the gap target rather than proven optimal to
        // machine precision.
        if (sol.status == SolveStatus::Optimal && sol.gap > config.feasibility_tol)
            sol.status = SolveStatus::GapLimit;
    }
    return sol;
}

LpSolution solve_lp_relaxed(const MilpModel& model, const SolverConfig& config) {
    json j = json::parse(model_to_backend_json(model, config));
    for (auto& v : j["vars"]) v["integer"] = false;
    json r = run_backend("solve-lp", j, config);

    LpSolution sol;
    sol.status = parse_status(r.value("status", "error"));
    sol.message = r.value("message", "");
    sol.solve_time_s = r.value("solve_time_s", 0.0);
    if (r.contains("values")) {
        sol.values = r["values"].get<std::vector<double>>();
        sol.objective = r.value("objective", 0.0);
        for (const auto& [tag, d] : r["duals"].items()) sol.duals[tag] = d.get<double>();
    }
    return sol;
}

LpSolution resolve_lp_fixed(const MilpModel& model, const MipSolution& mip,
                            const SolverConfig& config) {
    if (!has_solution(mip.status))
        throw SolverError("cannot fix integers: MIP status is " + status_name(mip.status));
    if (mip.values.size() != model.vars.size())
        throw SolverError("MIP solution does not match model dimensions");

    MilpModel fixed = model;
    for (size_t i = 0; i < fixed.vars.size(); ++i) {
        Variable& v = fixed.vars[i];
        if (!v.is_integer) continue;
        // Incumbent binaries sit within 1e-5 of {0,1}; round to nearest.
        double rounded = std::round(mip.values[i]);
        v.lb = v.ub = rounded;
        v.is_integer = false;
    }
    LpSolution sol = solve_lp_relaxed(fixed, config);
    if (sol.status == SolveStatus::Infeasible)
        sol.message = "commitment-fixed LP infeasible (integer rounding pathology): " + sol.message;
    return sol;
}

}  // namespace vts
