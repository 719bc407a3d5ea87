#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vts/model.hpp"

namespace vts {

class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

struct SolverConfig {
    double time_limit_s = 3600.0;
    double mip_gap = 1e-4;
    int threads_hint = 0;
    double feasibility_tol = 1e-6;
    std::string backend = "scipy-highs";
    std::string backend_script;  // empty -> VTS_SOLVER_BACKEND env, then built-in default
    std::string python = "python3";
};

enum class SolveStatus { Optimal, GapLimit, TimeLimit, Infeasible, Unbounded, Error };

std::string status_name(SolveStatus s);
bool has_solution(SolveStatus s);

struct MipSolution {
    SolveStatus status = SolveStatus::Error;
    double objective = 0.0;
    double best_bound = 0.0;
    double gap = 0.0;
    double solve_time_s = 0.0;
    std::vector<double> values;  // per model column
    std::string message;

    double value(const MilpModel& m, VarKind kind, int entity, int t) const;
};

struct LpSolution {
    SolveStatus status = SolveStatus::Error;
    double objective = 0.0;
    double solve_time_s = 0.0;
    std::vector<double> values;
    std::map<std::string, double> duals;  // tag -> d(objective)/d(rhs)
    std::string message;

    double value(const MilpModel& m, VarKind kind, int entity, int t) const;
    double dual(const std::string& tag) const;
};

MipSolution solve_mip(const MilpModel& model, const SolverConfig& config = {});

// Pins every integer variable to its rounded MIP value and re-solves the
// continuous LP to recover duals (restricted-LP pricing).
LpSolution resolve_lp_fixed(const MilpModel& model, const MipSolution& mip,
                            const SolverConfig& config = {});

// Solves the model as a pure LP (integrality dropped), returning duals.
LpSolution solve_lp_relaxed(const MilpModel& model, const SolverConfig& config = {});

// Interchange JSON consumed by the backend bridge.
std::string model_to_backend_json(const MilpModel& model, const SolverConfig& config);

}  // namespace vts
