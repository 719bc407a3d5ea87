#pragma once

#include <map>
#include <optional>
#include <vector>

#include "vts/case.hpp"
#include "vts/model.hpp"
#include "vts/solve.hpp"

namespace vts {

// Per-bus per-hour marginal prices, $/MWh.
struct LmpMatrix {
    std::vector<int> bus_ids;
    int horizon = 0;
    std::vector<double> values;  // bus-major

    double at(int bus_id, int t) const;
    double& at(int bus_id, int t);
    static LmpMatrix zeros(const std::vector<int>& bus_ids, int horizon);
};

struct BindingLineHour {
    int branch = 0;
    int t = 0;
    double utilization = 0.0;  // |flow| / rating
};

struct CongestionReport {
    std::vector<BindingLineHour> binding_line_hours;
    std::vector<BindingLineHour> stressed_line_hours;  // utilization >= stress threshold
    double avg_congested_per_hour = 0.0;
};

struct SettlementReport {
    double total_cost = 0.0;
    double load_payment = 0.0;
    std::optional<double> cost_reduction_vs_benchmark;  // fraction of benchmark
};

struct StorageHour {
    double charge_mw = 0.0;
    double discharge_mw = 0.0;
    double energy_mwh = 0.0;
};

struct StorageProfile {
    std::map<int, std::vector<StorageHour>> units;
};

// LMP[n][t] = dual of the nodal balance row. With the balance written as
// generation-minus-withdrawal = demand, the dual is already the marginal
// cost of one extra MW of demand.
LmpMatrix compute_lmp(const LpSolution& lp, const Case& c);

double load_payment(const LmpMatrix& lmp, const Case& c);

LmpMatrix lmp_difference(const LmpMatrix& a, const LmpMatrix& b);

// Signed flow on a branch; 0 for an hour where the line is switched out.
double branch_flow(const MilpModel& m, const std::vector<double>& values, int branch_id, int t);

// True if the line is in service (J variable absent counts as in service).
bool branch_in_service(const MilpModel& m, const std::vector<double>& values, int branch_id, int t);

CongestionReport congestion_stats(const MilpModel& m, const std::vector<double>& values,
                                  const Case& c, double binding_tol = 1e-4,
                                  double stress_threshold = 0.70);

SettlementReport settlement(const MipSolution& mip, const LmpMatrix& lmp, const Case& c,
                            std::optional<double> benchmark_cost = std::nullopt);

// Charge/discharge/energy series per storage unit, with the energy
// recurrence re-derived and cross-checked against the solver's E values.
StorageProfile storage_profile(const MilpModel& m, const std::vector<double>& values,
                               const Case& c, double tol_mwh = 1e-6);

}  // namespace vts
