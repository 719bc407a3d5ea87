#include "vts/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vts {

namespace {

int bus_row(const LmpMatrix& m, int bus_id) {
    auto it = std::find(m.bus_ids.begin(), m.bus_ids.end(), bus_id);
    if (it == m.bus_ids.end()) throw std::out_of_range("no LMP row for bus " + std::to_string(bus_id));
    return static_cast<int>(it - m.bus_ids.begin());
}

}  // namespace

double LmpMatrix::at(int bus_id, int t) const {
    if (t < 0 || t >= horizon) throw std::out_of_range("hour out of range");
    return values[bus_row(*this, bus_id) * horizon + t];
}

double& LmpMatrix::at(int bus_id, int t) {
    if (t < 0 || t >= horizon) throw std::out_of_range("hour out of range");
    return values[bus_row(*this, bus_id) * horizon + t];
}

LmpMatrix LmpMatrix::zeros(const std::vector<int>& bus_ids, int horizon) {
    LmpMatrix m;
    m.bus_ids = bus_ids;
    m.horizon = horizon;
    m.values.assign(bus_ids.size() * horizon, 0.0);
    return m;
}

LmpMatrix compute_lmp(const LpSolution& lp, const Case& c) {
    std::vector<int> ids;
    for (const auto& b : c.buses) ids.push_back(b.id);
    LmpMatrix m = LmpMatrix::zeros(ids, c.horizon_hours);
    for (const auto& b : c.buses) {
        for (int t = 0; t < c.horizon_hours; ++t) {
            double d = lp.dual(MilpModel::tag_of("balance", b.id, t));
            if (!std::isfinite(d)) throw std::runtime_error("non-finite LMP at bus " + std::to_string(b.id));
            m.at(b.id, t) = d;
        }
    }
    return m;
}

double load_payment(const LmpMatrix& lmp, const Case& c) {
    if (lmp.horizon != c.horizon_hours) throw std::invalid_argument("LMP horizon mismatch");
    double payment = 0.0;
    for (const auto& b : c.buses)
        for (int t = 0; t < c.horizon_hours; ++t) payment += demand(c, b.id, t) * lmp.at(b.id, t);
    return payment;
}

LmpMatrix lmp_difference(const LmpMatrix& a, const LmpMatrix& b) {
    if (a.bus_ids != b.bus_ids || a.horizon != b.horizon)
        throw std::invalid_argument("LMP matrix dimension mismatch");
    LmpMatrix out = a;
    for (size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
    return out;
}

bool branch_in_service(const MilpModel& m, const std::vector<double>& values, int branch_id, int t) {
    int j = m.find(VarKind::LineClosed, branch_id, t);
    return j < 0 || values[j] > 0.5;
}

double branch_flow(const MilpModel& m, const std::vector<double>& values, int branch_id, int t) {
    return values[m.column(VarKind::LineFlow, branch_id, t)];
}

CongestionReport congestion_stats(const MilpModel& m, const std::vector<double>& values,
                                  const Case& c, double binding_tol, double stress_threshold) {
    CongestionReport rep;
    for (const auto& k : c.branches) {
        for (int t = 0; t < c.horizon_hours; ++t) {
            if (!branch_in_service(m, values, k.id, t)) continue;
            double util = std::abs(branch_flow(m, values, k.id, t)) / k.rating_mw;
            if (util >= 1.0 - binding_tol) rep.binding_line_hours.push_back({k.id, t, util});
            if (util >= stress_threshold) rep.stressed_line_hours.push_back({k.id, t, util});
        }
    }
    rep.avg_congested_per_hour =
        static_cast<double>(rep.binding_line_hours.size()) / c.horizon_hours;
    return rep;
}

SettlementReport settlement(const MipSolution& mip, const LmpMatrix& lmp, const Case& c,
                            std::optional<double> benchmark_cost) {
    SettlementReport rep;
    rep.total_cost = mip.objective;
    rep.load_payment = load_payment(lmp, c);
    if (benchmark_cost) {
        if (*benchmark_cost <= 0) throw std::invalid_argument("benchmark cost must be positive");
        rep.cost_reduction_vs_benchmark = 1.0 - rep.total_cost / *benchmark_cost;
    }
    return rep;
}

StorageProfile storage_profile(const MilpModel& m, const std::vector<double>& values,
                               const Case& c, double tol_mwh) {
    StorageProfile prof;
    const double dt = c.interval_hours;
    for (const auto& e : c.storage_units) {
        std::vector<StorageHour> series(c.horizon_hours);
        double prev = e.e_initial_mwh;
        for (int t = 0; t < c.horizon_hours; ++t) {
            StorageHour h;
            h.charge_mw = values[m.column(VarKind::ChargeP, e.id, t)];
            h.discharge_mw = values[m.column(VarKind::DischargeP, e.id, t)];
            h.energy_mwh = values[m.column(VarKind::Energy, e.id, t)];
            double expected =
                prev + (e.eta_charge * h.charge_mw - h.discharge_mw / e.eta_discharge) * dt;
            if (std::abs(expected - h.energy_mwh) > tol_mwh)
                throw std::runtime_error(
                    "storage " + std::to_string(e.id) + " energy recurrence mismatch at t=" +
                    std::to_string(t) + ": expected " + std::to_string(expected) + " got " +
                    std::to_string(h.energy_mwh));
            prev = h.energy_mwh;
            series[t] = h;
        }
        prof.units[e.id] = std::move(series);
    }
    return prof;
}

}  // namespace vts
