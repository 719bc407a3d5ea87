#include "vts/formulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vts {

namespace {

std::string vname(const char* stem, int entity, int t) {
    return std::string(stem) + "_" + std::to_string(entity) + "_t" + std::to_string(t);
}

double auto_big_m(const Case& c, const BuildOptions& opts) {
    double x_min = kInf;
    for (const auto& k : c.branches) x_min = std::min(x_min, k.reactance);
    return 2.0 * opts.theta_max_rad * c.mva_base / x_min;
}

void add_balance(MilpModel& m, const Case& c) {
    for (const auto& b : c.buses) {
        for (int t = 0; t < c.horizon_hours; ++t) {
            LinearConstraint row;
            row.sense = '=';
            row.rhs = demand(c, b.id, t) - solar_injection(c, b.id, t);
            row.tag = MilpModel::tag_of("balance", b.id, t);
            for (const auto& g : c.generators)
                if (g.bus == b.id) row.terms.push_back({m.column(VarKind::GenP, g.id, t), 1.0});
            for (const auto& k : c.branches) {
                if (k.to_bus == b.id) row.terms.push_back({m.column(VarKind::LineFlow, k.id, t), 1.0});
                if (k.from_bus == b.id) row.terms.push_back({m.column(VarKind::LineFlow, k.id, t), -1.0});
            }
            m.add_con(std::move(row));
        }
    }
}

// Flow definition and thermal limit for one branch with fixed topology.
void add_fixed_flow(MilpModel& m, const Case& c, const Branch& k) {
    double b_over_x = c.mva_base / k.reactance;
    for (int t = 0; t < c.horizon_hours; ++t) {
        int f = m.column(VarKind::LineFlow, k.id, t);
        int th_from = m.column(VarKind::BusAngle, k.from_bus, t);
        int th_to = m.column(VarKind::BusAngle, k.to_bus, t);
        m.add_con({{{f, 1.0}, {th_from, -b_over_x}, {th_to, b_over_x}},
                   '=', 0.0, MilpModel::tag_of("flowdef", k.id, t)});
        m.add_con({{{f, 1.0}}, '<', k.rating_mw, MilpModel::tag_of("flowhi", k.id, t)});
        m.add_con({{{f, 1.0}}, '>', -k.rating_mw, MilpModel::tag_of("flowlo", k.id, t)});
    }
}

}  // namespace

void register_variables(MilpModel& m, const Case& c, const BuildOptions& opts) {
    const int T = c.horizon_hours;
    for (const auto& g : c.generators) {
        for (int t = 0; t < T; ++t) {
            m.add_var({VarKind::CommitU, g.id, t}, vname("u", g.id, t), 0, 1, true);
            m.add_var({VarKind::StartV, g.id, t}, vname("v", g.id, t), 0, 1, true);
            m.add_var({VarKind::GenP, g.id, t}, vname("P", g.id, t), 0, g.p_max_mw, false);
        }
    }
    for (const auto& b : c.buses) {
        double lo = -opts.theta_max_rad, hi = opts.theta_max_rad;
        if (b.id == c.reference_bus) lo = hi = 0.0;
        for (int t = 0; t < T; ++t)
            m.add_var({VarKind::BusAngle, b.id, t}, vname("th", b.id, t), lo, hi, false);
    }
    for (const auto& k : c.branches)
        for (int t = 0; t < T; ++t)
            m.add_var({VarKind::LineFlow, k.id, t}, vname("F", k.id, t),
                      -k.rating_mw, k.rating_mw, false);
    if (scheme_has_storage(m.scheme)) {
        for (const auto& e : c.storage_units) {
            for (int t = 0; t < T; ++t) {
                m.add_var({VarKind::ChargeP, e.id, t}, vname("Pc", e.id, t), 0, e.p_charge_max_mw, false);
                m.add_var({VarKind::DischargeP, e.id, t}, vname("Pd", e.id, t), 0, e.p_discharge_max_mw, false);
                // Energy bounds carry the storage energy-window constraint.
                m.add_var({VarKind::Energy, e.id, t}, vname("E", e.id, t), e.e_min_mwh, e.e_max_mwh, false);
                m.add_var({VarKind::ChargeU, e.id, t}, vname("uc", e.id, t), 0, 1, true);
                m.add_var({VarKind::DischargeU, e.id, t}, vname("ud", e.id, t), 0, 1, true);
            }
        }
    }
    if (scheme_has_nr(m.scheme)) {
        for (const auto& k : c.branches)
            if (k.switchable)
                for (int t = 0; t < T; ++t)
                    m.add_var({VarKind::LineClosed, k.id, t}, vname("J", k.id, t), 0, 1, true);
    }
}

void add_objective(MilpModel& m, const Case& c) {
    for (const auto& g : c.generators) {
        for (int t = 0; t < c.horizon_hours; ++t) {
            m.vars[m.column(VarKind::GenP, g.id, t)].obj = g.cost_energy * c.interval_hours;
            m.vars[m.column(VarKind::CommitU, g.id, t)].obj = g.cost_noload;
            m.vars[m.column(VarKind::StartV, g.id, t)].obj = g.cost_startup;
        }
    }
}

void add_commitment_logic(MilpModel& m, const Case& c, const BuildOptions& opts) {
    double u_init = opts.initial_online ? 1.0 : 0.0;
    for (const auto& g : c.generators) {
        for (int t = 0; t < c.horizon_hours; ++t) {
            int u = m.column(VarKind::CommitU, g.id, t);
            int v = m.column(VarKind::StartV, g.id, t);
            LinearConstraint row;
            row.sense = '<';
            row.tag = MilpModel::tag_of("start", g.id, t);
            row.terms = {{u, 1.0}, {v, -1.0}};
            if (t == 0) {
                row.rhs = u_init;
            } else {
                row.rhs = 0.0;
                row.terms.push_back({m.column(VarKind::CommitU, g.id, t - 1), -1.0});
            }
            m.add_con(std::move(row));
        }
    }
}

void add_generator_limits(MilpModel& m, const Case& c, const BuildOptions& opts) {
    double p_init = opts.initial_online ? opts.initial_output_mw : 0.0;
    for (const auto& g : c.generators) {
        for (int t = 0; t < c.horizon_hours; ++t) {
            int u = m.column(VarKind::CommitU, g.id, t);
            int p = m.column(VarKind::GenP, g.id, t);
            m.add_con({{{p, 1.0}, {u, -g.p_min_mw}}, '>', 0.0, MilpModel::tag_of("pmin", g.id, t)});
            m.add_con({{{p, 1.0}, {u, -g.p_max_mw}}, '<', 0.0, MilpModel::tag_of("pmax", g.id, t)});
            LinearConstraint up, dn;
            up.sense = dn.sense = '<';
            up.tag = MilpModel::tag_of("rampup", g.id, t);
            dn.tag = MilpModel::tag_of("rampdn", g.id, t);
            up.terms = {{p, 1.0}};
            dn.terms = {{p, -1.0}};
            if (t == 0) {
                up.rhs = g.ramp_hourly_mw + p_init;
                dn.rhs = g.ramp_hourly_mw - p_init;
            } else {
                int prev = m.column(VarKind::GenP, g.id, t - 1);
                up.terms.push_back({prev, -1.0});
                dn.terms.push_back({prev, 1.0});
                up.rhs = dn.rhs = g.ramp_hourly_mw;
            }
            m.add_con(std::move(up));
            m.add_con(std::move(dn));
        }
    }
}

void add_dc_network(MilpModel& m, const Case& c) {
    for (const auto& k : c.branches) add_fixed_flow(m, c, k);
    add_balance(m, c);
}

void add_reconfiguration(MilpModel& m, const Case& c, const BuildOptions&) {
    if (m.big_m <= 0) throw ValidationError("reconfiguration requires a positive big_m");
    const int T = c.horizon_hours;
    std::vector<const Branch*> switchable;
    for (const auto& k : c.branches) {
        if (k.switchable)
            switchable.push_back(&k);
        else
            add_fixed_flow(m, c, k);  // non-switchable lines keep fixed-topology physics
    }
    for (const Branch* kp : switchable) {
        const Branch& k = *kp;
        double b_over_x = c.mva_base / k.reactance;
        for (int t = 0; t < T; ++t) {
            int f = m.column(VarKind::LineFlow, k.id, t);
            int j = m.column(VarKind::LineClosed, k.id, t);
            int th_from = m.column(VarKind::BusAngle, k.from_bus, t);
            int th_to = m.column(VarKind::BusAngle, k.to_bus, t);
            // |F - (theta_from - theta_to)/x| <= M (1 - J)
            m.add_con({{{f, 1.0}, {th_from, -b_over_x}, {th_to, b_over_x}, {j, m.big_m}},
                       '<', m.big_m, MilpModel::tag_of("nrhi", k.id, t)});
            m.add_con({{{f, -1.0}, {th_from, b_over_x}, {th_to, -b_over_x}, {j, m.big_m}},
                       '<', m.big_m, MilpModel::tag_of("nrlo", k.id, t)});
            // |F| <= J * rating
            m.add_con({{{f, 1.0}, {j, -k.rating_mw}}, '<', 0.0, MilpModel::tag_of("nrcaphi", k.id, t)});
            m.add_con({{{f, -1.0}, {j, -k.rating_mw}}, '<', 0.0, MilpModel::tag_of("nrcaplo", k.id, t)});
        }
    }
    // At most one switchable line out of service per hour.
    for (int t = 0; t < T; ++t) {
        LinearConstraint row;
        row.sense = '>';
        row.rhs = static_cast<double>(switchable.size()) - 1.0;
        row.tag = MilpModel::tag_of("nrcard", 0, t);
        for (const Branch* kp : switchable)
            row.terms.push_back({m.column(VarKind::LineClosed, kp->id, t), 1.0});
        m.add_con(std::move(row));
    }
    add_balance(m, c);
}

void add_storage(MilpModel& m, const Case& c, const BuildOptions& opts) {
    if (c.storage_units.empty())
        throw ValidationError("scheme " + scheme_name(m.scheme) + " requires storage units");
    const double dt = c.interval_hours;
    for (const auto& e : c.storage_units) {
        for (int t = 0; t < c.horizon_hours; ++t) {
            int pc = m.column(VarKind::ChargeP, e.id, t);
            int pd = m.column(VarKind::DischargeP, e.id, t);
            int en = m.column(VarKind::Energy, e.id, t);
            int uc = m.column(VarKind::ChargeU, e.id, t);
            int ud = m.column(VarKind::DischargeU, e.id, t);
            m.add_con({{{uc, 1.0}, {ud, 1.0}}, '<', 1.0, MilpModel::tag_of("xmode", e.id, t)});
            m.add_con({{{pc, 1.0}, {uc, -e.p_charge_max_mw}}, '<', 0.0,
                       MilpModel::tag_of("chargecap", e.id, t)});
            m.add_con({{{pd, 1.0}, {ud, -e.p_discharge_max_mw}}, '<', 0.0,
                       MilpModel::tag_of("dischargecap", e.id, t)});
            LinearConstraint soc;
            soc.sense = '=';
            soc.tag = MilpModel::tag_of("soc", e.id, t);
            soc.terms = {{en, 1.0}, {pc, -e.eta_charge * dt}, {pd, dt / e.eta_discharge}};
            if (t == 0) {
                soc.rhs = e.e_initial_mwh;
            } else {
                soc.rhs = 0.0;
                soc.terms.push_back({m.column(VarKind::Energy, e.id, t - 1), -1.0});
            }
            m.add_con(std::move(soc));
        }
        if (opts.cyclic_storage) {
            int en = m.column(VarKind::Energy, e.id, c.horizon_hours - 1);
            m.add_con({{{en, 1.0}}, '>', e.e_initial_mwh, MilpModel::tag_of("cyc", e.id, 0)});
        }
        // Charging and discharging enter the nodal balance at the unit's bus.
        for (int t = 0; t < c.horizon_hours; ++t) {
            int row = m.con_row(MilpModel::tag_of("balance", e.bus, t));
            if (row < 0) throw std::logic_error("storage added before nodal balance");
            m.cons[row].terms.push_back({m.column(VarKind::ChargeP, e.id, t), -1.0});
            m.cons[row].terms.push_back({m.column(VarKind::DischargeP, e.id, t), 1.0});
        }
    }
}

void add_vt_coupling(MilpModel& m, const Case& c) {
    if (c.vt_pairs.empty())
        throw ValidationError("scheme " + scheme_name(m.scheme) + " requires vt_pairs");
    for (const auto& p : c.vt_pairs) {
        for (int t = 0; t < c.horizon_hours; ++t) {
            int uc_a = m.find(VarKind::ChargeU, p.storage_a, t);
            int uc_b = m.find(VarKind::ChargeU, p.storage_b, t);
            if (uc_a < 0 || uc_b < 0)
                throw ValidationError("vt_pair " + std::to_string(p.id) +
                                      " references storage absent from the model");
            m.add_con({{{uc_a, 1.0}, {uc_b, 1.0}}, '<', 1.0, MilpModel::tag_of("vtc", p.id, t)});
            m.add_con({{{m.column(VarKind::DischargeU, p.storage_a, t), 1.0},
                        {m.column(VarKind::DischargeU, p.storage_b, t), 1.0}},
                       '<', 1.0, MilpModel::tag_of("vtd", p.id, t)});
        }
    }
}

MilpModel build(const Case& c, SchemeId scheme, const BuildOptions& opts) {
    validate(c);
    MilpModel m;
    m.scheme = scheme;
    m.big_m = opts.big_m > 0 ? opts.big_m : auto_big_m(c, opts);

    register_variables(m, c, opts);
    add_objective(m, c);
    add_commitment_logic(m, c, opts);
    add_generator_limits(m, c, opts);
    if (scheme_has_nr(scheme))
        add_reconfiguration(m, c, opts);
    else
        add_dc_network(m, c);
    if (scheme_has_storage(scheme)) add_storage(m, c, opts);
    if (scheme_has_vt(scheme)) add_vt_coupling(m, c);
    return m;
}

}  // namespace vts
