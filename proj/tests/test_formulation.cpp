#include <doctest.h>

#include <map>
#include <set>
#include <string>

#include "micro_cases.hpp"
#include "vts/check.hpp"
#include "vts/formulation.hpp"
#include "vts/mps.hpp"
#include "vts/rts.hpp"

using namespace vts;

namespace {

std::set<std::string> tag_families(const MilpModel& m) {
    std::set<std::string> fams;
    for (const auto& con : m.cons) fams.insert(tag_family(con.tag));
    return fams;
}

std::map<std::string, int> family_counts(const MilpModel& m) {
    std::map<std::string, int> counts;
    for (const auto& con : m.cons) ++counts[tag_family(con.tag)];
    return counts;
}

// Sets one variable's value in a zero vector and reports the row violation.
double row_violation(const MilpModel& m, const std::string& tag,
                     const std::map<std::pair<VarKind, std::pair<int, int>>, double>& point) {
    std::vector<double> values(m.vars.size(), 0.0);
    for (const auto& [key, v] : point) values[m.column(key.first, key.second.first, key.second.second)] = v;
    const LinearConstraint* con = m.find_con(tag);
    REQUIRE(con != nullptr);
    return constraint_violation(*con, values);
}

}  // namespace

TEST_CASE("smallest instance carries exactly the base constraint families") {
    Case c = testing::single_bus_case(1);
    MilpModel m = build(c, SchemeId::Scuc);
    // u, v, P for the unit plus the (fixed) reference angle.
    CHECK(m.vars.size() == 4);
    CHECK(tag_families(m) ==
          std::set<std::string>{"start", "pmin", "pmax", "rampup", "rampdn", "balance"});
    auto counts = family_counts(m);
    CHECK(counts["balance"] == 1);
    CHECK(counts["start"] == 1);

    SUBCASE("binaries are marked integer with unit bounds") {
        for (const auto& v : m.vars)
            if (v.is_integer) {
                CHECK(v.lb == 0.0);
                CHECK(v.ub == 1.0);
            }
        CHECK(m.vars[m.column(VarKind::CommitU, 1, 0)].is_integer);
        CHECK(m.vars[m.column(VarKind::StartV, 1, 0)].is_integer);
        CHECK_FALSE(m.vars[m.column(VarKind::GenP, 1, 0)].is_integer);
    }
    SUBCASE("reference bus angle is pinned to zero") {
        const Variable& th = m.vars[m.column(VarKind::BusAngle, 1, 0)];
        CHECK(th.lb == 0.0);
        CHECK(th.ub == 0.0);
    }
}

TEST_CASE("objective transcribes energy, no-load and startup costs") {
    Case c = testing::single_bus_case(1);
    MilpModel m = build(c, SchemeId::Scuc);
    CHECK(m.vars[m.column(VarKind::GenP, 1, 0)].obj == doctest::Approx(20.0));
    CHECK(m.vars[m.column(VarKind::CommitU, 1, 0)].obj == doctest::Approx(100.0));
    CHECK(m.vars[m.column(VarKind::StartV, 1, 0)].obj == doctest::Approx(500.0));

    SUBCASE("zero-cost generator contributes zero coefficients") {
        Case z = c;
        z.generators[0].cost_energy = 0.0;
        z.generators[0].cost_noload = 0.0;
        z.generators[0].cost_startup = 0.0;
        MilpModel mz = build(z, SchemeId::Scuc);
        for (const auto& v : mz.vars) CHECK(v.obj == 0.0);
    }
    SUBCASE("two generators over two hours give 12 objective terms") {
        Case c2 = testing::three_bus_case();
        MilpModel m2 = build(c2, SchemeId::Scuc);
        int nonzero = 0;
        for (const auto& v : m2.vars)
            if (v.obj != 0.0) ++nonzero;
        CHECK(nonzero == 12);
    }
    SUBCASE("energy cost scales with the interval length") {
        Case h = c;
        h.interval_hours = 0.5;
        MilpModel mh = build(h, SchemeId::Scuc);
        CHECK(mh.vars[mh.column(VarKind::GenP, 1, 0)].obj == doctest::Approx(10.0));
    }
}

TEST_CASE("commitment logic links status and startup") {
    Case c = testing::single_bus_case(3);
    MilpModel m = build(c, SchemeId::Scuc);
    // Row shape: u_t - v_t - u_{t-1} <= 0, with the t=0 history on the rhs.
    const LinearConstraint* first = m.find_con("start_1_0");
    REQUIRE(first != nullptr);
    CHECK(first->sense == '<');
    CHECK(first->rhs == 0.0);  // offline history

    SUBCASE("a 0 to 1 transition forces a startup") {
        // u_1 = 1, u_0 = 0, v_1 = 0 violates the hour-1 row by exactly 1.
        CHECK(row_violation(m, "start_1_1",
                            {{{VarKind::CommitU, {1, 1}}, 1.0}}) == doctest::Approx(1.0));
        // Raising v_1 to 1 restores feasibility.
        CHECK(row_violation(m, "start_1_1",
                            {{{VarKind::CommitU, {1, 1}}, 1.0},
                             {{VarKind::StartV, {1, 1}}, 1.0}}) <= 0.0);
    }
    SUBCASE("staying online needs no startup") {
        CHECK(row_violation(m, "start_1_1",
                            {{{VarKind::CommitU, {1, 0}}, 1.0},
                             {{VarKind::CommitU, {1, 1}}, 1.0}}) <= 0.0);
    }
    SUBCASE("an online initial condition moves to the hour-0 rhs") {
        BuildOptions opts;
        opts.initial_online = true;
        MilpModel mo = build(c, SchemeId::Scuc, opts);
        CHECK(mo.find_con("start_1_0")->rhs == doctest::Approx(1.0));
    }
}

TEST_CASE("generator limits couple output to status and ramping") {
    Case c = testing::single_bus_case(2);
    c.generators[0].ramp_hourly_mw = 50.0;
    MilpModel m = build(c, SchemeId::Scuc);

    SUBCASE("offline unit cannot produce") {
        CHECK(row_violation(m, "pmax_1_0", {{{VarKind::GenP, {1, 0}}, 10.0}}) ==
              doctest::Approx(10.0));
    }
    SUBCASE("online unit is confined to its output window") {
        CHECK(row_violation(m, "pmin_1_0",
                            {{{VarKind::CommitU, {1, 0}}, 1.0},
                             {{VarKind::GenP, {1, 0}}, 10.0}}) == doctest::Approx(10.0));
        CHECK(row_violation(m, "pmax_1_0",
                            {{{VarKind::CommitU, {1, 0}}, 1.0},
                             {{VarKind::GenP, {1, 0}}, 60.0}}) <= 0.0);
    }
    SUBCASE("ramp rows bound the hour-to-hour change") {
        const LinearConstraint* up = m.find_con("rampup_1_1");
        REQUIRE(up != nullptr);
        CHECK(up->rhs == doctest::Approx(50.0));
        // From 200... the micro unit caps at 100; use 60 -> 111 exceeds by 1.
        CHECK(row_violation(m, "rampup_1_1",
                            {{{VarKind::GenP, {1, 0}}, 60.0},
                             {{VarKind::GenP, {1, 1}}, 111.0}}) == doctest::Approx(1.0));
        CHECK(row_violation(m, "rampdn_1_1",
                            {{{VarKind::GenP, {1, 0}}, 60.0},
                             {{VarKind::GenP, {1, 1}}, 9.0}}) == doctest::Approx(1.0));
        CHECK(row_violation(m, "rampup_1_1",
                            {{{VarKind::GenP, {1, 0}}, 60.0},
                             {{VarKind::GenP, {1, 1}}, 110.0}}) <= 0.0);
    }
    SUBCASE("hour-0 ramp uses the configured initial output") {
        BuildOptions opts;
        opts.initial_online = true;
        opts.initial_output_mw = 80.0;
        MilpModel mo = build(c, SchemeId::Scuc, opts);
        CHECK(mo.find_con("rampup_1_0")->rhs == doctest::Approx(130.0));
        CHECK(mo.find_con("rampdn_1_0")->rhs == doctest::Approx(-30.0));
    }
}

TEST_CASE("flow definition implements the linearized line equation") {
    Case c = testing::two_bus_case();
    MilpModel m = build(c, SchemeId::Scuc);
    // x = 0.1 pu on a 100 MVA base: a 0.05 rad angle difference carries 50 MW.
    CHECK(row_violation(m, "flowdef_1_0",
                        {{{VarKind::BusAngle, {2, 0}}, -0.05},
                         {{VarKind::LineFlow, {1, 0}}, 50.0}}) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(row_violation(m, "flowdef_1_0",
                        {{{VarKind::BusAngle, {2, 0}}, -0.05},
                         {{VarKind::LineFlow, {1, 0}}, 49.0}}) != doctest::Approx(0.0).epsilon(1e-9));
    const LinearConstraint* hi = m.find_con("flowhi_1_0");
    REQUIRE(hi != nullptr);
    CHECK(hi->rhs == doctest::Approx(100.0));
    CHECK(m.find_con("flowlo_1_0")->rhs == doctest::Approx(-100.0));
}

TEST_CASE("balance rows put demand net of solar on the right-hand side") {
    Case c = testing::storage_micro_case();
    MilpModel m = build(c, SchemeId::Scuc);  // storage stripped from the model family set
    CHECK(m.find_con("balance_1_0")->rhs == doctest::Approx(50.0 - 100.0));
    CHECK(m.find_con("balance_1_1")->rhs == doctest::Approx(50.0));
}

TEST_CASE("scheme constraint-family census matches the model matrix") {
    Case c = build_modified_rts_case();
    const std::set<std::string> base = {"start", "pmin",   "pmax",   "rampup", "rampdn",
                                        "flowdef", "flowhi", "flowlo", "balance"};
    const std::set<std::string> storage = {"xmode", "chargecap", "dischargecap", "soc"};
    // The bundled system keeps fixed physics on the non-switchable tie line,
    // so switched models still carry a flowdef/flowhi/flowlo block for it.
    const std::set<std::string> nr = {"start",  "pmin", "pmax",    "rampup",  "rampdn",
                                      "flowdef", "flowhi", "flowlo",
                                      "nrhi",   "nrlo", "nrcaphi", "nrcaplo", "nrcard",
                                      "balance"};

    auto with = [](std::set<std::string> a, const std::set<std::string>& b) {
        a.insert(b.begin(), b.end());
        return a;
    };

    Case no_storage = c;
    no_storage.storage_units.clear();
    no_storage.vt_pairs.clear();

    CHECK(tag_families(build(no_storage, SchemeId::Scuc)) == base);
    CHECK(tag_families(build(add_parallel_line(no_storage, 19), SchemeId::ScucPt)) == base);
    CHECK(tag_families(build(c, SchemeId::ScucBess)) == with(base, storage));
    CHECK(tag_families(build(c, SchemeId::ScucVt)) ==
          with(with(base, storage), {"vtc", "vtd"}));
    CHECK(tag_families(build(no_storage, SchemeId::ScucNr)) == nr);
    CHECK(tag_families(build(c, SchemeId::ScucBessNr)) == with(nr, storage));
    CHECK(tag_families(build(c, SchemeId::ScucVtNr)) ==
          with(with(nr, storage), {"vtc", "vtd"}));

    SUBCASE("every scheme has one balance row per bus and hour") {
        for (SchemeId s : all_schemes()) {
            Case sc = scheme_has_storage(s) ? c : no_storage;
            if (s == SchemeId::ScucPt) sc = add_parallel_line(no_storage, 19);
            CHECK(family_counts(build(sc, s))["balance"] == 24 * 24);
        }
    }
}

TEST_CASE("virtual-line coupling rows pair the endpoint units") {
    Case c = build_modified_rts_case();
    MilpModel m = build(c, SchemeId::ScucVt);
    for (int t = 0; t < 24; ++t) {
        const LinearConstraint* vc = m.find_con(MilpModel::tag_of("vtc", 1, t));
        const LinearConstraint* vd = m.find_con(MilpModel::tag_of("vtd", 1, t));
        REQUIRE(vc != nullptr);
        REQUIRE(vd != nullptr);
        CHECK(vc->sense == '<');
        CHECK(vc->rhs == 1.0);
        REQUIRE(vc->terms.size() == 2);
        std::set<int> charge_cols = {m.column(VarKind::ChargeU, 1, t),
                                     m.column(VarKind::ChargeU, 2, t)};
        CHECK(charge_cols == std::set<int>{vc->terms[0].first, vc->terms[1].first});
    }

    SUBCASE("simultaneous charging violates the pair row") {
        std::vector<double> values(m.vars.size(), 0.0);
        values[m.column(VarKind::ChargeU, 1, 5)] = 1.0;
        values[m.column(VarKind::ChargeU, 2, 5)] = 1.0;
        CHECK(constraint_violation(*m.find_con("vtc_1_5"), values) == doctest::Approx(1.0));
        // One side charging while the other discharges is allowed.
        values[m.column(VarKind::ChargeU, 2, 5)] = 0.0;
        values[m.column(VarKind::DischargeU, 2, 5)] = 1.0;
        CHECK(constraint_violation(*m.find_con("vtc_1_5"), values) <= 0.0);
        CHECK(constraint_violation(*m.find_con("vtd_1_5"), values) <= 0.0);
    }
}

TEST_CASE("storage rows implement the charging physics") {
    Case c = testing::storage_micro_case();
    MilpModel m = build(c, SchemeId::ScucBess);

    SUBCASE("mutual exclusion of charge and discharge modes") {
        std::vector<double> values(m.vars.size(), 0.0);
        values[m.column(VarKind::ChargeU, 1, 0)] = 1.0;
        values[m.column(VarKind::DischargeU, 1, 0)] = 1.0;
        CHECK(constraint_violation(*m.find_con("xmode_1_0"), values) == doctest::Approx(1.0));
    }
    SUBCASE("power caps gate on the mode binaries") {
        std::vector<double> values(m.vars.size(), 0.0);
        values[m.column(VarKind::ChargeP, 1, 0)] = 30.0;
        CHECK(constraint_violation(*m.find_con("chargecap_1_0"), values) == doctest::Approx(30.0));
        values[m.column(VarKind::ChargeU, 1, 0)] = 1.0;
        CHECK(constraint_violation(*m.find_con("chargecap_1_0"), values) <= 0.0);
    }
    SUBCASE("energy recurrence: 400 MWh plus a 200 MW hour at 95% is 590 MWh") {
        Case big = c;
        big.storage_units[0].e_max_mwh = 800.0;
        big.storage_units[0].p_charge_max_mw = 200.0;
        big.storage_units[0].p_discharge_max_mw = 200.0;
        big.storage_units[0].e_initial_mwh = 400.0;
        MilpModel mb = build(big, SchemeId::ScucBess);
        std::vector<double> values(mb.vars.size(), 0.0);
        values[mb.column(VarKind::Energy, 1, 0)] = 590.0;
        values[mb.column(VarKind::ChargeP, 1, 0)] = 200.0;
        CHECK(constraint_violation(*mb.find_con("soc_1_0"), values) ==
              doctest::Approx(0.0).epsilon(1e-9));
    }
    SUBCASE("energy window is carried on the variable bounds") {
        const Variable& e = m.vars[m.column(VarKind::Energy, 1, 1)];
        CHECK(e.lb == doctest::Approx(0.0));
        CHECK(e.ub == doctest::Approx(100.0));
    }
    SUBCASE("storage power enters the balance at its bus") {
        const LinearConstraint* bal = m.find_con("balance_1_0");
        double pc_coef = 0.0, pd_coef = 0.0;
        for (const auto& [col, coef] : bal->terms) {
            if (col == m.column(VarKind::ChargeP, 1, 0)) pc_coef = coef;
            if (col == m.column(VarKind::DischargeP, 1, 0)) pd_coef = coef;
        }
        CHECK(pc_coef == doctest::Approx(-1.0));
        CHECK(pd_coef == doctest::Approx(1.0));
    }
    SUBCASE("optional cyclic row anchors the final energy level") {
        BuildOptions opts;
        opts.cyclic_storage = true;
        MilpModel mc = build(c, SchemeId::ScucBess, opts);
        const LinearConstraint* cyc = mc.find_con("cyc_1_0");
        REQUIRE(cyc != nullptr);
        CHECK(cyc->sense == '>');
        CHECK(cyc->rhs == doctest::Approx(0.0));
        CHECK(m.find_con("cyc_1_0") == nullptr);
    }
}

TEST_CASE("reconfiguration rows switch per line and hour") {
    Case c = build_modified_rts_case();
    Case no_storage = c;
    no_storage.storage_units.clear();
    no_storage.vt_pairs.clear();
    MilpModel m = build(no_storage, SchemeId::ScucNr);
    int switchable = 0;
    for (const auto& k : c.branches)
        if (k.switchable) ++switchable;
    REQUIRE(switchable == 37);

    SUBCASE("cardinality budget keeps at most one line open per hour") {
        const LinearConstraint* card = m.find_con("nrcard_0_0");
        REQUIRE(card != nullptr);
        CHECK(card->sense == '>');
        CHECK(card->rhs == doctest::Approx(36.0));
        CHECK((int)card->terms.size() == 37);
    }
    SUBCASE("non-switchable tie line has no switch variable") {
        CHECK(m.find(VarKind::LineClosed, 11, 0) < 0);
        CHECK(m.find_con("flowdef_11_0") != nullptr);
        CHECK(m.find_con("nrcaphi_11_0") == nullptr);
    }
    SUBCASE("closing a line recovers the rigid flow equation") {
        std::vector<double> values(m.vars.size(), 0.0);
        int k = 19;
        // J=1, angle difference 0.02 rad on x=0.084: flow must match exactly.
        const Branch* br = c.find_branch(k);
        double flow = 100.0 * 0.02 / br->reactance;
        values[m.column(VarKind::LineClosed, k, 0)] = 1.0;
        values[m.column(VarKind::BusAngle, br->from_bus, 0)] = 0.02;
        values[m.column(VarKind::LineFlow, k, 0)] = flow;
        CHECK(constraint_violation(*m.find_con(MilpModel::tag_of("nrhi", k, 0)), values) <=
              1e-9);
        CHECK(constraint_violation(*m.find_con(MilpModel::tag_of("nrlo", k, 0)), values) <=
              1e-9);
        // A mismatched flow breaks one side.
        values[m.column(VarKind::LineFlow, k, 0)] = flow + 5.0;
        CHECK(constraint_violation(*m.find_con(MilpModel::tag_of("nrhi", k, 0)), values) >
              1.0);
    }
    SUBCASE("opening a line forces zero flow but frees the angles") {
        std::vector<double> values(m.vars.size(), 0.0);
        int k = 19;
        values[m.column(VarKind::LineFlow, k, 0)] = 10.0;
        CHECK(constraint_violation(*m.find_con(MilpModel::tag_of("nrcaphi", k, 0)), values) ==
              doctest::Approx(10.0));
        values[m.column(VarKind::LineFlow, k, 0)] = 0.0;
        values[m.column(VarKind::BusAngle, c.find_branch(k)->from_bus, 0)] = 0.5;
        CHECK(constraint_violation(*m.find_con(MilpModel::tag_of("nrhi", k, 0)), values) <= 0.0);
        CHECK(constraint_violation(*m.find_con(MilpModel::tag_of("nrlo", k, 0)), values) <= 0.0);
        CHECK(constraint_violation(*m.find_con(MilpModel::tag_of("nrcaphi", k, 0)), values) <=
              0.0);
    }
    SUBCASE("big-M must be positive") {
        MilpModel bad;
        bad.scheme = SchemeId::ScucNr;
        bad.big_m = 0.0;
        BuildOptions opts;
        register_variables(bad, no_storage, opts);
        CHECK_THROWS_AS(add_reconfiguration(bad, no_storage, opts), ValidationError);
    }
}

TEST_CASE("schemes demand the data they formulate over") {
    Case plain = testing::two_bus_case();
    CHECK_THROWS_AS(build(plain, SchemeId::ScucBess), ValidationError);
    Case storage = testing::storage_micro_case();
    CHECK_THROWS_AS(build(storage, SchemeId::ScucVt), ValidationError);  // no pairs
}

TEST_CASE("model construction is deterministic") {
    Case c = build_modified_rts_case();
    for (SchemeId s : {SchemeId::Scuc, SchemeId::ScucVt, SchemeId::ScucVtNr}) {
        MilpModel a = build(c, s);
        MilpModel b = build(c, s);
        CHECK(model_to_mps(a) == model_to_mps(b));
    }
}

TEST_CASE("scheme names round-trip") {
    for (SchemeId s : all_schemes()) CHECK(scheme_from_name(scheme_name(s)) == s);
    CHECK_THROWS(scheme_from_name("NOT_A_SCHEME"));
    CHECK(all_schemes().size() == 7);
}
