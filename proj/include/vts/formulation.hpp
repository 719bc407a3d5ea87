#pragma once

#include "vts/case.hpp"
#include "vts/model.hpp"

namespace vts {

struct BuildOptions {
    // Initial conditions for hour 0 ramp/startup coupling.
    bool initial_online = false;
    double initial_output_mw = 0.0;

    // Nodal angle bound; also fixes the big-M for switched-line flow
    // relaxation at 2 * theta_max * base / x_min unless big_m is set.
    double theta_max_rad = 1.0;
    double big_m = 0.0;

    // Require terminal storage energy >= initial energy.
    bool cyclic_storage = false;
};

// Assembles the MILP for one scheme. The scheme decides which constraint
// families are present: storage schemes swap the plain nodal balance for
// its storage-aware form, reconfiguration schemes swap the fixed-topology
// flow physics for switched flow physics.
MilpModel build(const Case& c, SchemeId scheme, const BuildOptions& opts = {});

// Individual constraint families, exposed for targeted tests. All expect
// variables to have been registered by register_variables.
void register_variables(MilpModel& m, const Case& c, const BuildOptions& opts);
void add_objective(MilpModel& m, const Case& c);
void add_commitment_logic(MilpModel& m, const Case& c, const BuildOptions& opts);
void add_generator_limits(MilpModel& m, const Case& c, const BuildOptions& opts);
void add_dc_network(MilpModel& m, const Case& c);
void add_storage(MilpModel& m, const Case& c, const BuildOptions& opts);
void add_vt_coupling(MilpModel& m, const Case& c);
void add_reconfiguration(MilpModel& m, const Case& c, const BuildOptions& opts);

}  // namespace vts
