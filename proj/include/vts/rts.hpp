#pragma once

#include <vector>

#include "vts/case.hpp"

namespace vts {

// Configuration for the modified 24-bus study case: the 1979 reliability
// test system with coal units retired, utility solar added and a storage
// pair spanning the 11-14 corridor line.
struct StudyCaseConfig {
    // Solar placement. Capacities must sum to 1110 MW in strict mode.
    std::vector<int> solar_buses = {14, 15, 16};
    std::vector<double> solar_capacity_mw = {500.0, 370.0, 240.0};
    std::vector<double> solar_profile;  // empty -> bundled bell profile

    // Storage pair. Power rating per unit; energy = duration * power.
    std::vector<int> storage_buses = {11, 14};
    double storage_power_mw = 200.0;
    double storage_duration_h = 4.0;
    double eta_charge = 0.95;
    double eta_discharge = 0.95;
    double initial_soc_fraction = 0.25;
    int spanned_branch = 19;  // the 11-14 corridor line
    bool with_storage = true;

    double daily_peak_factor = 0.80;
    double ramp_override_mw = 0.0;  // 0 -> p_max per hour (non-binding)
    bool strict_paper = true;       // enforce the 1110 MW solar total
};

// Default 24-value solar availability profile: a symmetric bell, nonzero
// 06:00-19:00, at its peak 11:00-13:00.
std::vector<double> default_solar_profile();

// The unmodified 1979 reliability test system (38 branches, 32 thermal /
// hydro units, 2850 MW annual peak) with linearized costs.
Case build_rts79_case();

Case build_modified_rts_case(const StudyCaseConfig& config = {});

}  // namespace vts
