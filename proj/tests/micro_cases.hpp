#pragma once

// Small hand-analyzable cases shared across the test binaries. Each builder
// returns a validated Case; expected optima are documented at the call sites.

#include <vector>

#include "vts/case.hpp"

namespace vts::testing {

// One bus, one generator (C=20 $/MWh, no-load 100 $/h, startup 500 $),
// flat 80 MW load. The only feasible commitment is on: cost per hour is
// 20*80 + 100, plus one 500 $ start.
inline Case single_bus_case(int horizon = 1) {
    Case c;
    c.name = "single-bus";
    c.horizon_hours = horizon;
    c.reference_bus = 1;
    c.buses = {{1, "a", 138.0}};
    c.generators = {{1, 1, 20.0, 100.0, 20.0, 100.0, 500.0, 100.0}};
    c.load.bus_peak_mw[1] = 100.0;
    c.load.daily_peak_factor = 0.80;
    c.load.hourly_fraction.assign(horizon, 1.0);
    validate(c);
    return c;
}

// Two buses joined by a 100 MW line; cheap unit (10 $/MWh) at bus 1,
// expensive unit (50 $/MWh) at bus 2, 150 MW load at bus 2. The line binds:
// cheap exports 100, expensive covers 50, prices split 10 / 50 $/MWh.
inline Case two_bus_case(double line_rating = 100.0, double load_mw = 150.0) {
    Case c;
    c.name = "two-bus";
    c.horizon_hours = 1;
    c.reference_bus = 1;
    c.buses = {{1, "a", 230.0}, {2, "b", 230.0}};
    c.branches = {{1, 1, 2, 0.1, line_rating, true}};
    c.generators = {{1, 1, 0.0, 1000.0, 10.0, 0.0, 0.0, 1000.0},
                    {2, 2, 0.0, 1000.0, 50.0, 0.0, 0.0, 1000.0}};
    c.load.bus_peak_mw[2] = load_mw;
    c.load.daily_peak_factor = 1.0;
    c.load.hourly_fraction = {1.0};
    validate(c);
    return c;
}

// Three-bus loop, two committable units, two hours. Small enough that every
// commitment pattern (2 units x 2 hours) can be enumerated by LP.
inline Case three_bus_case() {
    Case c;
    c.name = "three-bus";
    c.horizon_hours = 2;
    c.reference_bus = 1;
    c.buses = {{1, "a", 230.0}, {2, "b", 230.0}, {3, "c", 230.0}};
    c.branches = {{1, 1, 2, 0.1, 90.0, true},
                  {2, 2, 3, 0.1, 90.0, true},
                  {3, 1, 3, 0.1, 60.0, true}};
    c.generators = {{1, 1, 30.0, 200.0, 15.0, 50.0, 200.0, 200.0},
                    {2, 3, 20.0, 150.0, 40.0, 30.0, 100.0, 150.0}};
    c.load.bus_peak_mw[2] = 200.0;
    c.load.daily_peak_factor = 1.0;
    c.load.hourly_fraction = {0.5, 0.8};
    validate(c);
    return c;
}

// Single bus with a solar plant that over-produces in hour 0 and is dark in
// hour 1, a storage unit that must absorb the surplus, and an expensive
// backup unit. Forces a charge-then-discharge cycle.
inline Case storage_micro_case() {
    Case c;
    c.name = "storage-micro";
    c.horizon_hours = 2;
    c.reference_bus = 1;
    c.buses = {{1, "a", 138.0}};
    c.generators = {{1, 1, 0.0, 200.0, 100.0, 0.0, 0.0, 200.0}};
    c.solar_plants = {{1, 1, 100.0, {1.0, 0.0}}};
    c.storage_units = {{1, 1, 0.0, 100.0, 100.0, 100.0, 0.95, 0.95, 0.0}};
    c.load.bus_peak_mw[1] = 50.0;
    c.load.daily_peak_factor = 1.0;
    c.load.hourly_fraction = {1.0, 1.0};
    validate(c);
    return c;
}

// Two buses with a storage unit at each endpoint of the connecting line,
// registered as a virtual-line pair. Cheap generation at bus 1, load at
// bus 2, so the pair has an incentive to shuttle energy across the line.
inline Case vt_micro_case(int horizon = 4) {
    Case c;
    c.name = "vt-micro";
    c.horizon_hours = horizon;
    c.reference_bus = 1;
    c.buses = {{1, "a", 230.0}, {2, "b", 230.0}};
    c.branches = {{1, 1, 2, 0.1, 60.0, true}};
    c.generators = {{1, 1, 0.0, 500.0, 10.0, 0.0, 0.0, 500.0},
                    {2, 2, 0.0, 500.0, 80.0, 0.0, 0.0, 500.0}};
    c.storage_units = {{1, 1, 0.0, 120.0, 60.0, 60.0, 0.95, 0.95, 60.0},
                       {2, 2, 0.0, 120.0, 60.0, 60.0, 0.95, 0.95, 60.0}};
    c.vt_pairs = {{1, 1, 2, 1}};
    c.load.bus_peak_mw[2] = 100.0;
    c.load.daily_peak_factor = 1.0;
    c.load.hourly_fraction.assign(horizon, 1.0);
    for (int t = 0; t < horizon; ++t)
        c.load.hourly_fraction[t] = (t % 2 == 0) ? 1.0 : 0.4;
    validate(c);
    return c;
}

}  // namespace vts::testing
