#include "vts/rts.hpp"

#include <cmath>
#include <string>

namespace vts {

namespace {

enum class Fuel { Hydro, Nuclear, Coal, Oil };

struct UnitType {
    const char* name;
    double p_min, p_max;
    double cost_energy, cost_noload, cost_startup;
    Fuel fuel;
};

// Linearized merit order for the 1979 RTS fleet (single $/MWh slope per
// unit class, pre-linearized from the published heat-rate data).
constexpr UnitType kU12{"U12", 2.4, 12.0, 56.0, 60.0, 120.0, Fuel::Oil};
constexpr UnitType kU20{"U20", 4.0, 20.0, 130.0, 50.0, 80.0, Fuel::Oil};
constexpr UnitType kU50{"U50", 0.0, 50.0, 0.5, 0.0, 0.0, Fuel::Hydro};
constexpr UnitType kU76{"U76", 15.2, 76.0, 14.0, 180.0, 600.0, Fuel::Coal};
constexpr UnitType kU100{"U100", 25.0, 100.0, 43.0, 220.0, 450.0, Fuel::Oil};
constexpr UnitType kU155{"U155", 54.25, 155.0, 11.0, 200.0, 700.0, Fuel::Coal};
constexpr UnitType kU197{"U197", 69.0, 197.0, 16.0, 250.0, 550.0, Fuel::Oil};
constexpr UnitType kU350{"U350", 140.0, 350.0, 11.5, 300.0, 1200.0, Fuel::Coal};
constexpr UnitType kU400{"U400", 100.0, 400.0, 6.0, 300.0, 2000.0, Fuel::Nuclear};

struct UnitRow {
    int bus;
    const UnitType* type;
};

// 32 units; the bus-14 synchronous condenser carries no real power and is
// omitted.
const UnitRow kUnits[] = {
    {1, &kU20},  {1, &kU20},  {1, &kU76},  {1, &kU76},
    {2, &kU20},  {2, &kU20},  {2, &kU76},  {2, &kU76},
    {7, &kU100}, {7, &kU100}, {7, &kU100},
    {13, &kU197}, {13, &kU197}, {13, &kU197},
    {15, &kU12}, {15, &kU12}, {15, &kU12}, {15, &kU12}, {15, &kU12}, {15, &kU155},
    {16, &kU155},
    {18, &kU400},
    {21, &kU400},
    {22, &kU50}, {22, &kU50}, {22, &kU50}, {22, &kU50}, {22, &kU50}, {22, &kU50},
    {23, &kU155}, {23, &kU155}, {23, &kU350},
};

struct BranchRow {
    int from, to;
    double x;       // per-unit on 100 MVA
    double rating;  // MW
};

const BranchRow kBranches[38] = {
    {1, 2, 0.0139, 175},  {1, 3, 0.2112, 175},  {1, 5, 0.0845, 175},
    {2, 4, 0.1267, 175},  {2, 6, 0.1920, 175},  {3, 9, 0.1190, 175},
    {3, 24, 0.0839, 400}, {4, 9, 0.1037, 175},  {5, 10, 0.0883, 175},
    {6, 10, 0.0605, 175}, {7, 8, 0.0614, 175},  {8, 9, 0.1651, 175},
    {8, 10, 0.1651, 175}, {9, 11, 0.0839, 400}, {9, 12, 0.0839, 400},
    {10, 11, 0.0839, 400}, {10, 12, 0.0839, 400}, {11, 13, 0.0476, 500},
    {11, 14, 0.0418, 500}, {12, 13, 0.0476, 500}, {12, 23, 0.0966, 500},
    {13, 23, 0.0865, 500}, {14, 16, 0.0389, 500}, {15, 16, 0.0173, 500},
    {15, 21, 0.0490, 500}, {15, 21, 0.0490, 500}, {15, 24, 0.0519, 500},
    {16, 17, 0.0259, 500}, {16, 19, 0.0231, 500}, {17, 18, 0.0144, 500},
    {17, 22, 0.1053, 500}, {18, 21, 0.0259, 500}, {18, 21, 0.0259, 500},
    {19, 20, 0.0396, 500}, {19, 20, 0.0396, 500}, {20, 23, 0.0216, 500},
    {20, 23, 0.0216, 500}, {21, 22, 0.0678, 500},
};

// Bus peak load as a share of the 2850 MW annual system peak.
const std::pair<int, double> kBusPeakMw[] = {
    {1, 108}, {2, 97},  {3, 180}, {4, 74},  {5, 71},  {6, 136},
    {7, 125}, {8, 171}, {9, 175}, {10, 195}, {13, 265}, {14, 194},
    {15, 317}, {16, 100}, {18, 333}, {19, 181}, {20, 128},
};

// Hourly load as a fraction of daily peak, summer weekday.
const double kHourlyFraction[24] = {
    0.64, 0.60, 0.58, 0.56, 0.56, 0.58, 0.64, 0.76, 0.87, 0.95, 0.99, 1.00,
    0.99, 1.00, 1.00, 0.97, 0.96, 0.96, 0.93, 0.92, 0.92, 0.93, 0.87, 0.72,
};

}  // namespace

std::vector<double> default_solar_profile() {
    std::vector<double> p(24, 0.0);
    p[6] = 0.05;
    p[7] = 0.20;
    p[8] = 0.40;
    p[9] = 0.62;
    p[10] = 0.85;
    p[11] = 1.00;
    p[12] = 1.00;
    p[13] = 0.85;
    p[14] = 0.62;
    p[15] = 0.40;
    p[16] = 0.20;
    p[17] = 0.08;
    p[18] = 0.02;
    return p;
}

Case build_rts79_case() {
    Case c;
    c.name = "rts79";
    c.horizon_hours = 24;
    c.interval_hours = 1.0;
    c.reference_bus = 13;
    c.mva_base = 100.0;

    for (int n = 1; n <= 24; ++n) {
        Bus b;
        b.id = n;
        b.name = "bus" + std::to_string(n);
        b.voltage_kv = n <= 10 ? 138.0 : 230.0;
        c.buses.push_back(b);
    }

    int kid = 0;
    for (const auto& row : kBranches) {
        Branch k;
        k.id = ++kid;
        k.from_bus = row.from;
        k.to_bus = row.to;
        k.reactance = row.x;
        k.rating_mw = row.rating;
        // Line 11 is the radial generation tie for the bus-7 plant and is
        // never a switching candidate.
        k.switchable = k.id != 11;
        c.branches.push_back(k);
    }

    int gid = 0;
    for (const auto& row : kUnits) {
        const UnitType& t = *row.type;
        Generator g;
        g.id = ++gid;
        g.bus = row.bus;
        g.p_min_mw = t.p_min;
        g.p_max_mw = t.p_max;
        g.cost_energy = t.cost_energy;
        g.cost_noload = t.cost_noload;
        g.cost_startup = t.cost_startup;
        g.ramp_hourly_mw = t.p_max;
        c.generators.push_back(g);
    }

    for (const auto& [bus, mw] : kBusPeakMw) c.load.bus_peak_mw[bus] = mw;
    c.load.hourly_fraction.assign(kHourlyFraction, kHourlyFraction + 24);
    c.load.daily_peak_factor = 1.0;
    return c;
}

Case build_modified_rts_case(const StudyCaseConfig& config) {
    Case c = build_rts79_case();
    c.name = "ieee24_modified";
    c.load.daily_peak_factor = config.daily_peak_factor;

    // Decarbonization: retire the whole thermal fleet at the coal buses 2,
    // 15, 16 and 23.
    std::vector<Generator> kept;
    for (const auto& g : c.generators) {
        bool at_retired = g.bus == 2 || g.bus == 15 || g.bus == 16 || g.bus == 23;
        if (!at_retired) kept.push_back(g);
    }
    c.generators = kept;

    if (config.solar_buses.size() != config.solar_capacity_mw.size())
        throw ValidationError("solar bus and capacity lists differ in length");
    std::vector<double> profile =
        config.solar_profile.empty() ? default_solar_profile() : config.solar_profile;
    double total = 0.0;
    int sid = 0;
    for (size_t i = 0; i < config.solar_buses.size(); ++i) {
        SolarPlant s;
        s.id = ++sid;
        s.bus = config.solar_buses[i];
        s.capacity_mw = config.solar_capacity_mw[i];
        s.profile = profile;
        total += s.capacity_mw;
        c.solar_plants.push_back(s);
    }
    if (config.strict_paper && std::abs(total - 1110.0) > 1e-9)
        throw ValidationError("strict-paper mode requires solar capacity totaling 1110 MW, got " +
                              std::to_string(total));

    if (config.with_storage && config.storage_power_mw > 0) {
        int eid = 0;
        for (int bus : config.storage_buses) {
            StorageUnit e;
            e.id = ++eid;
            e.bus = bus;
            e.e_min_mwh = 0.0;
            e.e_max_mwh = config.storage_power_mw * config.storage_duration_h;
            e.p_charge_max_mw = config.storage_power_mw;
            e.p_discharge_max_mw = config.storage_power_mw;
            e.eta_charge = config.eta_charge;
            e.eta_discharge = config.eta_discharge;
            e.e_initial_mwh = config.initial_soc_fraction * e.e_max_mwh;
            c.storage_units.push_back(e);
        }
        if (c.storage_units.size() == 2) {
            VtPair p;
            p.id = 1;
            p.storage_a = 1;
            p.storage_b = 2;
            p.spanned_branch = config.spanned_branch;
            c.vt_pairs.push_back(p);
        }
    }

    if (config.ramp_override_mw > 0)
        for (auto& g : c.generators) g.ramp_hourly_mw = config.ramp_override_mw;

    validate(c);
    return c;
}

}  // namespace vts
