#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace vts {

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct Bus {
    int id = 0;
    std::string name;
    double voltage_kv = 0.0;  // informational only
};

struct Branch {
    int id = 0;
    int from_bus = 0;
    int to_bus = 0;
    double reactance = 0.0;  // per-unit on system base
    double rating_mw = 0.0;
    bool switchable = true;
};

struct Generator {
    int id = 0;
    int bus = 0;
    double p_min_mw = 0.0;
    double p_max_mw = 0.0;
    double cost_energy = 0.0;   // $/MWh
    double cost_noload = 0.0;   // $/h while committed
    double cost_startup = 0.0;  // $ per start
    double ramp_hourly_mw = 0.0;
};

struct SolarPlant {
    int id = 0;
    int bus = 0;
    double capacity_mw = 0.0;
    std::vector<double> profile;  // availability fraction per hour, in [0,1]
};

struct StorageUnit {
    int id = 0;
    int bus = 0;
    double e_min_mwh = 0.0;
    double e_max_mwh = 0.0;
    double p_charge_max_mw = 0.0;
    double p_discharge_max_mw = 0.0;
    double eta_charge = 1.0;
    double eta_discharge = 1.0;
    double e_initial_mwh = 0.0;
};

// Two storage units at the endpoints of one line, operated as a virtual
// parallel line: never both charging, never both discharging.
struct VtPair {
    int id = 0;
    int storage_a = 0;
    int storage_b = 0;
    int spanned_branch = 0;
};

struct LoadModel {
    std::map<int, double> bus_peak_mw;    // annual peak share per bus
    std::vector<double> hourly_fraction;  // fraction of daily peak per hour
    double daily_peak_factor = 1.0;
};

struct Case {
    std::string name;
    std::vector<Bus> buses;
    std::vector<Branch> branches;
    std::vector<Generator> generators;
    std::vector<SolarPlant> solar_plants;
    std::vector<StorageUnit> storage_units;
    std::vector<VtPair> vt_pairs;
    LoadModel load;
    int horizon_hours = 24;
    double interval_hours = 1.0;
    int reference_bus = 1;
    double mva_base = 100.0;

    const Bus* find_bus(int id) const;
    const Branch* find_branch(int id) const;
    const Generator* find_generator(int id) const;
    const StorageUnit* find_storage(int id) const;
};

// Throws ValidationError naming the violated invariant and entity.
void validate(const Case& c);

Case load_case(const std::string& path);
void save_case(const Case& c, const std::string& path);

Case case_from_json_text(const std::string& text);
std::string case_to_json_text(const Case& c);

double demand(const Case& c, int bus_id, int t);
double solar_injection(const Case& c, int bus_id, int t);

double total_demand(const Case& c, int t);
double total_solar(const Case& c, int t);

// New Case with one extra branch duplicating endpoints, reactance and
// rating of branch_id.
Case add_parallel_line(const Case& c, int branch_id);

}  // namespace vts
