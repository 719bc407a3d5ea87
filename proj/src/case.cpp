#include "vts/case.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

#include <json.hpp>

using nlohmann::json;

namespace vts {

namespace {

template <typename T>
const T* find_by_id(const std::vector<T>& v, int id) {
    for (const auto& x : v)
        if (x.id == id) return &x;
    return nullptr;
}

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

std::string ent(const std::string& kind, int id) {
    return kind + " " + std::to_string(id);
}

}  // namespace

const Bus* Case::find_bus(int id) const { return find_by_id(buses, id); }
const Branch* Case::find_branch(int id) const { return find_by_id(branches, id); }
const Generator* Case::find_generator(int id) const { return find_by_id(generators, id); }
const StorageUnit* Case::find_storage(int id) const { return find_by_id(storage_units, id); }

void validate(const Case& c) {
    if (c.buses.empty()) fail("case has no buses");
    if (c.horizon_hours <= 0) fail("horizon_hours must be positive");
    if (c.interval_hours <= 0) fail("interval_hours must be positive");

    std::set<int> bus_ids;
    for (const auto& b : c.buses)
        if (!bus_ids.insert(b.id).second) fail("duplicate bus id " + std::to_string(b.id));
    auto has_bus = [&](int id) { return bus_ids.count(id) > 0; };

    if (!has_bus(c.reference_bus)) fail("reference_bus " + std::to_string(c.reference_bus) + " does not exist");

    std::set<int> branch_ids;
    for (const auto& k : c.branches) {
        if (!branch_ids.insert(k.id).second) fail("duplicate branch id " + std::to_string(k.id));
        if (!has_bus(k.from_bus)) fail(ent("branch", k.id) + " references missing from_bus " + std::to_string(k.from_bus));
        if (!has_bus(k.to_bus)) fail(ent("branch", k.id) + " references missing to_bus " + std::to_string(k.to_bus));
        if (k.from_bus == k.to_bus) fail(ent("branch", k.id) + " connects a bus to itself");
        if (k.reactance <= 0) fail(ent("branch", k.id) + " reactance must be strictly positive");
        if (k.rating_mw <= 0) fail(ent("branch", k.id) + " rating must be strictly positive");
    }

    std::set<int> gen_ids;
    for (const auto& g : c.generators) {
        if (!gen_ids.insert(g.id).second) fail("duplicate generator id " + std::to_string(g.id));
        if (!has_bus(g.bus)) fail(ent("generator", g.id) + " references missing bus " + std::to_string(g.bus));
        if (g.p_min_mw < 0) fail(ent("generator", g.id) + " p_min must be >= 0");
        if (g.p_max_mw < g.p_min_mw) fail(ent("generator", g.id) + " p_max < p_min");
        if (g.cost_energy < 0 || g.cost_noload < 0 || g.cost_startup < 0)
            fail(ent("generator", g.id) + " costs must be >= 0");
        if (g.ramp_hourly_mw <= 0) fail(ent("generator", g.id) + " ramp rate must be > 0");
    }

    std::set<int> solar_ids;
    for (const auto& s : c.solar_plants) {
        if (!solar_ids.insert(s.id).second) fail("duplicate solar id " + std::to_string(s.id));
        if (!has_bus(s.bus)) fail(ent("solar plant", s.id) + " references missing bus " + std::to_string(s.bus));
        if (s.capacity_mw < 0) fail(ent("solar plant", s.id) + " capacity must be >= 0");
        if ((int)s.profile.size() != c.horizon_hours)
            fail(ent("solar plant", s.id) + " profile length != horizon");
        for (double f : s.profile)
            if (f < 0 || f > 1) fail(ent("solar plant", s.id) + " profile fraction outside [0,1]");
    }

    std::set<int> storage_ids;
    for (const auto& e : c.storage_units) {
        if (!storage_ids.insert(e.id).second) fail("duplicate storage id " + std::to_string(e.id));
        if (!has_bus(e.bus)) fail(ent("storage", e.id) + " references missing bus " + std::to_string(e.bus));
        if (e.e_min_mwh < 0) fail(ent("storage", e.id) + " E_min must be >= 0");
        if (e.e_max_mwh <= e.e_min_mwh) fail(ent("storage", e.id) + " E_max must exceed E_min");
        if (e.p_charge_max_mw <= 0 || e.p_discharge_max_mw <= 0)
            fail(ent("storage", e.id) + " power ratings must be > 0");
        if (e.eta_charge <= 0 || e.eta_charge > 1 || e.eta_discharge <= 0 || e.eta_discharge > 1)
            fail(ent("storage", e.id) + " efficiencies must be in (0,1]");
        if (e.e_initial_mwh < e.e_min_mwh || e.e_initial_mwh > e.e_max_mwh)
            fail(ent("storage", e.id) + " initial energy outside [E_min, E_max]");
    }

    for (const auto& p : c.vt_pairs) {
        if (p.storage_a == p.storage_b) fail(ent("vt_pair", p.id) + " pairs a storage unit with itself");
        const StorageUnit* a = c.find_storage(p.storage_a);
        const StorageUnit* b = c.find_storage(p.storage_b);
        if (!a) fail(ent("vt_pair", p.id) + " references missing storage " + std::to_string(p.storage_a));
        if (!b) fail(ent("vt_pair", p.id) + " references missing storage " + std::to_string(p.storage_b));
        const Branch* k = c.find_branch(p.spanned_branch);
        if (!k) fail(ent("vt_pair", p.id) + " references missing branch " + std::to_string(p.spanned_branch));
        std::set<int> ends = {k->from_bus, k->to_bus};
        if (!ends.count(a->bus) || !ends.count(b->bus) || a->bus == b->bus)
            fail(ent("vt_pair", p.id) + ": storage units " + std::to_string(p.storage_a) + "/" +
                 std::to_string(p.storage_b) + " are not at the two endpoints of branch " +
                 std::to_string(p.spanned_branch));
    }

    for (const auto& [bus, peak] : c.load.bus_peak_mw) {
        if (!has_bus(bus)) fail("load references missing bus " + std::to_string(bus));
        if (peak < 0) fail("load peak at bus " + std::to_string(bus) + " must be >= 0");
    }
    if ((int)c.load.hourly_fraction.size() != c.horizon_hours)
        fail("load hourly_fraction length != horizon");
    for (double f : c.load.hourly_fraction)
        if (f <= 0 || f > 1) fail("load hourly fraction outside (0,1]");
    if (c.load.daily_peak_factor <= 0) fail("daily_peak_factor must be > 0");

    // Connectivity with all branches in service.
    std::map<int, std::vector<int>> adj;
    for (const auto& k : c.branches) {
        adj[k.from_bus].push_back(k.to_bus);
        adj[k.to_bus].push_back(k.from_bus);
    }
    std::set<int> seen;
    std::queue<int> q;
    q.push(c.buses.front().id);
    seen.insert(c.buses.front().id);
    while (!q.empty()) {
        int n = q.front();
        q.pop();
        for (int m : adj[n])
            if (seen.insert(m).second) q.push(m);
    }
    if (seen.size() != bus_ids.size()) fail("network disconnected");
}

double demand(const Case& c, int bus_id, int t) {
    if (t < 0 || t >= c.horizon_hours) throw std::out_of_range("hour out of range");
    if (!c.find_bus(bus_id)) throw std::out_of_range("unknown bus " + std::to_string(bus_id));
    auto it = c.load.bus_peak_mw.find(bus_id);
    if (it == c.load.bus_peak_mw.end()) return 0.0;
    return it->second * c.load.daily_peak_factor * c.load.hourly_fraction[t];
}

double solar_injection(const Case& c, int bus_id, int t) {
    if (t < 0 || t >= c.horizon_hours) throw std::out_of_range("hour out of range");
    if (!c.find_bus(bus_id)) throw std::out_of_range("unknown bus " + std::to_string(bus_id));
    double mw = 0.0;
    for (const auto& s : c.solar_plants)
        if (s.bus == bus_id) mw += s.capacity_mw * s.profile[t];
    return mw;
}

double total_demand(const Case& c, int t) {
    double mw = 0.0;
    for (const auto& b : c.buses) mw += demand(c, b.id, t);
    return mw;
}

double total_solar(const Case& c, int t) {
    double mw = 0.0;
    for (const auto& b : c.buses) mw += solar_injection(c, b.id, t);
    return mw;
}

Case add_parallel_line(const Case& c, int branch_id) {
    const Branch* k = c.find_branch(branch_id);
    if (!k) throw ValidationError("unknown branch " + std::to_string(branch_id));
    Case out = c;
    Branch twin = *k;
    int max_id = 0;
    for (const auto& b : c.branches) max_id = std::max(max_id, b.id);
    twin.id = max_id + 1;
    out.branches.push_back(twin);
    return out;
}

// ---------------------------------------------------------------------------
// JSON case file

namespace {

json to_json(const Case& c) {
    json j;
    j["meta"] = {{"name", c.name},
                 {"horizon_hours", c.horizon_hours},
                 {"interval_hours", c.interval_hours},
                 {"reference_bus", c.reference_bus},
                 {"mva_base", c.mva_base}};
    j["buses"] = json::array();
    for (const auto& b : c.buses)
        j["buses"].push_back({{"id", b.id}, {"name", b.name}, {"voltage_kv", b.voltage_kv}});
    j["branches"] = json::array();
    for (const auto& k : c.branches)
        j["branches"].push_back({{"id", k.id},
                                 {"from_bus", k.from_bus},
                                 {"to_bus", k.to_bus},
                                 {"reactance", k.reactance},
                                 {"rating_mw", k.rating_mw},
                                 {"switchable", k.switchable}});
    j["generators"] = json::array();
    for (const auto& g : c.generators)
        j["generators"].push_back({{"id", g.id},
                                   {"bus", g.bus},
                                   {"p_min_mw", g.p_min_mw},
                                   {"p_max_mw", g.p_max_mw},
                                   {"cost_energy", g.cost_energy},
                                   {"cost_noload", g.cost_noload},
                                   {"cost_startup", g.cost_startup},
                                   {"ramp_hourly_mw", g.ramp_hourly_mw}});
    j["solar"] = json::array();
    for (const auto& s : c.solar_plants)
        j["solar"].push_back({{"id", s.id},
                              {"bus", s.bus},
                              {"capacity_mw", s.capacity_mw},
                              {"profile", s.profile}});
    j["storage"] = json::array();
    for (const auto& e : c.storage_units)
        j["storage"].push_back({{"id", e.id},
                                {"bus", e.bus},
                                {"e_min_mwh", e.e_min_mwh},
                                {"e_max_mwh", e.e_max_mwh},
                                {"p_charge_max_mw", e.p_charge_max_mw},
                                {"p_discharge_max_mw", e.p_discharge_max_mw},
                                {"eta_charge", e.eta_charge},
                                {"eta_discharge", e.eta_discharge},
                                {"e_initial_mwh", e.e_initial_mwh}});
    j["vt_pairs"] = json::array();
    for (const auto& p : c.vt_pairs)
        j["vt_pairs"].push_back({{"id", p.id},
                                 {"storage_a", p.storage_a},
                                 {"storage_b", p.storage_b},
                                 {"spanned_branch", p.spanned_branch}});
    json peaks = json::object();
    for (const auto& [bus, mw] : c.load.bus_peak_mw) peaks[std::to_string(bus)] = mw;
    j["load"] = {{"bus_peak_mw", peaks},
                 {"hourly_fraction", c.load.hourly_fraction},
                 {"daily_peak_factor", c.load.daily_peak_factor}};
    return j;
}

template <typename T>
T get_field(const json& j, const char* field, const std::string& where) {
    auto it = j.find(field);
    if (it == j.end())
        throw ParseError("missing field '" + std::string(field) + "' in " + where);
    try {
        return it->get<T>();
    } catch (const json::exception& e) {
        throw ParseError("bad value for '" + std::string(field) + "' in " + where + ": " + e.what());
    }
}

Case from_json(const json& j) {
    Case c;
    if (j.contains("meta")) {
        const json& m = j.at("meta");
        c.name = m.value("name", "");
        c.horizon_hours = m.value("horizon_hours", 24);
        c.interval_hours = m.value("interval_hours", 1.0);
        c.reference_bus = get_field<int>(m, "reference_bus", "meta");
        c.mva_base = m.value("mva_base", 100.0);
    }
    for (const auto& bj : j.value("buses", json::array())) {
        Bus b;
        b.id = get_field<int>(bj, "id", "buses");
        b.name = bj.value("name", "");
        b.voltage_kv = bj.value("voltage_kv", 0.0);
        c.buses.push_back(b);
    }
    for (const auto& kj : j.value("branches", json::array())) {
        Branch k;
        k.id = get_field<int>(kj, "id", "branches");
        std::string where = "branch " + std::to_string(k.id);
        k.from_bus = get_field<int>(kj, "from_bus", where);
        k.to_bus = get_field<int>(kj, "to_bus", where);
        k.reactance = get_field<double>(kj, "reactance", where);
        k.rating_mw = get_field<double>(kj, "rating_mw", where);
        k.switchable = kj.value("switchable", true);
        c.branches.push_back(k);
    }
    for (const auto& gj : j.value("generators", json::array())) {
        Generator g;
        g.id = get_field<int>(gj, "id", "generators");
        std::string where = "generator " + std::to_string(g.id);
        g.bus = get_field<int>(gj, "bus", where);
        g.p_min_mw = get_field<double>(gj, "p_min_mw", where);
        g.p_max_mw = get_field<double>(gj, "p_max_mw", where);
        g.cost_energy = get_field<double>(gj, "cost_energy", where);
        g.cost_noload = gj.value("cost_noload", 0.0);
        g.cost_startup = gj.value("cost_startup", 0.0);
        g.ramp_hourly_mw = gj.value("ramp_hourly_mw", g.p_max_mw);
        c.generators.push_back(g);
    }
    for (const auto& sj : j.value("solar", json::array())) {
        SolarPlant s;
        s.id = get_field<int>(sj, "id", "solar");
        std::string where = "solar plant " + std::to_string(s.id);
        s.bus = get_field<int>(sj, "bus", where);
        s.capacity_mw = get_field<double>(sj, "capacity_mw", where);
        s.profile = get_field<std::vector<double>>(sj, "profile", where);
        c.solar_plants.push_back(s);
    }
    for (const auto& ej : j.value("storage", json::array())) {
        StorageUnit e;
        e.id = get_field<int>(ej, "id", "storage");
        std::string where = "storage " + std::to_string(e.id);
        e.bus = get_field<int>(ej, "bus", where);
        e.e_min_mwh = ej.value("e_min_mwh", 0.0);
        e.e_max_mwh = get_field<double>(ej, "e_max_mwh", where);
        e.p_charge_max_mw = get_field<double>(ej, "p_charge_max_mw", where);
        e.p_discharge_max_mw = get_field<double>(ej, "p_discharge_max_mw", where);
        e.eta_charge = ej.value("eta_charge", 1.0);
        e.eta_discharge = ej.value("eta_discharge", 1.0);
        e.e_initial_mwh = ej.value("e_initial_mwh", e.e_min_mwh);
        c.storage_units.push_back(e);
    }
    for (const auto& pj : j.value("vt_pairs", json::array())) {
        VtPair p;
        p.id = get_field<int>(pj, "id", "vt_pairs");
        std::string where = "vt_pair " + std::to_string(p.id);
        p.storage_a = get_field<int>(pj, "storage_a", where);
        p.storage_b = get_field<int>(pj, "storage_b", where);
        p.spanned_branch = get_field<int>(pj, "spanned_branch", where);
        c.vt_pairs.push_back(p);
    }
    if (j.contains("load")) {
        const json& lj = j.at("load");
        const json peaks = lj.value("bus_peak_mw", json::object());
        for (const auto& [key, val] : peaks.items())
            c.load.bus_peak_mw[std::stoi(key)] = val.get<double>();
        c.load.hourly_fraction = get_field<std::vector<double>>(lj, "hourly_fraction", "load");
        c.load.daily_peak_factor = get_field<double>(lj, "daily_peak_factor", "load");
    }
    return c;
}

}  // namespace

std::string case_to_json_text(const Case& c) { return to_json(c).dump(2) + "\n"; }

Case case_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    Case c = from_json(j);
    validate(c);
    return c;
}

Case load_case(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open case file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return case_from_json_text(ss.str());
}

void save_case(const Case& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write case file: " + path);
    out << case_to_json_text(c);
}

}  // namespace vts
