#pragma once

#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

namespace vts {

enum class SchemeId { Scuc, ScucPt, ScucBess, ScucVt, ScucNr, ScucBessNr, ScucVtNr };

std::string scheme_name(SchemeId s);
SchemeId scheme_from_name(const std::string& name);
const std::vector<SchemeId>& all_schemes();

bool scheme_has_storage(SchemeId s);
bool scheme_has_vt(SchemeId s);
bool scheme_has_nr(SchemeId s);

enum class VarKind {
    CommitU,     // u_gt
    StartV,      // v_gt
    GenP,        // generator output, MW
    BusAngle,    // nodal angle, rad
    LineFlow,    // branch flow, MW (from -> to positive)
    ChargeP,     // storage charging, MW
    DischargeP,  // storage discharging, MW
    Energy,      // storage energy level, MWh
    ChargeU,     // charging status
    DischargeU,  // discharging status
    LineClosed,  // branch in-service status
    Other,
};

struct VarRef {
    VarKind kind = VarKind::Other;
    int entity = 0;
    int t = 0;

    bool operator==(const VarRef&) const = default;
};

struct Variable {
    VarRef ref;
    std::string name;
    double lb = 0.0;
    double ub = 0.0;
    bool is_integer = false;
    double obj = 0.0;
};

// Row sense: '<', '>' or '='.
struct LinearConstraint {
    std::vector<std::pair<int, double>> terms;  // (column, coefficient)
    char sense = '=';
    double rhs = 0.0;
    std::string tag;  // family_entity_hour, unique per row
};

constexpr double kInf = std::numeric_limits<double>::infinity();

struct MilpModel {
    SchemeId scheme = SchemeId::Scuc;
    double big_m = 0.0;
    std::vector<Variable> vars;
    std::vector<LinearConstraint> cons;

    int add_var(VarRef ref, std::string name, double lb, double ub,
                bool is_integer, double obj = 0.0);
    int add_con(LinearConstraint con);

    // Column of a registered variable; negative if absent.
    int find(VarKind kind, int entity, int t) const;
    int column(VarKind kind, int entity, int t) const;  // throws if absent

    const LinearConstraint* find_con(const std::string& tag) const;
    int con_row(const std::string& tag) const;  // -1 if absent

    // "balance_<bus>_<hour>" etc.
    static std::string tag_of(const std::string& family, int entity, int t);

private:
    struct KeyHash {
        size_t operator()(const VarRef& r) const {
            return std::hash<int>()(static_cast<int>(r.kind)) ^
                   std::hash<int>()(r.entity * 131 + r.t) << 1;
        }
    };
    std::unordered_map<VarRef, int, KeyHash> index_;
    std::unordered_map<std::string, int> con_index_;
};

// Family prefix of a tag ("balance_3_12" -> "balance").
std::string tag_family(const std::string& tag);

}  // namespace vts
