#include "vts/model.hpp"

#include <stdexcept>

namespace vts {

std::string scheme_name(SchemeId s) {
    switch (s) {
        case SchemeId::Scuc: return "SCUC";
        case SchemeId::ScucPt: return "SCUC_PT";
        case SchemeId::ScucBess: return "SCUC_BESS";
        case SchemeId::ScucVt: return "SCUC_VT";
        case SchemeId::ScucNr: return "SCUC_NR";
        case SchemeId::ScucBessNr: return "SCUC_BESS_NR";
        case SchemeId::ScucVtNr: return "SCUC_VT_NR";
    }
    return "?";
}

SchemeId scheme_from_name(const std::string& name) {
    for (SchemeId s : all_schemes())
        if (scheme_name(s) == name) return s;
    throw std::invalid_argument("unknown scheme: " + name);
}

const std::vector<SchemeId>& all_schemes() {
    static const std::vector<SchemeId> v = {
        SchemeId::Scuc,   SchemeId::ScucPt,     SchemeId::ScucBess, SchemeId::ScucVt,
        SchemeId::ScucNr, SchemeId::ScucBessNr, SchemeId::ScucVtNr,
    };
    return v;
}

bool scheme_has_storage(SchemeId s) {
    return s == SchemeId::ScucBess || s == SchemeId::ScucVt ||
           s == SchemeId::ScucBessNr || s == SchemeId::ScucVtNr;
}

bool scheme_has_vt(SchemeId s) { return s == SchemeId::ScucVt || s == SchemeId::ScucVtNr; }

bool scheme_has_nr(SchemeId s) {
    return s == SchemeId::ScucNr || s == SchemeId::ScucBessNr || s == SchemeId::ScucVtNr;
}

int MilpModel::add_var(VarRef ref, std::string name, double lb, double ub,
                       bool is_integer, double obj) {
    if (ref.kind != VarKind::Other && index_.count(ref))
        throw std::logic_error("duplicate variable " + name);
    Variable v;
    v.ref = ref;
    v.name = std::move(name);
    v.lb = lb;
    v.ub = ub;
    v.is_integer = is_integer;
    v.obj = obj;
    int col = static_cast<int>(vars.size());
    vars.push_back(std::move(v));
    if (ref.kind != VarKind::Other) index_.emplace(ref, col);
    return col;
}

int MilpModel::add_con(LinearConstraint con) {
    if (con_index_.count(con.tag)) throw std::logic_error("duplicate constraint tag " + con.tag);
    int row = static_cast<int>(cons.size());
    con_index_.emplace(con.tag, row);
    cons.push_back(std::move(con));
    return row;
}

int MilpModel::find(VarKind kind, int entity, int t) const {
    auto it = index_.find(VarRef{kind, entity, t});
    return it == index_.end() ? -1 : it->second;
}

int MilpModel::column(VarKind kind, int entity, int t) const {
    int col = find(kind, entity, t);
    if (col < 0)
        throw std::logic_error("unregistered variable kind=" + std::to_string((int)kind) +
                               " entity=" + std::to_string(entity) + " t=" + std::to_string(t));
    return col;
}

const LinearConstraint* MilpModel::find_con(const std::string& tag) const {
    int row = con_row(tag);
    return row < 0 ? nullptr : &cons[row];
}

int MilpModel::con_row(const std::string& tag) const {
    auto it = con_index_.find(tag);
    return it == con_index_.end() ? -1 : it->second;
}

std::string MilpModel::tag_of(const std::string& family, int entity, int t) {
    return family + "_" + std::to_string(entity) + "_" + std::to_string(t);
}

std::string tag_family(const std::string& tag) {
    auto pos = tag.find('_');
    return pos == std::string::npos ? tag : tag.substr(0, pos);
}

}  // namespace vts
