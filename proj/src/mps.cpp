#include "vts/mps.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace vts {

namespace {

constexpr const char* kObjRow = "COST";

std::string num(double v) {
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
}

char mps_sense(char sense) {
    switch (sense) {
        case '<': return 'L';
        case '>': return 'G';
        case '=': return 'E';
    }
    throw std::logic_error("bad sense");
}

}  // namespace

std::string model_to_mps(const MilpModel& model) {
    std::ostringstream os;
    os << "NAME " << scheme_name(model.scheme) << "\n";
    os << "ROWS\n";
    os << " N " << kObjRow << "\n";
    for (const auto& con : model.cons)
        os << " " << mps_sense(con.sense) << " " << con.tag << "\n";

    // Column-major entries: objective first, then each row's coefficient.
    std::vector<std::vector<std::pair<std::string, double>>> entries(model.vars.size());
    for (size_t i = 0; i < model.vars.size(); ++i)
        if (model.vars[i].obj != 0.0) entries[i].push_back({kObjRow, model.vars[i].obj});
    for (const auto& con : model.cons)
        for (const auto& [col, coef] : con.terms) entries[col].push_back({con.tag, coef});

    os << "COLUMNS\n";
    bool in_int = false;
    int marker = 0;
    for (size_t i = 0; i < model.vars.size(); ++i) {
        const Variable& v = model.vars[i];
        if (v.is_integer != in_int) {
            os << "    MARKER" << marker++ << " 'MARKER' "
               << (v.is_integer ? "'INTORG'" : "'INTEND'") << "\n";
            in_int = v.is_integer;
        }
        if (entries[i].empty()) {
            // Register columns that appear nowhere else.
            os << "    " << v.name << " " << kObjRow << " 0\n";
            continue;
        }
        for (const auto& [row, coef] : entries[i])
            os << "    " << v.name << " " << row << " " << num(coef) << "\n";
    }
    if (in_int) os << "    MARKER" << marker++ << " 'MARKER' 'INTEND'\n";

    os << "RHS\n";
    for (const auto& con : model.cons)
        if (con.rhs != 0.0) os << "    RHS " << con.tag << " " << num(con.rhs) << "\n";

    os << "BOUNDS\n";
    for (const auto& v : model.vars) {
        if (v.lb == v.ub) {
            os << " FX BND " << v.name << " " << num(v.lb) << "\n";
            continue;
        }
        if (std::isinf(v.lb) && std::isinf(v.ub)) {
            os << " FR BND " << v.name << "\n";
            continue;
        }
        if (std::isinf(v.lb))
            os << " MI BND " << v.name << "\n";
        else
            os << " LO BND " << v.name << " " << num(v.lb) << "\n";
        if (!std::isinf(v.ub)) os << " UP BND " << v.name << " " << num(v.ub) << "\n";
    }
    os << "ENDATA\n";
    return os.str();
}

std::string model_to_lp(const MilpModel& model) {
    std::ostringstream os;
    os << "\\ " << scheme_name(model.scheme) << "\n";
    os << "Minimize\n obj:";
    bool first = true;
    for (const auto& v : model.vars) {
        if (v.obj == 0.0) continue;
        os << (v.obj >= 0 && !first ? " + " : " ") << num(v.obj) << " " << v.name;
        first = false;
    }
    if (first) os << " 0";
    os << "\nSubject To\n";
    for (const auto& con : model.cons) {
        os << " " << con.tag << ":";
        for (const auto& [col, coef] : con.terms)
            os << (coef >= 0 ? " + " : " - ") << num(std::abs(coef)) << " "
               << model.vars[col].name;
        switch (con.sense) {
            case '<': os << " <= "; break;
            case '>': os << " >= "; break;
            case '=': os << " = "; break;
        }
        os << num(con.rhs) << "\n";
    }
    os << "Bounds\n";
    for (const auto& v : model.vars) {
        if (v.lb == v.ub) {
            os << " " << v.name << " = " << num(v.lb) << "\n";
        } else if (std::isinf(v.lb) && std::isinf(v.ub)) {
            os << " " << v.name << " free\n";
        } else if (std::isinf(v.ub)) {
            os << " " << v.name << " >= " << num(v.lb) << "\n";
        } else if (std::isinf(v.lb)) {
            os << " " << v.name << " <= " << num(v.ub) << "\n";
        } else {
            os << " " << num(v.lb) << " <= " << v.name << " <= " << num(v.ub) << "\n";
        }
    }
    bool any_int = false;
    for (const auto& v : model.vars) any_int |= v.is_integer;
    if (any_int) {
        os << "Generals\n";
        for (const auto& v : model.vars)
            if (v.is_integer) os << " " << v.name << "\n";
    }
    os << "End\n";
    return os.str();
}

void export_model(const MilpModel& model, const std::string& path, ExportFormat format) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write model file: " + path);
    out << (format == ExportFormat::Mps ? model_to_mps(model) : model_to_lp(model));
    if (!out) throw std::runtime_error("write failure: " + path);
}

// ---------------------------------------------------------------------------
// Free-format MPS reader

MilpModel model_from_mps(const std::string& text) {
    MilpModel m;
    std::map<std::string, int> row_index;   // constraint rows only
    std::map<std::string, int> col_index;
    std::string obj_row;

    enum Section { None, Rows, Columns, Rhs, Ranges, Bounds, Done } section = None;
    bool integer_block = false;

    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    auto parse_err = [&](const std::string& what) {
        throw std::runtime_error("MPS line " + std::to_string(lineno) + ": " + what);
    };

    auto ensure_col = [&](const std::string& name) {
        auto it = col_index.find(name);
        if (it != col_index.end()) return it->second;
        int col = m.add_var({VarKind::Other, 0, 0}, name, 0.0, kInf, integer_block);
        col_index.emplace(name, col);
        return col;
    };

    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '*') continue;
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string w; ls >> w;) tok.push_back(w);
        if (tok.empty()) continue;

        if (line[0] != ' ' && line[0] != '\t') {
            const std::string& kw = tok[0];
            if (kw == "NAME") section = None;
            else if (kw == "ROWS") section = Rows;
            else if (kw == "COLUMNS") section = Columns;
            else if (kw == "RHS") section = Rhs;
            else if (kw == "RANGES") section = Ranges;
            else if (kw == "BOUNDS") section = Bounds;
            else if (kw == "ENDATA") { section = Done; break; }
            else parse_err("unknown section " + kw);
            continue;
        }

        switch (section) {
            case Rows: {
                if (tok.size() != 2) parse_err("expected <sense> <name>");
                char s = tok[0][0];
                if (s == 'N') {
                    if (obj_row.empty()) obj_row = tok[1];
                } else if (s == 'L' || s == 'G' || s == 'E') {
                    LinearConstraint con;
                    con.sense = s == 'L' ? '<' : s == 'G' ? '>' : '=';
                    con.tag = tok[1];
                    row_index.emplace(tok[1], m.add_con(std::move(con)));
                } else {
                    parse_err("bad row sense");
                }
                break;
            }
            case Columns: {
                if (tok.size() >= 3 && tok[1] == "'MARKER'") {
                    integer_block = tok[2] == "'INTORG'";
                    break;
                }
                if (tok.size() < 3 || tok.size() % 2 == 0) parse_err("bad COLUMNS record");
                int col = ensure_col(tok[0]);
                for (size_t i = 1; i + 1 < tok.size(); i += 2) {
                    double coef = std::stod(tok[i + 1]);
                    if (tok[i] == obj_row)
                        m.vars[col].obj += coef;
                    else {
                        auto it = row_index.find(tok[i]);
                        if (it == row_index.end()) parse_err("unknown row " + tok[i]);
                        if (coef != 0.0) m.cons[it->second].terms.push_back({col, coef});
                    }
                }
                break;
            }
            case Rhs: {
                if (tok.size() < 3 || tok.size() % 2 == 0) parse_err("bad RHS record");
                for (size_t i = 1; i + 1 < tok.size(); i += 2) {
                    auto it = row_index.find(tok[i]);
                    if (it == row_index.end()) parse_err("unknown row " + tok[i]);
                    m.cons[it->second].rhs = std::stod(tok[i + 1]);
                }
                break;
            }
            case Ranges:
                parse_err("RANGES section not supported");
                break;
            case Bounds: {
                if (tok.size() < 3) parse_err("bad BOUNDS record");
                const std::string& type = tok[0];
                int col = ensure_col(tok[2]);
                Variable& v = m.vars[col];
                double val = tok.size() > 3 ? std::stod(tok[3]) : 0.0;
                if (type == "UP") v.ub = val;
                else if (type == "UI") { v.ub = val; v.is_integer = true; }
                else if (type == "LO") v.lb = val;
                else if (type == "LI") { v.lb = val; v.is_integer = true; }
                else if (type == "FX") v.lb = v.ub = val;
                else if (type == "FR") { v.lb = -kInf; v.ub = kInf; }
                else if (type == "MI") v.lb = -kInf;
                else if (type == "PL") v.ub = kInf;
                else if (type == "BV") { v.lb = 0; v.ub = 1; v.is_integer = true; }
                else parse_err("unsupported bound type " + type);
                break;
            }
            case None:
            case Done:
                break;
        }
    }
    if (section != Done) throw std::runtime_error("MPS file missing ENDATA");
    return m;
}

MilpModel import_mps(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open MPS file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return model_from_mps(ss.str());
}

}  // namespace vts
