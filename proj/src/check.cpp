#include "vts/check.hpp"

#include <cmath>
#include <stdexcept>

namespace vts {

double constraint_violation(const LinearConstraint& con, std::span<const double> values) {
    double lhs = 0.0;
    for (const auto& [col, coef] : con.terms) lhs += coef * values[col];
    switch (con.sense) {
        case '<': return lhs - con.rhs;
        case '>': return con.rhs - lhs;
        case '=': return std::abs(lhs - con.rhs);
    }
    throw std::logic_error("bad constraint sense");
}

ViolationReport check_feasibility(const MilpModel& model, std::span<const double> values,
                                  double tol) {
    if (values.size() != model.vars.size())
        throw std::invalid_argument("value vector does not match model columns");
    ViolationReport rep;
    for (size_t i = 0; i < model.vars.size(); ++i) {
        const Variable& v = model.vars[i];
        double viol = std::max(v.lb - values[i], values[i] - v.ub);
        if (viol > rep.max_violation) {
            rep.max_violation = viol;
            rep.worst_tag = "bound:" + v.name;
        }
        if (viol > tol) ++rep.violated_rows;
    }
    for (const auto& con : model.cons) {
        double viol = constraint_violation(con, values);
        if (viol > rep.max_violation) {
            rep.max_violation = viol;
            rep.worst_tag = con.tag;
        }
        if (viol > tol) ++rep.violated_rows;
    }
    return rep;
}

}  // namespace vts
