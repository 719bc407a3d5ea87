#pragma once

#include <span>
#include <string>
#include <vector>

#include "vts/model.hpp"

namespace vts {

// Signed violation of one row at the given point: positive means violated.
double constraint_violation(const LinearConstraint& con, std::span<const double> values);

struct ViolationReport {
    double max_violation = 0.0;
    std::string worst_tag;
    int violated_rows = 0;  // rows exceeding tol
};

ViolationReport check_feasibility(const MilpModel& model, std::span<const double> values,
                                  double tol = 1e-6);

}  // namespace vts
