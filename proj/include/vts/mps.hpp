#pragma once

#include <string>

#include "vts/model.hpp"

namespace vts {

enum class ExportFormat { Mps, Lp };

// Writes the model in free MPS or CPLEX-style LP text. Row names carry the
// constraint tags.
void export_model(const MilpModel& model, const std::string& path, ExportFormat format);

std::string model_to_mps(const MilpModel& model);
std::string model_to_lp(const MilpModel& model);

// Reads a free-format MPS file back into a model. Variable roles are not
// reconstructed; the result is suitable for solving and objective
// comparison.
MilpModel import_mps(const std::string& path);
MilpModel model_from_mps(const std::string& text);

}  // namespace vts
