#pragma once

#include <functional>
#include <map>
#include <string>

#include "nslice/lp.hpp"

namespace nslice {

// Fixed-format MPS text plus the name-mangling table (MPS names are capped at
// 8 characters, so rows become R0000001..., columns C0000001...). The table is
// JSON: {"objective": "COST", "rows": {mangled: original}, "cols": {...}}.
struct MpsExport {
    std::string mps;
    std::string name_table_json;
};

MpsExport export_mps(const LPModel& model, const std::string& problem_name = "NSLICE");

// Adapter contract for plugging in an external LP solver: it consumes MPS text
// and reports status plus values keyed by the mangled column names.
struct ExternalLPResult {
    LPStatus status = LPStatus::NumericalFailure;
    std::map<std::string, double> values;  // by mangled column name
    double objective_value = 0.0;
};
using ExternalSolver = std::function<ExternalLPResult(const std::string& mps_text)>;

// Exports the model, runs the external solver, and maps values back onto the
// model's variable order.
LPSolution solve_with_external(const LPModel& model, const ExternalSolver& solver);

}  // namespace nslice
