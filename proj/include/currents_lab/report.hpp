#pragma once

#include <string>

#include "currents_lab/dynamics.hpp"

namespace currents_lab {

// Single JSON document: experiment, claim, passed, params, tables,
// assertions, notes. Every leaf value is a string except the booleans, so the
// output is byte-identical for equal inputs.
std::string report_json(const ConvergenceReport& report);

// Long format: one "table,row,column,value" line per cell.
std::string report_csv(const ConvergenceReport& report);

}  // namespace currents_lab
