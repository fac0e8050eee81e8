#pragma once

#include <map>
#include <string>
#include <vector>

#include "qtherm/optimize.hpp"

namespace qtherm {

struct Axis {
  std::string name;          // one of beta, tau, theta, phi, gamma, a, b
  std::vector<double> grid;  // finite, nonempty
};

// Rectangular result grid, row-major over the axes in declaration order.
struct SweepTable {
  std::vector<Axis> axes;
  std::vector<double> values;
  std::map<std::string, std::string> metadata;
};

// Overwrites the named field of p with x. Throws on unknown names.
void apply_axis_value(ModelParams& p, const std::string& name, double x);

// Serial reference implementation, kept as the ground truth for the
// OpenMP kernel.
SweepTable sweep_serial(const std::vector<Axis>& axes, Objective obj,
                        const ModelParams& base);

// OpenMP-parallel sweep. Cells are keyed by flat index, so the result is
// identical to sweep_serial bit for bit regardless of scheduling.
SweepTable sweep(const std::vector<Axis>& axes, Objective obj,
                 const ModelParams& base);

}  // namespace qtherm
