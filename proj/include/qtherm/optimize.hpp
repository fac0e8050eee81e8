#pragma once

#include <numbers>
#include <string>
#include <utility>

#include "qtherm/metrics.hpp"
#include "qtherm/params.hpp"

namespace qtherm {

enum class Objective { FI, QFI, PE };

const char* objective_name(Objective obj);
Objective objective_from_name(const std::string& name);

// Objective value at a single parameter point (decohered dynamics; b = 0
// falls through to the unitary case bit-exactly).
double evaluate_objective(Objective obj, const ModelParams& p);

struct OptimizeRequest {
  Objective objective = Objective::FI;
  double tau_lo = 0.0;
  double tau_hi = 2.0 * std::numbers::pi;
  double tol = 1e-6;        // argument tolerance of the refinement
  int coarse_points = 2001; // uniform bracketing grid
  ModelParams fixed{};      // tau is overwritten during the search
};

struct OptimumResult {
  double arg = 0.0;    // tau_max
  double value = 0.0;  // objective at the maximum
  long evaluations = 0;
  std::pair<double, double> bracket{0.0, 0.0};
  bool degenerate = false;  // objective identically zero over the interval
};

// Global maximum over the interval: coarse grid selects the best bracket,
// golden-section refinement polishes it. Ties break toward smaller tau.
OptimumResult maximize_over_time(const OptimizeRequest& req);

}  // namespace qtherm
