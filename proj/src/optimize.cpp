#include "qtherm/optimize.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtherm {

const char* objective_name(Objective obj) {
  switch (obj) {
    case Objective::FI: return "fi";
    case Objective::QFI: return "qfi";
    case Objective::PE: return "pe";
  }
  return "?";
}

Objective objective_from_name(const std::string& name) {
  if (name == "fi") return Objective::FI;
  if (name == "qfi") return Objective::QFI;
  if (name == "pe") return Objective::PE;
  throw std::domain_error("unknown objective: " + name);
}

double evaluate_objective(Objective obj, const ModelParams& p) {
  const ProbeState ps = probe_state_decohered(p);
  switch (obj) {
    case Objective::FI: return fisher_population(ps);
    case Objective::QFI: return qfi_bloch(bloch(ps));
    case Objective::PE: return ps.rho_ee;
  }
  throw std::logic_error("unreachable");
}

OptimumResult maximize_over_time(const OptimizeRequest& req) {
  if (!(req.tau_lo >= 0.0) || !(req.tau_hi >= req.tau_lo) ||
      !std::isfinite(req.tau_hi))
    throw std::domain_error("maximize_over_time: invalid search interval");
  if (!(req.tol > 0.0)) throw std::domain_error("maximize_over_time: tol <= 0");
  if (req.coarse_points < 1)
    throw std::domain_error("maximize_over_time: coarse_points < 1");

  OptimumResult res;
  auto f = [&](double tau) {
    ModelParams p = req.fixed;
    p.tau = tau;
    ++res.evaluations;
    return evaluate_objective(req.objective, p);
  };

  // Coarse bracketing pass. Strict ">" keeps the smallest tau on ties.
  const int m = req.coarse_points;
  const double span = req.tau_hi - req.tau_lo;
  std::vector<double> grid(m), val(m);
  int best = 0;
  for (int i = 0; i < m; ++i) {
    grid[i] = m == 1 ? req.tau_lo : req.tau_lo + span * i / (m - 1);
    val[i] = f(grid[i]);
    if (val[i] > val[best]) best = i;
  }

  double a = grid[best > 0 ? best - 1 : best];
  double b = grid[best + 1 < m ? best + 1 : best];
  res.bracket = {a, b};
  double best_x = grid[best];
  double best_f = val[best];

  if (best_f <= 0.0) {
    res.degenerate = true;
    res.arg = best_x;
    res.value = best_f;
    return res;
  }

  // Golden-section refinement inside the winning bracket.
  constexpr double invphi = 0.6180339887498949;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  auto consider = [&](double x, double fx) {
    if (fx > best_f || (fx == best_f && x < best_x)) {
      best_f = fx;
      best_x = x;
    }
  };
  consider(c, fc);
  consider(d, fd);
  while (b - a > req.tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
      consider(d, fd);
    }
  }

  res.bracket = {a, b};
  res.arg = best_x;
  res.value = best_f;
  return res;
}

}  // namespace qtherm
