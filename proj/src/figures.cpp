#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "qtherm/dataset.hpp"
#include "qtherm/sweep.hpp"
#include "qtherm/version.hpp"

namespace qtherm {

namespace {

constexpr double kPi = std::numbers::pi;

// short form for column names
std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

ModelParams ground_state_probe(double beta) {
  ModelParams p;
  p.beta = beta;
  p.theta = kPi;
  return p;
}

DatasetFile new_dataset() {
  DatasetFile d;
  d.tool_version = kVersion;
  return d;
}

// One column of objective values along a tau or theta axis, all other
// parameters held at `base`.
std::vector<double> curve(const std::string& axis,
                          const std::vector<double>& grid, Objective obj,
                          const ModelParams& base) {
  return sweep({{axis, grid}}, obj, base).values;
}

// F_M(beta) and tau_max(beta) columns for one setting of gamma/b.
void max_curve(const std::vector<double>& betas, const ModelParams& base,
               double tau_hi, std::vector<double>& fm,
               std::vector<double>& tau_max) {
  const long long n = static_cast<long long>(betas.size());
  fm.assign(betas.size(), 0.0);
  tau_max.assign(betas.size(), 0.0);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) {
    OptimizeRequest req;
    req.objective = Objective::FI;
    req.tau_lo = 0.0;
    req.tau_hi = tau_hi;
    req.fixed = base;
    req.fixed.beta = betas[i];
    const OptimumResult res = maximize_over_time(req);
    fm[i] = res.value;
    tau_max[i] = res.arg;
  }
}

DatasetFile fig_fi_vs_tau(Objective obj, double tau_hi, int points,
                          double dec_b) {
  DatasetFile d = new_dataset();
  const auto taus = linspace(0.0, tau_hi, points);
  ModelParams base = ground_state_probe(10.0);
  base.dec_b = dec_b;
  base.dec_a = dec_b > 0.0 ? 0.1 : 0.0;
  d.params["beta"] = format_double(base.beta);
  d.params["gamma"] = format_double(base.gamma);
  d.params["a"] = format_double(base.dec_a);
  d.params["b"] = format_double(base.dec_b);
  d.params["objective"] = objective_name(obj);
  d.columns.push_back({"tau", taus});
  const double thetas[] = {kPi, 0.95 * kPi, 0.0};
  const char* names[] = {"theta_pi", "theta_095pi", "theta_0"};
  for (int i = 0; i < 3; ++i) {
    ModelParams p = base;
    p.theta = thetas[i];
    d.columns.push_back({std::string(objective_name(obj)) + "_" + names[i],
                         curve("tau", taus, obj, p)});
  }
  return d;
}

DatasetFile fig_fi_vs_theta(Objective obj, int points) {
  DatasetFile d = new_dataset();
  const auto thetas = linspace(0.0, kPi, points);
  ModelParams base;
  base.beta = 10.0;
  d.params["beta"] = format_double(base.beta);
  d.params["gamma"] = format_double(base.gamma);
  d.params["epsilon"] = format_double(0.01);
  d.params["objective"] = objective_name(obj);
  d.columns.push_back({"theta", thetas});
  const double eps = 0.01;
  const double taus[] = {kPi / 2, kPi / 2 + eps, kPi, kPi + eps};
  const char* names[] = {"tau_pi2", "tau_pi2_eps", "tau_pi", "tau_pi_eps"};
  for (int i = 0; i < 4; ++i) {
    ModelParams p = base;
    p.tau = taus[i];
    d.columns.push_back({std::string(objective_name(obj)) + "_" + names[i],
                         curve("theta", thetas, obj, p)});
  }
  return d;
}

DatasetFile fig2(double tau_hi, int points) {
  DatasetFile d = new_dataset();
  const auto taus = linspace(0.0, tau_hi, points);
  d.params["theta"] = format_double(kPi);
  d.params["gamma"] = format_double(0.0);
  d.params["objective"] = "fi";
  d.columns.push_back({"tau", taus});
  for (double beta : {15.0, 10.0, 5.0, 1.0}) {
    d.columns.push_back({"fi_beta_" + label(beta),
                         curve("tau", taus, Objective::FI,
                               ground_state_probe(beta))});
  }
  return d;
}

DatasetFile fig3(double tau_hi, int points) {
  DatasetFile d = new_dataset();
  const auto betas = logspace(1.0, 15.0, points);
  d.params["theta"] = format_double(kPi);
  d.params["tau_interval_hi"] = format_double(tau_hi);
  d.params["objective"] = "fi";
  d.columns.push_back({"beta", betas});
  for (double gamma : {0.0, 1.0, 1.5}) {
    ModelParams base = ground_state_probe(1.0);
    base.gamma = gamma;
    std::vector<double> fm, tmax;
    max_curve(betas, base, tau_hi, fm, tmax);
    const std::string tag = "gamma_" + label(gamma);
    d.columns.push_back({"fm_" + tag, fm});
    d.columns.push_back({"tau_max_" + tag, tmax});
  }
  return d;
}

DatasetFile fig5b(int points) {
  DatasetFile d = new_dataset();
  const auto betas = logspace(1.0, 15.0, points);
  d.params["theta"] = format_double(kPi);
  d.params["gamma"] = format_double(0.0);
  d.params["a"] = format_double(0.1);
  d.params["objective"] = "fi";
  d.columns.push_back({"beta", betas});
  for (double b : {0.0, 1e-5, 1e-4}) {
    ModelParams base = ground_state_probe(1.0);
    base.dec_b = b;
    base.dec_a = 0.1;
    // one common window for all three columns, so the maxima are comparable
    const double tau_hi = 4.0 * kPi;
    std::vector<double> fm, tmax;
    max_curve(betas, base, tau_hi, fm, tmax);
    d.columns.push_back({"fm_b_" + label(b), fm});
  }
  return d;
}

}  // namespace

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names = {
      "fig1a", "fig1b", "fig2", "fig3", "fig4a", "fig4b", "fig5a", "fig5b"};
  return names;
}

DatasetFile make_figure(const std::string& name, const FigureOverrides& ov) {
  const int pts = ov.points.value_or(name == "fig3" || name == "fig5b" ? 60
                                                                       : 401);
  if (pts < 2) throw std::domain_error("figure: points must be >= 2");
  DatasetFile d;
  if (name == "fig1a")
    d = fig_fi_vs_tau(Objective::FI, ov.tau_max.value_or(kPi), pts, 0.0);
  else if (name == "fig1b")
    d = fig_fi_vs_theta(Objective::FI, pts);
  else if (name == "fig2")
    d = fig2(ov.tau_max.value_or(2.0 * kPi), pts);
  else if (name == "fig3")
    d = fig3(ov.tau_max.value_or(2.0 * kPi), pts);
  else if (name == "fig4a")
    d = fig_fi_vs_tau(Objective::QFI, ov.tau_max.value_or(kPi), pts, 0.0);
  else if (name == "fig4b")
    d = fig_fi_vs_theta(Objective::QFI, pts);
  else if (name == "fig5a")
    d = fig_fi_vs_tau(Objective::FI, ov.tau_max.value_or(2.0 * kPi), pts, 1e-5);
  else if (name == "fig5b")
    d = fig5b(pts);
  else
    throw std::domain_error("unknown figure name: " + name);
  d.params["figure"] = name;
  return d;
}

}  // namespace qtherm
