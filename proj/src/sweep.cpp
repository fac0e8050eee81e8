#include "qtherm/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "qtherm/version.hpp"

namespace qtherm {

void apply_axis_value(ModelParams& p, const std::string& name, double x) {
  if (name == "beta") p.beta = x;
  else if (name == "tau") p.tau = x;
  else if (name == "theta") p.theta = x;
  else if (name == "phi") p.phi = x;
  else if (name == "gamma") p.gamma = x;
  else if (name == "a") p.dec_a = x;
  else if (name == "b") p.dec_b = x;
  else throw std::domain_error("unknown sweep axis: " + name);
}

namespace {

// Validates every grid value up front; the parallel kernel must not throw.
std::size_t checked_size(const std::vector<Axis>& axes,
                         const ModelParams& base) {
  if (axes.empty()) throw std::domain_error("sweep: no axes given");
  base.validate();
  std::size_t total = 1;
  for (const auto& ax : axes) {
    if (ax.grid.empty()) throw std::domain_error("sweep: empty grid on " + ax.name);
    for (double x : ax.grid) {
      if (!std::isfinite(x))
        throw std::domain_error("sweep: non-finite grid value on " + ax.name);
      ModelParams q = base;
      apply_axis_value(q, ax.name, x);
      q.validate();
    }
    total *= ax.grid.size();
  }
  return total;
}

double cell_value(const std::vector<Axis>& axes, Objective obj,
                  const ModelParams& base, std::size_t flat) {
  ModelParams p = base;
  // row-major: the last axis varies fastest
  for (std::size_t k = axes.size(); k-- > 0;) {
    const std::size_t len = axes[k].grid.size();
    apply_axis_value(p, axes[k].name, axes[k].grid[flat % len]);
    flat /= len;
  }
  return evaluate_objective(obj, p);
}

SweepTable make_table(const std::vector<Axis>& axes, Objective obj,
                      const ModelParams& base, std::size_t total) {
  SweepTable t;
  t.axes = axes;
  t.values.resize(total);
  char buf[64];
  auto put = [&](const std::string& key, double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    t.metadata[key] = buf;
  };
  t.metadata["tool_version"] = kVersion;
  t.metadata["objective"] = objective_name(obj);
  put("beta", base.beta);
  put("theta", base.theta);
  put("phi", base.phi);
  put("tau", base.tau);
  put("gamma", base.gamma);
  put("a", base.dec_a);
  put("b", base.dec_b);
  put("tail_eps", base.trunc.tail_eps);
  t.metadata["n_cap"] = std::to_string(base.trunc.n_cap);
  return t;
}

}  // namespace

SweepTable sweep_serial(const std::vector<Axis>& axes, Objective obj,
                        const ModelParams& base) {
  const std::size_t total = checked_size(axes, base);
  SweepTable t = make_table(axes, obj, base, total);
  for (std::size_t i = 0; i < total; ++i)
    t.values[i] = cell_value(axes, obj, base, i);
  return t;
}

SweepTable sweep(const std::vector<Axis>& axes, Objective obj,
                 const ModelParams& base) {
  const std::size_t total = checked_size(axes, base);
  SweepTable t = make_table(axes, obj, base, total);
  const long long n = static_cast<long long>(total);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < n; ++i)
    t.values[static_cast<std::size_t>(i)] =
        cell_value(axes, obj, base, static_cast<std::size_t>(i));
  return t;
}

}  // namespace qtherm
