#include "qtherm/mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "qtherm/metrics.hpp"
#include "qtherm/probe.hpp"
#include "qtherm/version.hpp"

namespace qtherm {

void ExperimentSpec::validate() const {
  true_params.validate();
  if (shots < 1) throw std::domain_error("experiment: shots must be >= 1");
  if (reps < 1) throw std::domain_error("experiment: reps must be >= 1");
  if (!(beta_window.first > 0.0) || !(beta_window.second > beta_window.first))
    throw std::domain_error("experiment: beta window must be a proper interval");
  if (true_params.beta < beta_window.first ||
      true_params.beta > beta_window.second)
    throw std::domain_error("experiment: beta window must contain beta_true");
}

long sample_outcomes(double p_e, long shots, CounterRng& rng) {
  if (!(p_e >= 0.0 && p_e <= 1.0))
    throw std::domain_error("sample_outcomes: p_e outside [0, 1]");
  if (shots < 1) throw std::domain_error("sample_outcomes: shots must be >= 1");
  long k = 0;
  for (long i = 0; i < shots; ++i)
    if (rng.next_double() < p_e) ++k;
  return k;
}

long sample_outcomes(const ModelParams& params, long shots, CounterRng& rng) {
  const double pe =
      std::clamp(probe_state_decohered(params).rho_ee, 0.0, 1.0);
  return sample_outcomes(pe, shots, rng);
}

namespace {

double excited_prob(const ModelParams& tmpl, double beta) {
  ModelParams p = tmpl;
  p.beta = beta;
  return std::clamp(probe_state_decohered(p).rho_ee, 0.0, 1.0);
}

double log_likelihood(long k, long shots, double pe) {
  const double lo = 1e-300;
  const double lp = std::log(std::max(pe, lo));
  const double lq = std::log(std::max(1.0 - pe, lo));
  return static_cast<double>(k) * lp + static_cast<double>(shots - k) * lq;
}

}  // namespace

MleResult mle_beta(long k, long shots, const ModelParams& tmpl,
                   std::pair<double, double> window, int grid_points,
                   double tol) {
  if (!(window.first > 0.0) || !(window.second > window.first))
    throw std::domain_error("mle_beta: improper window");
  if (k < 0 || k > shots) throw std::domain_error("mle_beta: k outside [0, M]");
  if (grid_points < 2) throw std::domain_error("mle_beta: grid too small");

  auto loglik = [&](double beta) {
    return log_likelihood(k, shots, excited_prob(tmpl, beta));
  };

  const double lo = window.first, hi = window.second;
  int best = 0;
  double best_ll = -std::numeric_limits<double>::infinity();
  double pe_min = 1.0, pe_max = 0.0;
  std::vector<double> grid(grid_points);
  for (int i = 0; i < grid_points; ++i) {
    grid[i] = lo + (hi - lo) * i / (grid_points - 1);
    const double pe = excited_prob(tmpl, grid[i]);
    pe_min = std::min(pe_min, pe);
    pe_max = std::max(pe_max, pe);
    const double ll = log_likelihood(k, shots, pe);
    if (ll > best_ll) {
      best_ll = ll;
      best = i;
    }
  }
  if (pe_max - pe_min < 1e-12)
    throw std::runtime_error(
        "mle_beta: p_e is constant over the window, beta is not identifiable");

  if (best == 0 || best == grid_points - 1)
    return {grid[best], true};

  double a = grid[best - 1], b = grid[best + 1];
  double best_x = grid[best];
  constexpr double invphi = 0.6180339887498949;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = loglik(c);
  double fd = loglik(d);
  auto consider = [&](double x, double fx) {
    if (fx > best_ll || (fx == best_ll && x < best_x)) {
      best_ll = fx;
      best_x = x;
    }
  };
  consider(c, fc);
  consider(d, fd);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d; d = c; fd = fc;
      c = b - invphi * (b - a);
      fc = loglik(c);
      consider(c, fc);
    } else {
      a = c; c = d; fc = fd;
      d = a + invphi * (b - a);
      fd = loglik(d);
      consider(d, fd);
    }
  }
  return {best_x, false};
}

namespace {

EstimationReport run_reps(const ExperimentSpec& spec, bool parallel) {
  spec.validate();

  const double pe_true =
      std::clamp(probe_state_decohered(spec.true_params).rho_ee, 0.0, 1.0);
  const double fisher = fisher_population(probe_state_decohered(spec.true_params));

  EstimationReport rep;
  rep.estimates.assign(spec.reps,
                       std::numeric_limits<double>::quiet_NaN());
  std::vector<char> boundary(spec.reps, 0), failed(spec.reps, 0);

  auto one_rep = [&](int r) {
    CounterRng rng = CounterRng::stream(spec.seed, static_cast<std::uint64_t>(r));
    const long k = sample_outcomes(pe_true, spec.shots, rng);
    try {
      const MleResult res =
          mle_beta(k, spec.shots, spec.true_params, spec.beta_window);
      rep.estimates[r] = res.beta_hat;
      boundary[r] = res.boundary ? 1 : 0;
    } catch (const std::exception&) {
      failed[r] = 1;
    }
  };

  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < spec.reps; ++r) one_rep(r);
  } else {
    for (int r = 0; r < spec.reps; ++r) one_rep(r);
  }

  // Boundary-censored estimates are reported but excluded from the moments.
  double sum = 0.0;
  long n = 0;
  for (int r = 0; r < spec.reps; ++r) {
    rep.boundary_hits += boundary[r];
    rep.failures += failed[r];
    if (!boundary[r] && !failed[r]) {
      sum += rep.estimates[r];
      ++n;
    }
  }
  rep.mean = n > 0 ? sum / n : std::numeric_limits<double>::quiet_NaN();
  double ss = 0.0;
  if (n > 1) {
    for (int r = 0; r < spec.reps; ++r)
      if (!boundary[r] && !failed[r]) {
        const double d = rep.estimates[r] - rep.mean;
        ss += d * d;
      }
    rep.variance = ss / (n - 1);
  }
  rep.cr_ratio = rep.variance * static_cast<double>(spec.shots) * fisher;

  char buf[64];
  auto put = [&](const std::string& key, double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    rep.metadata[key] = buf;
  };
  rep.metadata["tool_version"] = kVersion;
  rep.metadata["generator"] = CounterRng::kName;
  rep.metadata["seed"] = std::to_string(spec.seed);
  rep.metadata["shots"] = std::to_string(spec.shots);
  rep.metadata["reps"] = std::to_string(spec.reps);
  rep.metadata["likelihood_grid_points"] = "401";
  put("beta_true", spec.true_params.beta);
  put("window_lo", spec.beta_window.first);
  put("window_hi", spec.beta_window.second);
  put("p_e", pe_true);
  put("fisher", fisher);
  return rep;
}

}  // namespace

EstimationReport run_experiment(const ExperimentSpec& spec) {
  return run_reps(spec, true);
}

EstimationReport run_experiment_serial(const ExperimentSpec& spec) {
  return run_reps(spec, false);
}

}  // namespace qtherm
