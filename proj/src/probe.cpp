#include "qtherm/probe.hpp"

#include <algorithm>
#include <cmath>

#include "qtherm/kahan.hpp"

namespace qtherm {

double thermal_weight(int n, double beta) {
  if (n < 0) throw std::domain_error("thermal_weight: n must be nonnegative");
  if (!(beta > 0.0)) throw std::domain_error("thermal_weight: beta must be positive");
  return std::exp(-beta * n) * (1.0 - std::exp(-beta));
}

double d_thermal_weight(int n, double beta) {
  const double q = std::exp(-beta);
  return thermal_weight(n, beta) * (q / (1.0 - q) - n);
}

double rabi_half_freq(int n, double gamma) {
  if (n < -1) throw std::domain_error("rabi_half_freq: n must be >= -1");
  return 0.5 * std::sqrt(gamma * gamma + 4.0 * (n + 1.0));
}

int fock_cutoff(double beta, const TruncationPolicy& trunc, bool* capped) {
  if (!(beta > 0.0)) throw std::domain_error("fock_cutoff: beta must be positive");
  if (!(trunc.tail_eps > 0.0) || trunc.n_cap < 1)
    throw std::domain_error("fock_cutoff: invalid truncation policy");
  if (capped) *capped = false;
  for (int n = 0; n < trunc.n_cap; ++n) {
    const double w = thermal_weight(n, beta) * (n + 1.0) * (n + 1.0);
    if (w < trunc.tail_eps) return n;
  }
  if (capped) *capped = true;
  return trunc.n_cap;
}

namespace {

struct PerFock {
  double ee;
  std::complex<double> eg;
};

// Matrix elements of the n-th thermal component of the probe state. These
// carry the whole tau/gamma/theta/phi dependence and none of the beta
// dependence.
PerFock per_fock_element(int n, double tau, double gamma, double cos_half_sq,
                         double sin_half_sq,
                         const std::complex<double>& coherence_amp) {
  const double th_n = rabi_half_freq(n, gamma);
  const double th_m = rabi_half_freq(n - 1, gamma);
  const double sn = std::sin(th_n * tau);
  const double cn = std::cos(th_n * tau);
  const double sm = std::sin(th_m * tau);
  const double cm = std::cos(th_m * tau);

  // Detuning weight gamma^2 / (4 theta_n^2) keeps cos^2 + w sin^2 <= 1.
  const double w = gamma * gamma / (4.0 * th_n * th_n);
  const double swap = n > 0 ? n / (n + 0.25 * gamma * gamma) : 0.0;

  PerFock el;
  el.ee = cos_half_sq * (cn * cn + w * sn * sn) + sin_half_sq * swap * sm * sm;

  const double rm = th_m > 0.0 ? gamma / (2.0 * th_m) : 0.0;
  const double rn = gamma / (2.0 * th_n);
  const std::complex<double> left(cm, rm * sm);
  const std::complex<double> right(cn, -rn * sn);
  el.eg = coherence_amp * left * right;
  return el;
}

ProbeState probe_state_core(const ModelParams& p) {
  p.validate();

  bool capped = false;
  const int nmax = fock_cutoff(p.beta, p.trunc, &capped);

  const double cos_theta = std::cos(p.theta);
  const double cos_half_sq = 0.5 * (1.0 + cos_theta);
  const double sin_half_sq = 0.5 * (1.0 - cos_theta);
  const std::complex<double> coherence_amp =
      0.5 * std::sin(p.theta) *
      std::complex<double>(std::cos(p.phi), -std::sin(p.phi));

  // tau = 0 preparation values. Summing residuals against this baseline uses
  // sum_n p_n = 1 and sum_n dp_n = 0 exactly, so a frozen state comes out
  // bit-exact and truncation only touches the time-dependent part.
  const double ee_base = cos_half_sq;
  const std::complex<double> eg_base = coherence_amp;

  CompensatedSum ee, dee, eg_re, eg_im, deg_re, deg_im;
  for (int n = 0; n <= nmax; ++n) {
    const double pn = thermal_weight(n, p.beta);
    const double dpn = d_thermal_weight(n, p.beta);
    const PerFock el =
        per_fock_element(n, p.tau, p.gamma, cos_half_sq, sin_half_sq, coherence_amp);

    double damp = 1.0;
    if (p.dec_b > 0.0)
      damp = std::exp(-p.dec_b * std::pow(1.0 + n, p.dec_a) * p.tau);

    const double ee_n = damp * el.ee + 0.5 * (1.0 - damp);
    const std::complex<double> eg_n = damp * el.eg;

    const double ee_res = ee_n - ee_base;
    const std::complex<double> eg_res = eg_n - eg_base;

    ee.add(pn * ee_res);
    dee.add(dpn * ee_res);
    eg_re.add(pn * eg_res.real());
    eg_im.add(pn * eg_res.imag());
    deg_re.add(dpn * eg_res.real());
    deg_im.add(dpn * eg_res.imag());
  }

  ProbeState ps;
  ps.rho_ee = ee_base + ee.value();
  ps.rho_eg = eg_base + std::complex<double>(eg_re.value(), eg_im.value());
  ps.d_rho_ee = dee.value();
  ps.d_rho_eg = std::complex<double>(deg_re.value(), deg_im.value());
  ps.n_used = nmax;
  ps.truncated = capped;
  return ps;
}

}  // namespace

ProbeState probe_state_unitary(const ModelParams& p) {
  ModelParams q = p;
  q.dec_b = 0.0;
  return probe_state_core(q);
}

ProbeState probe_state_decohered(const ModelParams& p) {
  return probe_state_core(p);
}

BlochVector bloch(const ProbeState& ps) {
  BlochVector bv;
  bv.r = {2.0 * ps.rho_eg.real(), -2.0 * ps.rho_eg.imag(), 2.0 * ps.rho_ee - 1.0};
  bv.dr = {2.0 * ps.d_rho_eg.real(), -2.0 * ps.d_rho_eg.imag(), 2.0 * ps.d_rho_ee};
  bv.gap = std::max(0.0, -4.0 * ps.positivity_defect());
  return bv;
}

}  // namespace qtherm
