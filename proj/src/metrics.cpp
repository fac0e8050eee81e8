#include "qtherm/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qtherm/kahan.hpp"

namespace qtherm {

namespace {

// (dp)^2 / p with the model's 0/0 limit defined as 0. A pinned probability
// with a nonzero derivative cannot occur in this model and is flagged as
// infinity.
double likelihood_term(double p, double dp) {
  if (p <= 0.0) {
    return std::abs(dp) < 1e-150 ? 0.0
                                 : std::numeric_limits<double>::infinity();
  }
  return dp * dp / p;
}

struct Vec2 {
  std::complex<double> a, b;
};

std::complex<double> dot(const Vec2& u, const Vec2& v) {
  return std::conj(u.a) * v.a + std::conj(u.b) * v.b;
}

// Eigenvector of the Hermitian matrix [[a, c], [conj(c), d]] for eigenvalue
// lambda, choosing the better-conditioned of the two column formulations.
Vec2 eigenvector(double a, double d, const std::complex<double>& c,
                 double lambda) {
  Vec2 v1{c, std::complex<double>(lambda - a, 0.0)};
  Vec2 v2{std::complex<double>(lambda - d, 0.0), std::conj(c)};
  const double n1 = std::norm(v1.a) + std::norm(v1.b);
  const double n2 = std::norm(v2.a) + std::norm(v2.b);
  Vec2 v = n1 >= n2 ? v1 : v2;
  double nn = std::sqrt(std::norm(v.a) + std::norm(v.b));
  if (nn == 0.0) {
    // exactly diagonal matrix
    return lambda == a ? Vec2{{1.0, 0.0}, {0.0, 0.0}}
                       : Vec2{{0.0, 0.0}, {1.0, 0.0}};
  }
  v.a /= nn;
  v.b /= nn;
  return v;
}

struct Spectrum {
  double lp, lm;  // rho_+, rho_-
  Vec2 vp, vm;
  double dlp, dlm;             // Hellmann-Feynman eigenvalue derivatives
  std::complex<double> cross;  // <psi_-| d_rho |psi_+>
};

std::complex<double> sandwich(const Vec2& u, double da,
                              const std::complex<double>& dc, double dd,
                              const Vec2& v) {
  const std::complex<double> top = da * v.a + dc * v.b;
  const std::complex<double> bot = std::conj(dc) * v.a + dd * v.b;
  return std::conj(u.a) * top + std::conj(u.b) * bot;
}

Spectrum decompose(const ProbeState& ps) {
  const double a = ps.rho_ee;
  const double d = 1.0 - ps.rho_ee;
  const std::complex<double>& c = ps.rho_eg;
  const double half_diff = 0.5 * (a - d);
  const double s = std::sqrt(half_diff * half_diff + std::norm(c));
  if (2.0 * s <= kDegeneracyTol)
    throw std::invalid_argument(
        "qfi_eigen/sld: degenerate probe spectrum, use qfi_bloch");

  Spectrum sp;
  sp.lp = 0.5 + s;
  // 0.5 - s cancels catastrophically for near-pure states; the determinant
  // a*d - |c|^2 is formed from products only, so lm = det / lp keeps full
  // relative accuracy.
  sp.lm = (a * d - std::norm(c)) / sp.lp;
  sp.vp = eigenvector(a, d, c, sp.lp);
  sp.vm = eigenvector(a, d, c, sp.lm);

  const double da = ps.d_rho_ee;
  const double dd = -ps.d_rho_ee;
  const std::complex<double>& dc = ps.d_rho_eg;
  sp.dlp = sandwich(sp.vp, da, dc, dd, sp.vp).real();
  sp.dlm = sandwich(sp.vm, da, dc, dd, sp.vm).real();
  sp.cross = sandwich(sp.vm, da, dc, dd, sp.vp);
  return sp;
}

}  // namespace

double fisher_population(const ProbeState& ps) {
  const double pe = ps.rho_ee;
  return likelihood_term(pe, ps.d_rho_ee) +
         likelihood_term(1.0 - pe, -ps.d_rho_ee);
}

double qfi_bloch(const BlochVector& bv) {
  const auto& r = bv.r;
  const auto& dr = bv.dr;
  const double n2 = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
  if (n2 > 1.0 + 3e-12)
    throw std::domain_error("qfi_bloch: Bloch vector outside the unit ball");
  const double d2 = dr[0] * dr[0] + dr[1] * dr[1] + dr[2] * dr[2];
  const double rd = r[0] * dr[0] + r[1] * dr[1] + r[2] * dr[2];
  const double gap = bv.gap >= 0.0 ? bv.gap : 1.0 - n2;
  if (gap < kPurityTol) {
    if (std::abs(rd) >= 1e-8)
      throw std::runtime_error(
          "qfi_bloch: pure-state branch with |r.dr| >= 1e-8; the Bloch "
          "norm must be stationary on pure families");
    return d2;
  }
  if (n2 < 1e-24) return d2;  // maximally mixed: kappa = 0
  return d2 + rd * rd / gap;
}

double qfi_eigen(const ProbeState& ps) {
  const Spectrum sp = decompose(ps);
  const double gap = sp.lp - sp.lm;
  const double kappa = gap * gap / (sp.lp + sp.lm);
  // |<psi_-|d psi_+>| = |<psi_-|d_rho|psi_+>| / (rho_+ - rho_-), and the
  // conjugate overlap has the same magnitude.
  const double overlap_sq = std::norm(sp.cross) / (gap * gap);
  return likelihood_term(sp.lp, sp.dlp) + likelihood_term(sp.lm, sp.dlm) +
         2.0 * kappa * (2.0 * overlap_sq);
}

SldOperator sld(const ProbeState& ps) {
  const Spectrum sp = decompose(ps);

  const double coeff_p = sp.lp > 0.0 ? sp.dlp / sp.lp : 0.0;
  const double coeff_m =
      sp.lm > 1e-300 ? sp.dlm / sp.lm
                     : (std::abs(sp.dlm) < 1e-150
                            ? 0.0
                            : std::numeric_limits<double>::infinity());
  const std::complex<double> off =
      2.0 / (sp.lp + sp.lm) * std::conj(sp.cross);  // <psi_+|d_rho|psi_->

  SldOperator out;
  out.eigvals = {sp.lp, sp.lm};
  // L = cp |+><+| + cm |-><-| + off |+><-| + conj(off) |-><+|
  const Vec2& p = sp.vp;
  const Vec2& m = sp.vm;
  auto outer = [](const std::complex<double>& x, const std::complex<double>& y) {
    return x * std::conj(y);
  };
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const std::complex<double> pi = i == 0 ? p.a : p.b;
      const std::complex<double> pj = j == 0 ? p.a : p.b;
      const std::complex<double> mi = i == 0 ? m.a : m.b;
      const std::complex<double> mj = j == 0 ? m.a : m.b;
      out.matrix[i][j] = coeff_p * outer(pi, pj) + coeff_m * outer(mi, mj) +
                         off * outer(pi, mj) + std::conj(off) * outer(mi, pj);
    }
  }
  return out;
}

double rho_plus_closed_form(double beta, double tau, double gamma,
                            const TruncationPolicy& trunc) {
  if (!(tau >= 0.0)) throw std::domain_error("rho_plus_closed_form: tau < 0");
  const int nmax = fock_cutoff(beta, trunc);
  CompensatedSum acc;
  for (int n = 1; n <= nmax; ++n) {
    const double s = std::sin(0.5 * std::sqrt(gamma * gamma + 4.0 * n) * tau);
    acc.add(thermal_weight(n, beta) * s * s * (n / (n + 0.25 * gamma * gamma)));
  }
  return acc.value();
}

double cramer_rao_bound(double fisher, long shots) {
  if (shots < 1) throw std::domain_error("cramer_rao_bound: shots must be >= 1");
  if (!(fisher > 0.0)) return std::numeric_limits<double>::infinity();
  return 1.0 / (fisher * static_cast<double>(shots));
}

FisherReport fisher_report(const ProbeState& ps) {
  FisherReport rep;
  rep.fi = fisher_population(ps);
  const BlochVector bv = bloch(ps);
  rep.qfi = qfi_bloch(bv);
  rep.crb = cramer_rao_bound(rep.fi);
  rep.qcrb = cramer_rao_bound(rep.qfi);
  const double n2 =
      bv.r[0] * bv.r[0] + bv.r[1] * bv.r[1] + bv.r[2] * bv.r[2];
  rep.degenerate = n2 < kDegeneracyTol * kDegeneracyTol;
  rep.pure = (bv.gap >= 0.0 ? bv.gap : 1.0 - n2) < kPurityTol;
  return rep;
}

}  // namespace qtherm
