#pragma once

#include <array>
#include <complex>

#include "qtherm/probe.hpp"

namespace qtherm {

struct FisherReport {
  double fi = 0.0;    // Fisher information of the population measurement
  double qfi = 0.0;   // quantum Fisher information
  double crb = 0.0;   // single-shot classical Cramer-Rao bound, 1/fi
  double qcrb = 0.0;  // single-shot quantum Cramer-Rao bound, 1/qfi
  bool degenerate = false;  // probe state within tolerance of maximally mixed
  bool pure = false;        // probe state within tolerance of pure
};

// SLD in the {|e>, |g>} basis plus the probe-state spectrum it was built from.
struct SldOperator {
  std::array<double, 2> eigvals{};  // rho_+, rho_-
  std::array<std::array<std::complex<double>, 2>, 2> matrix{};
};

// Spectral-gap threshold below which the eigendecomposition route is refused.
inline constexpr double kDegeneracyTol = 1e-8;
// 1 - |r|^2 threshold for the pure-state branch of the Bloch QFI.
inline constexpr double kPurityTol = 1e-12;

double fisher_population(const ProbeState& ps);

// G = |dr|^2 + (r.dr)^2 / (1 - |r|^2), with pure and degenerate branches.
double qfi_bloch(const BlochVector& bv);

// Eigendecomposition route with first-order perturbative eigenvector
// derivatives. Requires a non-degenerate spectrum.
double qfi_eigen(const ProbeState& ps);

SldOperator sld(const ProbeState& ps);

// Excited-state population for the ground-state preparation (theta = pi),
// as an independent cross-check of the probe-state sum.
double rho_plus_closed_form(double beta, double tau, double gamma,
                            const TruncationPolicy& trunc);

double cramer_rao_bound(double fisher, long shots = 1);

FisherReport fisher_report(const ProbeState& ps);

}  // namespace qtherm
