#pragma once

#include <array>
#include <complex>

#include "qtherm/params.hpp"

namespace qtherm {

// Reduced qubit state after tracing out the thermal mode, together with its
// analytic derivative with respect to beta. Only the independent entries are
// stored: rho_gg = 1 - rho_ee and rho_ge = conj(rho_eg).
struct ProbeState {
  double rho_ee = 0.0;
  std::complex<double> rho_eg{0.0, 0.0};
  double d_rho_ee = 0.0;
  std::complex<double> d_rho_eg{0.0, 0.0};
  int n_used = 0;         // Fock cutoff actually summed to
  bool truncated = false; // n_cap was hit before the tail bound was met

  double rho_gg() const { return 1.0 - rho_ee; }

  // <= 0 for physical states (up to roundoff)
  double positivity_defect() const {
    return std::norm(rho_eg) - rho_ee * (1.0 - rho_ee);
  }
};

// (r_x, r_y, r_z) = (2 Re rho_eg, -2 Im rho_eg, 2 rho_ee - 1) and its
// beta-derivative.
struct BlochVector {
  std::array<double, 3> r{};
  std::array<double, 3> dr{};
  // 1 - |r|^2 = 4 det rho, computed from the matrix elements when available;
  // forming 1 - |r|^2 from r itself loses all precision near the sphere.
  // Negative means "unknown, fall back to 1 - |r|^2".
  double gap = -1.0;
};

// Boltzmann weight p_n = e^{-beta n} (1 - e^{-beta}) and its beta-derivative.
double thermal_weight(int n, double beta);
double d_thermal_weight(int n, double beta);

// Generalized Rabi half-frequency of the n-excitation manifold,
// theta_n = sqrt(gamma^2 + 4(n+1)) / 2. Defined down to n = -1.
double rabi_half_freq(int n, double gamma);

// Smallest cutoff satisfying the truncation policy for this beta.
int fock_cutoff(double beta, const TruncationPolicy& trunc,
                bool* capped = nullptr);

ProbeState probe_state_unitary(const ModelParams& p);
ProbeState probe_state_decohered(const ModelParams& p);

BlochVector bloch(const ProbeState& ps);

}  // namespace qtherm
