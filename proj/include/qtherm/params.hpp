#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qtherm {

// Adaptive Fock-space cutoff: summation stops at the smallest N with
// p_N(beta) * (N+1)^2 < tail_eps, hard-capped at n_cap.
struct TruncationPolicy {
  double tail_eps = 1e-14;
  int n_cap = 4096;
};

// Dimensionless parameter bundle. Times and frequencies are rescaled by the
// coupling, the inverse temperature by the resonator quantum.
struct ModelParams {
  double beta = 1.0;    // inverse temperature, > 0
  double theta = 0.0;   // preparation polar angle, [0, pi]
  double phi = 0.0;     // preparation phase, [0, 2*pi)
  double tau = 0.0;     // interaction time, >= 0
  double gamma = 0.0;   // detuning
  double dec_a = 0.0;   // decoherence exponent, [0, 1]
  double dec_b = 0.0;   // decoherence scale, >= 0 (0 = unitary dynamics)
  TruncationPolicy trunc{};

  void validate() const {
    if (!(beta > 0.0) || !std::isfinite(beta))
      throw std::domain_error("beta must be a positive finite real");
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
      throw std::domain_error("theta must lie in [0, pi]");
    if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi))
      throw std::domain_error("phi must lie in [0, 2*pi)");
    if (!(tau >= 0.0) || !std::isfinite(tau))
      throw std::domain_error("tau must be a nonnegative finite real");
    if (!std::isfinite(gamma))
      throw std::domain_error("gamma must be finite");
    if (!(dec_a >= 0.0 && dec_a <= 1.0))
      throw std::domain_error("decoherence exponent a must lie in [0, 1]");
    if (!(dec_b >= 0.0) || !std::isfinite(dec_b))
      throw std::domain_error("decoherence scale b must be nonnegative");
    if (!(trunc.tail_eps > 0.0))
      throw std::domain_error("tail_eps must be positive");
    if (trunc.n_cap < 1)
      throw std::domain_error("n_cap must be a positive integer");
  }
};

}  // namespace qtherm
