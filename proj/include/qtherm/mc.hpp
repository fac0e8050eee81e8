#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qtherm/params.hpp"

namespace qtherm {

// Counter-based generator: output i of stream s is a SplitMix64 finalizer
// applied to a Weyl sequence keyed by (seed, s). Streams are independent of
// scheduling, so parallel repetitions reproduce bit for bit.
struct CounterRng {
  static constexpr const char* kName = "splitmix64-counter";

  std::uint64_t key = 0;
  std::uint64_t counter = 0;

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  static CounterRng stream(std::uint64_t seed, std::uint64_t stream_idx) {
    return {mix(seed + 0x9E3779B97F4A7C15ULL * (stream_idx + 1)), 0};
  }

  std::uint64_t next_u64() {
    return mix(key + 0x9E3779B97F4A7C15ULL * (++counter));
  }

  // uniform in [0, 1)
  double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }
};

struct ExperimentSpec {
  ModelParams true_params{};  // ground truth, including beta
  long shots = 1;             // measurements per repetition (M)
  int reps = 1;               // independent repetitions (R)
  std::uint64_t seed = 0;
  std::pair<double, double> beta_window{0.0, 0.0};  // MLE search interval

  void validate() const;
};

struct MleResult {
  double beta_hat = 0.0;
  bool boundary = false;  // maximum pinned at a window endpoint
};

struct EstimationReport {
  std::vector<double> estimates;  // one per repetition; NaN where MLE failed
  int boundary_hits = 0;
  int failures = 0;      // repetitions whose MLE raised an error
  double mean = 0.0;     // over non-boundary, non-failed repetitions
  double variance = 0.0; // unbiased sample variance over the same set
  double cr_ratio = 0.0; // variance * M * F(beta_true)
  std::map<std::string, std::string> metadata;
};

// Number of excited outcomes in `shots` Bernoulli(p_e) draws.
long sample_outcomes(double p_e, long shots, CounterRng& rng);
long sample_outcomes(const ModelParams& params, long shots, CounterRng& rng);

// Maximum-likelihood estimate of beta from k excited outcomes out of M.
// Grid scan over the window plus golden-section refinement.
MleResult mle_beta(long k, long shots, const ModelParams& tmpl,
                   std::pair<double, double> window, int grid_points = 401,
                   double tol = 1e-6);

EstimationReport run_experiment(const ExperimentSpec& spec);
EstimationReport run_experiment_serial(const ExperimentSpec& spec);

}  // namespace qtherm
