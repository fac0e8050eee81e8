// Benchmark of the OpenMP kernels against their serial reference
// implementations. Also verifies that both paths agree bit for bit.

#include <chrono>
#include <cstdio>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qtherm/dataset.hpp"
#include "qtherm/mc.hpp"
#include "qtherm/sweep.hpp"

using namespace qtherm;

namespace {

double seconds(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp: not enabled (serial build)\n");
#endif

  // sweep kernel: FI over a tau x beta grid
  {
    ModelParams base;
    base.beta = 10.0;
    base.theta = std::numbers::pi;
    std::vector<Axis> axes = {{"beta", logspace(0.5, 15.0, 48)},
                              {"tau", linspace(0.0, 2.0 * std::numbers::pi, 2000)}};

    auto t0 = std::chrono::steady_clock::now();
    const SweepTable serial = sweep_serial(axes, Objective::FI, base);
    const double ts = seconds(t0);

    t0 = std::chrono::steady_clock::now();
    const SweepTable parallel = sweep(axes, Objective::FI, base);
    const double tp = seconds(t0);

    bool identical = serial.values == parallel.values;
    std::printf("sweep   %zu cells: serial %.3fs  openmp %.3fs  speedup %.2fx  bitwise %s\n",
                serial.values.size(), ts, tp, ts / tp,
                identical ? "equal" : "DIFFERENT");
    if (!identical) return 1;
  }

  // Monte Carlo kernel: MLE repetitions
  {
    ExperimentSpec spec;
    spec.true_params.beta = 1.0;
    spec.true_params.theta = std::numbers::pi;
    spec.true_params.tau = std::numbers::pi / 2.0;
    spec.shots = 5000;
    spec.reps = 120;
    spec.seed = 7;
    spec.beta_window = {0.25, 4.0};

    auto t0 = std::chrono::steady_clock::now();
    const EstimationReport serial = run_experiment_serial(spec);
    const double ts = seconds(t0);

    t0 = std::chrono::steady_clock::now();
    const EstimationReport parallel = run_experiment(spec);
    const double tp = seconds(t0);

    bool identical = serial.estimates == parallel.estimates;
    std::printf("mc      %d reps:      serial %.3fs  openmp %.3fs  speedup %.2fx  bitwise %s\n",
                spec.reps, ts, tp, ts / tp, identical ? "equal" : "DIFFERENT");
    if (!identical) return 1;
  }
  return 0;
}
