#pragma once

// Multi-start Nelder-Mead maximizer shared by the information criterion and
// the Bell-setting searches.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace corrbell {

struct OptimizerOptions {
  int restarts = 32;                 // low-discrepancy starts, on top of warm starts
  std::uint64_t seed = 0;
  double diameter_tol = 1e-9;        // simplex diameter at convergence
  int max_evaluations = 20000;       // per start
  double initial_step = 0.6;         // simplex edge in radians
};

struct OptimizerReport {
  int starts = 0;                    // warm starts + restarts actually run
  int restarts = 0;
  long long evaluations = 0;
  int iterations = 0;                // of the winning start
  bool converged = false;            // winning start reached diameter_tol
  double residual = 0.0;             // final simplex diameter of the winning start
  int best_start = -1;
};

struct OptimizerResult {
  std::vector<double> argmax;
  double value = 0.0;
  OptimizerReport report;
};

using Objective = std::function<double(std::span<const double>)>;

/// Single Nelder-Mead run maximizing `f` from `start`.
struct LocalRun {
  std::vector<double> x;
  double value;
  int iterations;
  int evaluations;
  bool converged;
  double diameter;
};
LocalRun nelder_mead_maximize(const Objective& f, std::span<const double> start,
                              const OptimizerOptions& opts);

/// Runs every warm start, then `opts.restarts` starts taken from a Halton
/// sequence with a seeded Cranley-Patterson shift scaled to
/// [0, period_d) per coordinate. Ties are broken by the lowest start index.
OptimizerResult multistart_maximize(const Objective& f, std::span<const double> periods,
                                    const std::vector<std::vector<double>>& warm_starts,
                                    const OptimizerOptions& opts);

/// First `count` points of the shifted Halton sequence in [0,1)^dim.
std::vector<std::vector<double>> halton_points(int dim, int count, std::uint64_t seed);

}  // namespace corrbell
