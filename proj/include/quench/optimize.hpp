#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "quench/gradient.hpp"

namespace quench {

struct OptimizerConfig {
  double initial_r = 2.0;
  double step_size = 1.0;   // flow step in s
  double grad_tol = -1.0;   // stop on |dD/ds| <= grad_tol; < 0 = 1e-10 * N
  int max_iters = 10000;
  std::pair<double, double> r_bounds{0.05, 200.0};
  int n_samples = kDefaultSamples;
  int threads = 0;
};

struct TracePoint {
  int iter;
  double s;          // accumulated flow parameter
  double r;          // current exponent (NaN for free-form descent)
  double defects;    // D at this iterate
  double flow_rate;  // |dD/ds|
};

struct OptimizationTrace {
  std::vector<TracePoint> iterates;  // D is non-increasing along these
  bool converged = false;
  bool hit_bounds = false;
  double final_r = 0.0;         // meaningful for the power-law flow
  double final_defects = 0.0;
  std::uint64_t pulse_checksum = 0;
  Pulse final_pulse;
};

/// Gradient flow on the power-law exponent: explicit steps
/// r <- r + step * (dr/ds), dr/ds = -dD/dr evaluated by the chain rule
/// dD/dr = dt * sum_i grad[i] * dg/dr[i]. Backtracks (halving the step)
/// whenever D would increase, so the accepted-iterate D sequence is
/// non-increasing. Stops when |dD/ds| = (dD/dr)^2 <= grad_tol.
OptimizationTrace optimize_power(const ChainConfig& chain, double half_duration,
                                 const OptimizerConfig& cfg);

struct FreeOptimizerConfig {
  double step_size = 0.1;
  double grad_tol = -1.0;  // stop on gradient max-norm; < 0 = 1e-10 * N
  int max_iters = 500;
  // Optional quadratic-difference penalty w * sum (g_{i+1} - g_i)^2 added to
  // the objective; 0 (the default) turns it off.
  double smoothness_weight = 0.0;
  int threads = 0;
};

/// Unrestricted gradient descent on the interior field samples (endpoints
/// stay frozen at 2 and 0), with a backtracking line search enforcing
/// monotone descent. With a nonzero smoothness weight the monotone quantity
/// is the penalized objective; final_defects always reports the plain count.
OptimizationTrace optimize_free(const ChainConfig& chain, const Pulse& start,
                                const FreeOptimizerConfig& cfg);

struct LandscapePoint {
  double r;
  double defects;
};

struct LandscapeScan {
  std::vector<LandscapePoint> points;
  std::vector<int> minima;  // interior indices that are strict local minima
};

/// Evaluates D for power pulses over the given exponent grid. Uses the same
/// evaluation path as optimize_power's objective, so values at equal r are
/// bit-identical.
LandscapeScan landscape_scan(const ChainConfig& chain, double half_duration,
                             const std::vector<double>& r_grid,
                             int n_samples = kDefaultSamples, int threads = 0);

std::uint64_t pulse_checksum(const Pulse& pulse);

}  // namespace quench
