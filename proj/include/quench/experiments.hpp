#pragma once

#include <map>
#include <string>
#include <vector>

#include "quench/optimize.hpp"

namespace quench {

struct PowerSearchConfig {
  std::vector<double> initial_rs{0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
  int n_samples = kDefaultSamples;
  int max_iters = 200;
  double step_size = 1.0;
  double grad_tol = -1.0;
  int threads = 0;  // parallelism of each objective/gradient evaluation
};

struct PowerSearchOutcome {
  double r_star = 0.0;
  double defects = 0.0;
  double density = 0.0;
  bool any_converged = false;
  std::vector<OptimizationTrace> traces;  // one per start, same order
};

/// Runs the exponent flow from every configured start and keeps the best
/// final defect count. Starts that stall report converged = false; below
/// the transition different starts may land in different local minima, so
/// the multi-start set is part of the experiment definition.
PowerSearchOutcome find_optimal_power(const ChainConfig& chain,
                                      double half_duration,
                                      const PowerSearchConfig& cfg);

struct SweepPoint {
  int n_spins = 0;
  double tau = 0.0;
  double half_duration = 0.0;
  double r_star = 0.0;
  double rho_optimized = 0.0;
  double rho_linear = 0.0;
  double rho_local_adiabatic = 0.0;
  bool converged = false;  // any start converged
  bool ok = false;         // evaluation completed
  std::string error;
};

struct TransitionEstimate {
  bool found = false;
  double tau_lo = 0.0;   // last grid point before the drop
  double tau_hi = 0.0;   // first grid point after the drop
  double tau_c = 0.0;    // midpoint of the drop interval
  double drop_ratio = 0.0;
};

struct SweepSpec {
  std::vector<int> sizes;
  std::vector<double> taus;  // ascending T/N grid
  PowerSearchConfig search;
  double drop_factor = 10.0;
  int threads = 0;  // work-pool width over grid points
};

struct SweepOutcome {
  std::vector<SweepPoint> points;  // ordered by (size, tau)
  std::map<int, TransitionEstimate> transitions;
  bool all_ok = true;
};

/// Optimized-vs-baseline defect densities over a (N, tau) grid, with the
/// transition located per chain size. Grid points run in a work pool;
/// failures are recorded per point and the sweep continues.
SweepOutcome run_sweep(const SweepSpec& spec);

/// Scans ascending tau for the first adjacent pair whose optimized density
/// drops by at least drop_factor; that onset interval brackets tau_c.
TransitionEstimate locate_transition(const std::vector<SweepPoint>& points,
                                     double drop_factor);

}  // namespace quench
