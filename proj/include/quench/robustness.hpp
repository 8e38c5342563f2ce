#pragma once

#include <cstdint>
#include <vector>

#include "quench/evolve.hpp"

namespace quench {

struct NoiseStudyConfig {
  std::vector<double> delta_grid;  // noise strengths, >= 0
  int n_realizations = 500;
  std::uint64_t rng_seed = 0;
  Pulse base_pulse;
  int n_spins = 0;
  int threads = 0;
  bool keep_samples = false;  // retain every realization's density
};

struct DeltaStatistics {
  double delta = 0.0;
  double mean_density = 0.0;
  double ci_halfwidth = 0.0;  // 1.96 * standard error over realizations
  int n_realizations = 0;
  std::vector<double> samples;  // filled when keep_samples is set
};

struct RobustnessResult {
  std::vector<DeltaStatistics> per_delta;
};

/// Dynamical pulse noise: every interior sample is shifted independently by
/// a fresh draw from Uniform[-delta/2, delta/2]; the density is averaged
/// over realizations with a normal-approximation 95% confidence interval.
/// The generator is counter-based and keyed by (seed, delta index,
/// realization, time index), so results are bit-identical for a given seed
/// regardless of the thread count.
RobustnessResult dynamical_noise_study(const NoiseStudyConfig& cfg);

/// Defect density when the initial states are prepared at g_i + delta while
/// the pulse itself is unchanged. Deterministic.
double initial_state_error(const Pulse& pulse, const ChainConfig& chain,
                           double delta, int threads = 0);

struct SpinCountResult {
  int n_plus = 0;
  int n_minus = 0;
  double rho_plus = 0.0;
  double rho_minus = 0.0;
  double mean = 0.0;
};

/// Defect density when the same pulse drives chains of N(1 +- delta) spins,
/// rounded to the nearest even size (ties toward +infinity).
SpinCountResult spin_count_error(const Pulse& pulse, const ChainConfig& chain,
                                 double delta, int threads = 0);

/// Nearest even integer; exact half-way cases round toward +infinity.
int round_even(double x);

/// Deterministic keyed uniform draw on [0, 1).
double counter_uniform(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                       std::uint64_t c);

}  // namespace quench
