#include "quench/robustness.hpp"

#include <cmath>
#include <stdexcept>

#include "quench/parallel.hpp"

namespace quench {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                       std::uint64_t c) {
  std::uint64_t h = mix64(seed ^ 0x853c49e6748fea9bull);
  h = mix64(h ^ a);
  h = mix64(h ^ b);
  h = mix64(h ^ c);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

RobustnessResult dynamical_noise_study(const NoiseStudyConfig& cfg) {
  if (cfg.n_realizations < 1)
    throw std::invalid_argument("need at least one noise realization");
  for (double d : cfg.delta_grid)
    if (!(d >= 0.0)) throw std::invalid_argument("noise strength must be >= 0");

  const ChainConfig chain = build_chain(cfg.n_spins);
  const int n = cfg.base_pulse.n_samples();

  RobustnessResult result;
  result.per_delta.reserve(cfg.delta_grid.size());

  for (size_t d_idx = 0; d_idx < cfg.delta_grid.size(); ++d_idx) {
    const double delta = cfg.delta_grid[d_idx];
    std::vector<double> rho(cfg.n_realizations);

    parallel_for(
        cfg.n_realizations,
        [&](int rep) {
          Pulse noisy = cfg.base_pulse;
          if (delta > 0.0) {
            // Interior samples only; endpoints keep their exact values.
            for (int i = 1; i + 1 < n; ++i) {
              const double u = counter_uniform(cfg.rng_seed, d_idx, rep, i);
              noisy.samples[i] += delta * (u - 0.5);
            }
          }
          rho[rep] = defect_count(noisy, chain, 1) / chain.n_spins;
        },
        cfg.threads);

    DeltaStatistics stats;
    stats.delta = delta;
    stats.n_realizations = cfg.n_realizations;
    bool all_equal = true;
    for (double v : rho) all_equal &= (v == rho.front());
    double sum = 0.0;
    for (double v : rho) sum += v;
    stats.mean_density = all_equal ? rho.front() : sum / cfg.n_realizations;
    if (cfg.n_realizations > 1 && !all_equal) {
      double ss = 0.0;
      for (double v : rho) {
        const double dlt = v - stats.mean_density;
        ss += dlt * dlt;
      }
      const double stderr_ = std::sqrt(ss / (cfg.n_realizations - 1)) /
                             std::sqrt(static_cast<double>(cfg.n_realizations));
      stats.ci_halfwidth = 1.96 * stderr_;
    }
    if (cfg.keep_samples) stats.samples = std::move(rho);
    result.per_delta.push_back(std::move(stats));
  }
  return result;
}

double initial_state_error(const Pulse& pulse, const ChainConfig& chain,
                           double delta, int threads) {
  const double g_prep = pulse.initial_field() + delta;
  if (!(g_prep >= 0.0))
    throw std::invalid_argument("prepared field g_i + delta must be >= 0");

  std::vector<double> p(chain.n_modes());
  parallel_for(
      chain.n_modes(),
      [&](int m) {
        const double k = chain.momenta[m];
        EvolveOptions opts;
        opts.with_barred = false;
        opts.initial_field = g_prep;
        const ModeEvolution ev = evolve_mode(k, pulse, opts);
        const ModeState target = excited_state(k, pulse.final_field());
        p[m] = std::norm(dot(target, ev.state));
      },
      threads);
  double sum = 0.0;
  for (double v : p) sum += v;
  return 2.0 * sum / chain.n_spins;
}

int round_even(double x) {
  return 2 * static_cast<int>(std::floor(0.5 * x + 0.5));
}

SpinCountResult spin_count_error(const Pulse& pulse, const ChainConfig& chain,
                                 double delta, int threads) {
  SpinCountResult res;
  res.n_plus = round_even(chain.n_spins * (1.0 + delta));
  res.n_minus = round_even(chain.n_spins * (1.0 - delta));
  if (res.n_minus < 4 || res.n_plus < 4)
    throw std::invalid_argument("perturbed chain size falls below 4 spins");

  const ChainConfig plus = build_chain(res.n_plus);
  const ChainConfig minus = build_chain(res.n_minus);
  res.rho_plus = defect_count(pulse, plus, threads) / plus.n_spins;
  res.rho_minus = defect_count(pulse, minus, threads) / minus.n_spins;
  res.mean = 0.5 * (res.rho_plus + res.rho_minus);
  return res;
}

}  // namespace quench
