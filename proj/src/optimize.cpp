#include "quench/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "quench/parallel.hpp"

namespace quench {

namespace {

constexpr double kMinStep = 1e-18;

double default_tol(double grad_tol, int n_spins) {
  return grad_tol >= 0.0 ? grad_tol : 1e-10 * n_spins;
}

void check_common(double step_size, int max_iters) {
  if (!(step_size > 0.0))
    throw std::invalid_argument("optimizer step size must be positive");
  if (max_iters < 0)
    throw std::invalid_argument("optimizer max_iters must be non-negative");
}

}  // namespace

std::uint64_t pulse_checksum(const Pulse& pulse) {
  // FNV-1a over the raw sample bytes plus the duration.
  std::uint64_t h = 1469598103934665603ull;
  auto absorb = [&h](const void* data, size_t len) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= 1099511628211ull;
    }
  };
  absorb(&pulse.half_duration, sizeof(double));
  absorb(pulse.samples.data(), pulse.samples.size() * sizeof(double));
  return h;
}

OptimizationTrace optimize_power(const ChainConfig& chain, double half_duration,
                                 const OptimizerConfig& cfg) {
  check_common(cfg.step_size, cfg.max_iters);
  if (!(cfg.r_bounds.first > 0.0) || !(cfg.r_bounds.second > cfg.r_bounds.first))
    throw std::invalid_argument("invalid exponent bounds");
  const double tol = default_tol(cfg.grad_tol, chain.n_spins);
  if (!(tol > 0.0)) throw std::invalid_argument("grad_tol must be positive");

  const auto [r_lo, r_hi] = cfg.r_bounds;
  double r = std::clamp(cfg.initial_r, r_lo, r_hi);

  OptimizationTrace trace;
  trace.hit_bounds = (r != cfg.initial_r);

  auto objective = [&](double rr) {
    return defect_count(power_pulse(rr, half_duration, cfg.n_samples), chain,
                        cfg.threads);
  };
  // dD/dr by the chain rule: dt-weighted sum of the functional gradient
  // against dg/dr. Returns D of the same evaluation for free.
  auto derivative = [&](double rr, double* defects) {
    const Pulse p = power_pulse(rr, half_duration, cfg.n_samples);
    const GradientField grad = defect_gradient(p, chain, defects, cfg.threads);
    const std::vector<double> dir = power_direction(rr, half_duration,
                                                    cfg.n_samples);
    double sum = 0.0;
    for (int i = 0; i < grad.n_samples(); ++i) sum += grad.values[i] * dir[i];
    return p.dt() * sum;
  };

  double defects = 0.0;
  double ddr = derivative(r, &defects);
  double s = 0.0;
  double step = cfg.step_size;

  trace.iterates.push_back({0, s, r, defects, ddr * ddr});

  int iter = 0;
  while (iter < cfg.max_iters) {
    if (ddr * ddr <= tol) {
      trace.converged = true;
      break;
    }
    // Explicit flow step with backtracking: dr/ds = -dD/dr.
    double trial_r = 0.0, trial_d = 0.0;
    bool accepted = false;
    while (step >= kMinStep) {
      trial_r = std::clamp(r - step * ddr, r_lo, r_hi);
      trial_d = objective(trial_r);
      if (trial_d <= defects && trial_r != r) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no further descent representable

    if (trial_r == r_lo || trial_r == r_hi) trace.hit_bounds = true;
    s += step;
    r = trial_r;
    defects = trial_d;
    ddr = derivative(r, &defects);
    ++iter;
    trace.iterates.push_back({iter, s, r, defects, ddr * ddr});
    step = std::min(step * 2.0, cfg.step_size * 1e6);
  }
  if (ddr * ddr <= tol) trace.converged = true;

  trace.final_r = r;
  trace.final_defects = defects;
  trace.final_pulse = power_pulse(r, half_duration, cfg.n_samples);
  trace.pulse_checksum = pulse_checksum(trace.final_pulse);
  return trace;
}

OptimizationTrace optimize_free(const ChainConfig& chain, const Pulse& start,
                                const FreeOptimizerConfig& cfg) {
  check_common(cfg.step_size, cfg.max_iters);
  const double tol = default_tol(cfg.grad_tol, chain.n_spins);
  if (!(tol > 0.0)) throw std::invalid_argument("grad_tol must be positive");

  Pulse pulse = start;
  pulse.provenance = "free(" + start.provenance + ")";
  const int n = pulse.n_samples();
  const double dt = pulse.dt();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double w = cfg.smoothness_weight;

  OptimizationTrace trace;

  auto penalty = [&](const Pulse& p) {
    if (w == 0.0) return 0.0;
    double sum = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
      const double d = p.samples[i + 1] - p.samples[i];
      sum += d * d;
    }
    return w * sum;
  };
  // Descent direction in functional-density units; the penalty contribution
  // is converted by the same dt that relates sample and density derivatives.
  auto descent_direction = [&](const Pulse& p, const GradientField& g, int i) {
    double v = g.values[i];
    if (w != 0.0)
      v += 2.0 * w *
           (2.0 * p.samples[i] - p.samples[i - 1] - p.samples[i + 1]) / dt;
    return v;
  };

  double defects = 0.0;
  GradientField grad = defect_gradient(pulse, chain, &defects, cfg.threads);
  double objective = defects + penalty(pulse);

  auto interior_max = [&](const Pulse& p, const GradientField& g) {
    double m = 0.0;
    for (int i = 1; i + 1 < n; ++i)
      m = std::max(m, std::abs(descent_direction(p, g, i)));
    return m;
  };
  // dD/ds along the steepest-descent flow: dt * sum of squared interior
  // gradient entries.
  auto flow_rate = [&](const Pulse& p, const GradientField& g) {
    double sum = 0.0;
    for (int i = 1; i + 1 < n; ++i) {
      const double v = descent_direction(p, g, i);
      sum += v * v;
    }
    return dt * sum;
  };

  double s = 0.0;
  double step = cfg.step_size;
  trace.iterates.push_back({0, s, nan, objective, flow_rate(pulse, grad)});

  int iter = 0;
  while (iter < cfg.max_iters) {
    if (interior_max(pulse, grad) <= tol) {
      trace.converged = true;
      break;
    }
    Pulse trial = pulse;
    double trial_obj = 0.0, trial_d = 0.0;
    bool accepted = false;
    while (step >= kMinStep) {
      for (int i = 1; i + 1 < n; ++i)
        trial.samples[i] =
            pulse.samples[i] - step * descent_direction(pulse, grad, i);
      trial_d = defect_count(trial, chain, cfg.threads);
      trial_obj = trial_d + penalty(trial);
      if (trial_obj < objective) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    s += step;
    pulse.samples = trial.samples;
    defects = trial_d;
    grad = defect_gradient(pulse, chain, &defects, cfg.threads);
    objective = defects + penalty(pulse);
    ++iter;
    trace.iterates.push_back({iter, s, nan, objective, flow_rate(pulse, grad)});
    step = std::min(step * 2.0, cfg.step_size * 1e6);
  }
  if (interior_max(pulse, grad) <= tol) trace.converged = true;

  trace.final_r = nan;
  trace.final_defects = defects;
  trace.final_pulse = std::move(pulse);
  trace.pulse_checksum = pulse_checksum(trace.final_pulse);
  return trace;
}

LandscapeScan landscape_scan(const ChainConfig& chain, double half_duration,
                             const std::vector<double>& r_grid, int n_samples,
                             int threads) {
  if (r_grid.size() < 2)
    throw std::invalid_argument("landscape scan needs at least 2 grid points");
  for (size_t i = 0; i < r_grid.size(); ++i) {
    if (!(r_grid[i] > 0.0))
      throw std::invalid_argument("landscape exponents must be positive");
    if (i > 0 && !(r_grid[i] > r_grid[i - 1]))
      throw std::invalid_argument("landscape grid must be strictly increasing");
  }

  LandscapeScan scan;
  scan.points.resize(r_grid.size());
  parallel_for(
      static_cast<int>(r_grid.size()),
      [&](int i) {
        const double d = defect_count(
            power_pulse(r_grid[i], half_duration, n_samples), chain, 1);
        scan.points[i] = {r_grid[i], d};
      },
      threads);

  for (int i = 1; i + 1 < static_cast<int>(scan.points.size()); ++i) {
    if (scan.points[i].defects < scan.points[i - 1].defects &&
        scan.points[i].defects < scan.points[i + 1].defects)
      scan.minima.push_back(i);
  }
  return scan;
}

}  // namespace quench
