#include "quench/experiments.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "quench/parallel.hpp"

namespace quench {

PowerSearchOutcome find_optimal_power(const ChainConfig& chain,
                                      double half_duration,
                                      const PowerSearchConfig& cfg) {
  if (cfg.initial_rs.empty())
    throw std::invalid_argument("power search needs at least one start");

  PowerSearchOutcome out;
  out.traces.reserve(cfg.initial_rs.size());
  for (double r0 : cfg.initial_rs) {
    OptimizerConfig oc;
    oc.initial_r = r0;
    oc.step_size = cfg.step_size;
    oc.grad_tol = cfg.grad_tol;
    oc.max_iters = cfg.max_iters;
    oc.n_samples = cfg.n_samples;
    oc.threads = cfg.threads;
    out.traces.push_back(optimize_power(chain, half_duration, oc));
  }

  size_t best = 0;
  for (size_t i = 1; i < out.traces.size(); ++i)
    if (out.traces[i].final_defects < out.traces[best].final_defects) best = i;

  out.r_star = out.traces[best].final_r;
  out.defects = out.traces[best].final_defects;
  out.density = out.defects / chain.n_spins;
  for (const auto& t : out.traces) out.any_converged |= t.converged;
  return out;
}

TransitionEstimate locate_transition(const std::vector<SweepPoint>& points,
                                     double drop_factor) {
  TransitionEstimate est;
  for (size_t i = 0; i + 1 < points.size(); ++i) {
    const auto& lo = points[i];
    const auto& hi = points[i + 1];
    if (!lo.ok || !hi.ok) continue;
    if (!(hi.rho_optimized > 0.0)) {
      est.found = true;
      est.drop_ratio = std::numeric_limits<double>::infinity();
    } else {
      const double ratio = lo.rho_optimized / hi.rho_optimized;
      if (ratio < drop_factor) continue;
      est.found = true;
      est.drop_ratio = ratio;
    }
    est.tau_lo = lo.tau;
    est.tau_hi = hi.tau;
    est.tau_c = 0.5 * (lo.tau + hi.tau);
    break;
  }
  return est;
}

SweepOutcome run_sweep(const SweepSpec& spec) {
  if (spec.sizes.empty() || spec.taus.empty())
    throw std::invalid_argument("sweep needs at least one size and one tau");
  for (size_t i = 1; i < spec.taus.size(); ++i)
    if (!(spec.taus[i] > spec.taus[i - 1]))
      throw std::invalid_argument("sweep tau grid must be strictly increasing");

  const int per_size = static_cast<int>(spec.taus.size());
  const int total = static_cast<int>(spec.sizes.size()) * per_size;

  SweepOutcome out;
  out.points.resize(total);

  // One grid point per work item; every evaluation inside runs
  // single-threaded so the pool owns all parallelism.
  PowerSearchConfig search = spec.search;
  search.threads = 1;

  parallel_for(
      total,
      [&](int idx) {
        const int si = idx / per_size;
        const int ti = idx % per_size;
        SweepPoint& pt = out.points[idx];
        pt.n_spins = spec.sizes[si];
        pt.tau = spec.taus[ti];
        pt.half_duration = pt.tau * pt.n_spins;
        try {
          const ChainConfig chain = build_chain(pt.n_spins);
          const PowerSearchOutcome opt =
              find_optimal_power(chain, pt.half_duration, search);
          pt.r_star = opt.r_star;
          pt.rho_optimized = opt.density;
          pt.converged = opt.any_converged;
          pt.rho_linear =
              defect_count(linear_pulse(pt.half_duration, search.n_samples),
                           chain, 1) /
              chain.n_spins;
          pt.rho_local_adiabatic =
              defect_count(local_adiabatic_pulse(pt.half_duration, pt.n_spins,
                                                 search.n_samples),
                           chain, 1) /
              chain.n_spins;
          pt.ok = true;
        } catch (const std::exception& e) {
          pt.ok = false;
          pt.error = e.what();
        }
      },
      spec.threads);

  for (const auto& pt : out.points) out.all_ok &= pt.ok;

  for (size_t si = 0; si < spec.sizes.size(); ++si) {
    std::vector<SweepPoint> row(out.points.begin() + si * per_size,
                                out.points.begin() + (si + 1) * per_size);
    out.transitions[spec.sizes[si]] = locate_transition(row, spec.drop_factor);
  }
  return out;
}

}  // namespace quench
