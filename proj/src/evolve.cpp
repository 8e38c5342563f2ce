#include "quench/evolve.hpp"

#include <cmath>

#include "quench/parallel.hpp"

namespace quench {

Mat2 step_unitary(double k, double g, double dt) {
  const ModeHamiltonian h = mode_hamiltonian(k, g);
  const double lam = h.lambda();
  const double phase = lam * dt;
  const double c = std::cos(phase);
  const double s = std::sin(phase);
  const cplx global = std::polar(1.0, -h.shift * dt);
  const cplx iz{0.0, -s * h.az() / lam};
  const cplx ix{0.0, -s * h.ax() / lam};
  return global * sigma_combo(c, iz, ix);
}

Mat2 kink_projector(double k) {
  return sigma_combo(0.5, -0.5 * std::cos(k), 0.5 * std::sin(k));
}

ModeEvolution evolve_mode(double k, const Pulse& pulse,
                          const EvolveOptions& opts) {
  const int n = pulse.n_samples();
  const double dt = pulse.dt();
  const double g0 = std::isnan(opts.initial_field) ? pulse.initial_field()
                                                   : opts.initial_field;
  ModeEvolution ev;
  ev.state = ground_state(k, g0);
  ev.barred = excited_state(k, g0);

  if (opts.record_trajectory) {
    ev.trajectory_state.reserve(n);
    ev.trajectory_barred.reserve(n);
    ev.trajectory_state.push_back(ev.state);
    if (opts.with_barred) ev.trajectory_barred.push_back(ev.barred);
  }

  for (int i = 0; i + 1 < n; ++i) {
    const double g_mid = 0.5 * (pulse.samples[i] + pulse.samples[i + 1]);
    const Mat2 u = step_unitary(k, g_mid, dt);
    ev.state = u * ev.state;
    if (opts.with_barred) ev.barred = u * ev.barred;
    if (opts.record_trajectory) {
      ev.trajectory_state.push_back(ev.state);
      if (opts.with_barred) ev.trajectory_barred.push_back(ev.barred);
    }
  }
  return ev;
}

double excitation_probability(double k, const Pulse& pulse) {
  EvolveOptions opts;
  opts.with_barred = false;
  const ModeEvolution ev = evolve_mode(k, pulse, opts);
  const ModeState target = excited_state(k, pulse.final_field());
  return std::norm(dot(target, ev.state));
}

namespace {

// Shared by defect_density and defect_count so that P_k follows the exact
// same floating-point path in both.
double mode_probability(double k, const Pulse& pulse, bool with_barred,
                        ModeEvolution* out) {
  EvolveOptions opts;
  opts.with_barred = with_barred;
  ModeEvolution ev = evolve_mode(k, pulse, opts);
  const ModeState target = excited_state(k, pulse.final_field());
  const double p = std::norm(dot(target, ev.state));
  if (out) *out = std::move(ev);
  return p;
}

}  // namespace

QuenchResult defect_density(const Pulse& pulse, const ChainConfig& chain,
                            int threads) {
  const int modes = chain.n_modes();
  QuenchResult res;
  res.per_mode.resize(modes);
  res.final_states.resize(modes);

  parallel_for(
      modes,
      [&](int m) {
        const double k = chain.momenta[m];
        ModeEvolution ev;
        const double p = mode_probability(k, pulse, true, &ev);
        res.per_mode[m] = {k, p};
        res.final_states[m] = {ev.state, ev.barred};
      },
      threads);

  double sum = 0.0;
  for (const auto& me : res.per_mode) sum += me.probability;
  res.defect_count = 2.0 * sum;
  res.density = res.defect_count / chain.n_spins;
  return res;
}

double defect_count(const Pulse& pulse, const ChainConfig& chain,
                    int threads) {
  const int modes = chain.n_modes();
  std::vector<double> p(modes);
  parallel_for(
      modes,
      [&](int m) { p[m] = mode_probability(chain.momenta[m], pulse, false, nullptr); },
      threads);
  double sum = 0.0;
  for (double v : p) sum += v;
  return 2.0 * sum;
}

}  // namespace quench
