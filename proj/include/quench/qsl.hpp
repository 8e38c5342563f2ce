#pragma once

#include <vector>

#include "quench/chain.hpp"
#include "quench/pulse.hpp"

namespace quench {

/// Standard deviation of mode_hamiltonian(k, g_ref) in the ground state
/// prepared at g_state. Invariant under the identity shift.
double energy_variance(double k, double g_ref, double g_state);

/// Speed-limit estimate for mode k from the bound at the frozen critical
/// Hamiltonian: cos(2 dE T') = |<G_k(g_i)|G_k(g_f)>| with dE the energy
/// variance of the initial state with respect to H_k(g_ref).
/// Throws if the variance is degenerate (dE = 0).
double fleming_qsl(double k, double g_i, double g_f, double g_ref = 1.0);

/// Large-N speed-limit estimate for the slowest mode,
/// T = pi / (4 |omega_{k_N}|) = pi / (8 sin(pi/N)); T/N -> 1/8 as N grows.
double hegerfeldt_qsl(const ChainConfig& chain);

struct QslReport {
  std::vector<double> momenta;     // grid k, ascending
  std::vector<double> qsl_times;   // T'(k)
  std::vector<double> tau_values;  // T'(k) / N
  double slowest_mode_estimate = 0.0;  // hegerfeldt_qsl
  // True when T'(k) is maximal at k_N and strictly decreases away from it.
  bool peak_at_slowest_mode = false;
};

QslReport qsl_profile(const ChainConfig& chain, double g_i = kFieldInitial,
                      double g_f = kFieldFinal);

}  // namespace quench
