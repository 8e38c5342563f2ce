#pragma once

#include <array>
#include <limits>
#include <vector>

#include "quench/chain.hpp"
#include "quench/pulse.hpp"

namespace quench {

/// exp(-i H_k(g) dt) in closed form: the identity shift contributes the
/// global phase exp(-i shift dt), the traceless part rotates at the level
/// splitting lambda.
Mat2 step_unitary(double k, double g, double dt);

/// Even-subspace kink projector of mode k: |E_k(g=0)><E_k(g=0)| expressed
/// through k alone; its expectation in the evolved state at g_f = 0 is the
/// excitation probability P_k.
Mat2 kink_projector(double k);

struct EvolveOptions {
  bool with_barred = true;        // also evolve the orthogonal partner state
  bool record_trajectory = false; // keep both states at every grid time
  // Prepare initial states at this field instead of the pulse's first
  // sample (NaN = use the pulse). Models imperfect preparation.
  double initial_field = std::numeric_limits<double>::quiet_NaN();
};

struct ModeEvolution {
  ModeState state;   // phi_k(T), evolved from the ground state at g_i
  ModeState barred;  // evolved from the excited state at g_i
  std::vector<ModeState> trajectory_state;   // filled if record_trajectory
  std::vector<ModeState> trajectory_barred;
};

/// Piecewise-constant propagation of one mode pair under the pulse; each
/// step uses the field at the step midpoint, g = (s_i + s_{i+1})/2.
ModeEvolution evolve_mode(double k, const Pulse& pulse,
                          const EvolveOptions& opts = {});

/// P_k = |<E_k(g_f)|phi_k(T)>|^2.
double excitation_probability(double k, const Pulse& pulse);

struct ModeExcitation {
  double k;
  double probability;
};

struct QuenchResult {
  std::vector<ModeExcitation> per_mode;              // ascending k
  std::vector<std::array<ModeState, 2>> final_states;  // (phi, barred) per k
  double defect_count = 0.0;  // D = 2 sum_k P_k
  double density = 0.0;       // rho = D / N
};

/// Evolves every mode of the chain and aggregates excitations into the
/// defect count and density. Modes run in parallel; the reduction order is
/// fixed, so results are independent of the thread count.
QuenchResult defect_density(const Pulse& pulse, const ChainConfig& chain,
                            int threads = 0);

/// Objective-only evaluation of D = 2 sum_k P_k. Follows the same
/// floating-point path for P_k as defect_density, without storing states.
double defect_count(const Pulse& pulse, const ChainConfig& chain,
                    int threads = 0);

}  // namespace quench
