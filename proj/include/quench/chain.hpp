#pragma once

#include <vector>

#include "quench/linalg.hpp"

namespace quench {

/// Static problem definition: even chain size N and the positive momentum
/// grid k_m = pi(2m-1)/N, m = 1..N/2, of the even-parity sector.
struct ChainConfig {
  int n_spins = 0;
  std::vector<double> momenta;  // ascending, in (0, pi)

  int n_modes() const { return static_cast<int>(momenta.size()); }
  /// k_N = pi - pi/N, the mode with the smallest gap at the critical point.
  double slowest_momentum() const { return momenta.back(); }
};

/// Builds the chain; rejects odd or too-small sizes.
ChainConfig build_chain(int n_spins);

/// One (k,-k) pair in the even-parity basis {|00>, |11>}. Landau-Zener form
/// with an identity shift; eigenvalues are shift -+ lambda, spectral gap
/// 2*lambda. The basis is ordered so that the g -> +inf ground state is
/// (1, 0), which fixes the sign of the traceless part (see matrix()).
struct ModeHamiltonian {
  double gamma;  // sigma_z channel energy, 2(g + cos k)
  double omega;  // sigma_x channel energy, -2 sin k
  double shift;  // identity coefficient, -gamma

  double lambda() const { return std::sqrt(gamma * gamma + omega * omega); }

  // Traceless coefficients actually entering the matrix.
  double az() const { return -gamma; }
  double ax() const { return -omega; }

  Mat2 matrix() const { return sigma_combo(shift, az(), ax()); }
};

ModeHamiltonian mode_hamiltonian(double k, double g);

/// Bogoliubov angle theta_k(g): tan(2 theta) = -sin k / (g + cos k), on the
/// branch continuous in g with theta -> 0 as g -> +inf.
double bogoliubov_angle(double k, double g);

/// Normalized two-component amplitudes of one mode pair.
using ModeState = Vec2;

/// (cos theta, sin theta); lowest eigenvector of mode_hamiltonian(k, g).
ModeState ground_state(double k, double g);
/// (-sin theta, cos theta); orthogonal complement of the ground state.
ModeState excited_state(double k, double g);

}  // namespace quench
