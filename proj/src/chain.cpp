#include "quench/chain.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace quench {

ChainConfig build_chain(int n_spins) {
  if (n_spins < 4)
    throw std::invalid_argument("chain size must be at least 4, got " +
                                std::to_string(n_spins));
  if (n_spins % 2 != 0)
    throw std::invalid_argument("chain size must be even, got " +
                                std::to_string(n_spins));

  ChainConfig cfg;
  cfg.n_spins = n_spins;
  cfg.momenta.reserve(n_spins / 2);
  for (int m = 1; m <= n_spins / 2; ++m)
    cfg.momenta.push_back(std::numbers::pi * (2 * m - 1) / n_spins);
  // Pin the last mode to the closed form pi - pi/N; the generic expression
  // pi(N-1)/N can differ from it in the last ulp.
  cfg.momenta.back() = std::numbers::pi - std::numbers::pi / n_spins;
  return cfg;
}

ModeHamiltonian mode_hamiltonian(double k, double g) {
  const double gamma = 2.0 * (g + std::cos(k));
  const double omega = -2.0 * std::sin(k);
  return {gamma, omega, -gamma};
}

double bogoliubov_angle(double k, double g) {
  // sin k > 0 on (0, pi), so atan2 stays on (0, pi) and the angle is
  // continuous in g, approaching 0 from below as g -> +inf.
  return -0.5 * std::atan2(std::sin(k), g + std::cos(k));
}

ModeState ground_state(double k, double g) {
  const double theta = bogoliubov_angle(k, g);
  return {std::cos(theta), std::sin(theta)};
}

ModeState excited_state(double k, double g) {
  const double theta = bogoliubov_angle(k, g);
  return {-std::sin(theta), std::cos(theta)};
}

}  // namespace quench
