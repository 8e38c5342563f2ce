#pragma once

#include <vector>

#include "quench/evolve.hpp"

namespace quench {

/// Functional gradient dD/dg(t_i) on the pulse grid. Endpoint entries are
/// reported for completeness but never consumed by the optimizers (the
/// endpoints are fixed).
struct GradientField {
  double half_duration = 0.0;
  std::vector<double> values;

  int n_samples() const { return static_cast<int>(values.size()); }
  double dt() const { return 2.0 * half_duration / (n_samples() - 1); }
  double time_at(int i) const { return -half_duration + i * dt(); }
};

/// d/dg exp(-i H_k(g) dt), closed form. Exact derivative of step_unitary
/// with respect to the field of that step.
Mat2 step_unitary_field_derivative(double k, double g, double dt);

/// Analytic gradient of the final defect count with respect to the field
/// samples, as a functional-derivative density (divide-by-dt convention).
/// Exact for the piecewise-constant midpoint propagation, so it matches the
/// finite-difference oracle to its noise floor.
GradientField defect_gradient(const Pulse& pulse, const ChainConfig& chain,
                              int threads = 0);

/// Same evaluation with the defect count of the unperturbed pulse returned
/// alongside (the trajectories are already in hand).
GradientField defect_gradient(const Pulse& pulse, const ChainConfig& chain,
                              double* defects_out, int threads);

/// Central-difference oracle: entry i is
/// [D(samples[i]+h) - D(samples[i]-h)] / (2 h dt). Perturbing an endpoint
/// also moves the preparation/measurement field; endpoint entries are
/// reported but excluded from optimizer comparisons.
GradientField finite_difference_gradient(const Pulse& pulse,
                                         const ChainConfig& chain, double h,
                                         int threads = 0);

/// dg/dr of the power pulse on the grid: -|t/T|^r sgn(t) ln|t/T|, with the
/// limit value 0 at t = 0.
std::vector<double> power_direction(double r, double half_duration,
                                    int n = kDefaultSamples);

}  // namespace quench
