#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quench {

inline constexpr double kFieldInitial = 2.0;  // g(-T)
inline constexpr double kFieldFinal = 0.0;    // g(+T)
inline constexpr int kDefaultSamples = 10000;

/// Control field g(t) tabulated on the uniform inclusive grid
/// t_i = -T + i*dt, dt = 2T/(n-1), with endpoints fixed at g_i = 2, g_f = 0.
/// Immutable by convention once constructed.
struct Pulse {
  double half_duration = 0.0;   // T
  std::vector<double> samples;  // g(t_i)
  std::string provenance;       // constructor tag, carried into output files

  int n_samples() const { return static_cast<int>(samples.size()); }
  double dt() const { return 2.0 * half_duration / (n_samples() - 1); }
  double time_at(int i) const { return -half_duration + i * dt(); }
  double initial_field() const { return samples.front(); }
  double final_field() const { return samples.back(); }
};

/// g(r, t) = 1 - |t/T|^r sgn(t). r > 0; r = 1 is the linear quench.
Pulse power_pulse(double r, double half_duration, int n = kDefaultSamples);

/// g(t) = 1 - t/T.
Pulse linear_pulse(double half_duration, int n = kDefaultSamples);

/// Schedule that keeps the adiabaticity of the slowest mode k_N uniform:
/// arctan[(g + cos k_N)/sin k_N] interpolates linearly in t between its
/// endpoint values.
Pulse local_adiabatic_pulse(double half_duration, int n_spins,
                            int n = kDefaultSamples);

/// Stores free-form samples verbatim; rejects endpoint violations.
Pulse tabulated_pulse(std::vector<double> samples, double half_duration,
                      std::string provenance = "tabulated");

/// Two-column text format (t, g) with a header carrying T, the sample count
/// and the provenance string.
void save_pulse(const Pulse& pulse, std::ostream& os);
void save_pulse(const Pulse& pulse, const std::string& path);
Pulse load_pulse(std::istream& is);
Pulse load_pulse(const std::string& path);

}  // namespace quench
