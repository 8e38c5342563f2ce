#include "quench/pulse.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace quench {

namespace {

constexpr double kEndpointTol = 1e-12;

// Reduced time t/T on [-1, 1]; exact at both endpoints.
double reduced_time(int i, int n) { return 2.0 * i / (n - 1) - 1.0; }

void check_grid(double half_duration, int n) {
  if (!(half_duration > 0.0))
    throw std::invalid_argument("pulse half-duration must be positive");
  if (n < 2) throw std::invalid_argument("pulse needs at least 2 samples");
}

}  // namespace

Pulse power_pulse(double r, double half_duration, int n) {
  if (!(r > 0.0))
    throw std::invalid_argument("power exponent must be positive, got " +
                                std::to_string(r));
  check_grid(half_duration, n);
  Pulse p;
  p.half_duration = half_duration;
  p.samples.resize(n);
  for (int i = 0; i < n; ++i) {
    const double u = reduced_time(i, n);
    const double sgn = u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0);
    p.samples[i] = 1.0 - std::pow(std::abs(u), r) * sgn;
  }
  char tag[64];
  std::snprintf(tag, sizeof tag, "power(r=%.17g)", r);
  p.provenance = tag;
  return p;
}

Pulse linear_pulse(double half_duration, int n) {
  check_grid(half_duration, n);
  Pulse p;
  p.half_duration = half_duration;
  p.samples.resize(n);
  for (int i = 0; i < n; ++i) p.samples[i] = 1.0 - reduced_time(i, n);
  p.provenance = "linear";
  return p;
}

Pulse local_adiabatic_pulse(double half_duration, int n_spins, int n) {
  check_grid(half_duration, n);
  if (n_spins < 4 || n_spins % 2 != 0)
    throw std::invalid_argument("local adiabatic pulse needs an even chain size >= 4");
  const double k_n = std::numbers::pi - std::numbers::pi / n_spins;
  const double s = std::sin(k_n);
  const double c = std::cos(k_n);
  const double alpha_hi = std::atan((kFieldInitial + c) / s);
  const double alpha_lo = std::atan((kFieldFinal + c) / s);
  Pulse p;
  p.half_duration = half_duration;
  p.samples.resize(n);
  for (int i = 0; i < n; ++i) {
    const double u = reduced_time(i, n);
    const double a = 0.5 * ((1.0 - u) * alpha_hi + (1.0 + u) * alpha_lo);
    p.samples[i] = s * std::tan(a) - c;
  }
  char tag[64];
  std::snprintf(tag, sizeof tag, "local_adiabatic(N=%d)", n_spins);
  p.provenance = tag;
  return p;
}

Pulse tabulated_pulse(std::vector<double> samples, double half_duration,
                      std::string provenance) {
  check_grid(half_duration, static_cast<int>(samples.size()));
  if (std::abs(samples.front() - kFieldInitial) > kEndpointTol)
    throw std::invalid_argument("tabulated pulse must start at g = 2, got " +
                                std::to_string(samples.front()));
  if (std::abs(samples.back() - kFieldFinal) > kEndpointTol)
    throw std::invalid_argument("tabulated pulse must end at g = 0, got " +
                                std::to_string(samples.back()));
  Pulse p;
  p.half_duration = half_duration;
  p.samples = std::move(samples);
  p.provenance = std::move(provenance);
  return p;
}

void save_pulse(const Pulse& pulse, std::ostream& os) {
  char line[128];
  std::snprintf(line, sizeof line, "# pulse T=%.17g n=%d provenance=%s\n",
                pulse.half_duration, pulse.n_samples(),
                pulse.provenance.c_str());
  os << line;
  for (int i = 0; i < pulse.n_samples(); ++i) {
    std::snprintf(line, sizeof line, "%.17g %.17g\n", pulse.time_at(i),
                  pulse.samples[i]);
    os << line;
  }
}

void save_pulse(const Pulse& pulse, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  save_pulse(pulse, os);
}

Pulse load_pulse(std::istream& is) {
  std::string header;
  if (!std::getline(is, header) || header.rfind("# pulse ", 0) != 0)
    throw std::runtime_error("pulse file missing '# pulse' header");

  double half_duration = 0.0;
  int n = 0;
  char prov[96] = {0};
  if (std::sscanf(header.c_str(), "# pulse T=%lf n=%d provenance=%95[^\n]",
                  &half_duration, &n, prov) < 2)
    throw std::runtime_error("malformed pulse header: " + header);

  std::vector<double> samples;
  samples.reserve(n);
  double t, g;
  while (is >> t >> g) samples.push_back(g);
  if (static_cast<int>(samples.size()) != n)
    throw std::runtime_error("pulse file sample count mismatch");

  Pulse p = tabulated_pulse(std::move(samples), half_duration);
  p.provenance = prov;
  return p;
}

Pulse load_pulse(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  return load_pulse(is);
}

}  // namespace quench
