#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "quench/pulse.hpp"

using namespace quench;

TEST_CASE("every constructor pins the endpoints") {
  for (const Pulse& p :
       {power_pulse(0.7, 3.0, 101), power_pulse(1.0, 5.0, 100),
        power_pulse(12.0, 17.8, 1000), linear_pulse(2.5, 333),
        local_adiabatic_pulse(17.8, 100, 500)}) {
    CHECK(std::abs(p.initial_field() - 2.0) <= 1e-12);
    CHECK(std::abs(p.final_field() - 0.0) <= 1e-12);
  }
}

TEST_CASE("power pulse formula values") {
  // Midpoint: g(0) = 1 on an odd grid.
  const Pulse p = power_pulse(3.0, 2.0, 101);
  CHECK(p.samples[50] == doctest::Approx(1.0).epsilon(1e-15));

  // r = 10 at t = T/2: 1 - 2^-10.
  const Pulse q = power_pulse(10.0, 2.0, 5);
  CHECK(q.samples[3] == doctest::Approx(1.0 - std::pow(2.0, -10)).epsilon(1e-15));

  // r = 1 reproduces the linear quench sample by sample.
  const Pulse lin = linear_pulse(4.0, 777);
  const Pulse pl = power_pulse(1.0, 4.0, 777);
  for (int i = 0; i < lin.n_samples(); ++i)
    CHECK(pl.samples[i] == doctest::Approx(lin.samples[i]).epsilon(1e-15));
}

TEST_CASE("power pulse point symmetry about (0, 1)") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> rd(0.2, 20.0);
  for (int rep = 0; rep < 20; ++rep) {
    const Pulse p = power_pulse(rd(rng), 1.7, 501);
    const int n = p.n_samples();
    for (int i = 0; i < n; ++i)
      CHECK(std::abs(p.samples[i] + p.samples[n - 1 - i] - 2.0) <= 1e-12);
  }
}

TEST_CASE("pulse preconditions") {
  CHECK_THROWS_AS(power_pulse(0.0, 1.0, 100), std::invalid_argument);
  CHECK_THROWS_AS(power_pulse(-2.0, 1.0, 100), std::invalid_argument);
  CHECK_THROWS_AS(power_pulse(1.0, -1.0, 100), std::invalid_argument);
  CHECK_THROWS_AS(linear_pulse(1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(local_adiabatic_pulse(1.0, 7, 100), std::invalid_argument);
}

TEST_CASE("linear pulse slope") {
  const Pulse p = linear_pulse(2.0, 401);
  const double dt = p.dt();
  for (int i = 0; i + 1 < p.n_samples(); ++i) {
    const double slope = (p.samples[i + 1] - p.samples[i]) / dt;
    CHECK(slope == doctest::Approx(-0.5).epsilon(1e-10));  // -1/T
  }
  CHECK(p.samples[200] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("local adiabatic schedule decreases monotonically") {
  const Pulse p = local_adiabatic_pulse(10.0, 50, 2001);
  for (int i = 0; i + 1 < p.n_samples(); ++i)
    CHECK(p.samples[i + 1] < p.samples[i]);
}

TEST_CASE("tabulated pulse stores samples verbatim and validates endpoints") {
  const Pulse src = power_pulse(2.5, 3.0, 257);
  const Pulse copy = tabulated_pulse(src.samples, src.half_duration);
  for (int i = 0; i < src.n_samples(); ++i)
    CHECK(copy.samples[i] == src.samples[i]);

  std::vector<double> bad = src.samples;
  bad.front() = 1.9;
  CHECK_THROWS_AS(tabulated_pulse(bad, 3.0), std::invalid_argument);
  bad = src.samples;
  bad.back() = 1e-6;
  CHECK_THROWS_AS(tabulated_pulse(bad, 3.0), std::invalid_argument);

  const Pulse lin = linear_pulse(3.0, 257);
  const Pulse tab = tabulated_pulse(lin.samples, 3.0);
  for (int i = 0; i < lin.n_samples(); ++i)
    CHECK(tab.samples[i] == lin.samples[i]);
}

TEST_CASE("pulse text format round-trips") {
  const Pulse src = power_pulse(4.25, 17.8, 321);
  std::stringstream ss;
  save_pulse(src, ss);
  const Pulse back = load_pulse(ss);
  CHECK(back.half_duration == src.half_duration);
  CHECK(back.provenance == src.provenance);
  REQUIRE(back.n_samples() == src.n_samples());
  for (int i = 0; i < src.n_samples(); ++i)
    CHECK(back.samples[i] == src.samples[i]);  // %.17g is exact for doubles

  std::stringstream junk("not a pulse\n1 2\n");
  CHECK_THROWS(load_pulse(junk));
}

TEST_CASE("grid metadata") {
  const Pulse p = linear_pulse(5.0, 11);
  CHECK(p.dt() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.time_at(0) == doctest::Approx(-5.0).epsilon(1e-15));
  CHECK(p.time_at(10) == doctest::Approx(5.0).epsilon(1e-12));
}
