// Acceptance suite: one line per criterion, non-zero exit if any fails.
// Heavy pieces (the tau sweep) go through the actual CLI binary so the
// command-line surface is exercised end to end.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "quench/experiments.hpp"
#include "quench/gradient.hpp"
#include "quench/qsl.hpp"
#include "quench/robustness.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace quench;
using std::numbers::pi;

namespace {

struct Outcome {
  int id;
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<Outcome> g_outcomes;

void report(int id, const std::string& name, bool pass,
            const std::string& detail) {
  g_outcomes.push_back({id, name, pass, detail});
  std::printf("[%s] criterion %d (%s): %s\n", pass ? "PASS" : "FAIL", id,
              name.c_str(), detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------- 1
void criterion_gradient_oracle() {
  struct Instance {
    int n_spins;
    double T, r;
    int n;
  };
  const Instance instances[] = {{8, 1.5, 0.7, 301},
                                {12, 2.0, 1.3, 257},
                                {24, 3.0, 2.2, 401},
                                {36, 6.0, 4.1, 301},
                                {50, 10.0, 0.9, 201}};
  double worst = 0.0;
  for (const auto& in : instances) {
    const ChainConfig chain = build_chain(in.n_spins);
    const Pulse pulse = power_pulse(in.r, in.T, in.n);
    const GradientField an = defect_gradient(pulse, chain);
    const GradientField fd = finite_difference_gradient(pulse, chain, 1e-5);
    double scale = 0.0, err = 0.0;
    for (int i = 1; i + 1 < in.n; ++i) {
      scale = std::max(scale, std::abs(fd.values[i]));
      err = std::max(err, std::abs(an.values[i] - fd.values[i]));
    }
    worst = std::max(worst, err / scale)
        ;
  }
  report(1, "gradient oracle", worst <= 1e-6,
         fmt("max relative error %.3e over 5 instances (tol 1e-6)", worst));
}

// ---------------------------------------------------------------- 2
void criterion_qsl_regression() {
  const double pins[][2] = {{24, 0.117}, {50, 0.121}, {100, 0.123}};
  bool ok = true;
  std::string detail;
  for (const auto& [n, want] : pins) {
    const ChainConfig chain = build_chain(static_cast<int>(n));
    const double tau = fleming_qsl(chain.slowest_momentum(), 2.0, 0.0) / n;
    ok &= std::abs(tau - want) <= 0.001;
    detail += fmt("N=%.0f: %.4f (want %.3f+-0.001)  ", n, tau, want);
  }
  const double heg = hegerfeldt_qsl(build_chain(100)) / 100;
  const bool heg_ok = std::abs(heg - 0.125) / 0.125 <= 0.001;
  ok &= heg_ok;
  detail += fmt("hegerfeldt/N=%.5f (1/8 within 0.1%%)", heg);
  report(2, "speed-limit regression", ok, detail);
}

// ---------------------------------------------------------------- 3 + 4
// The sweep powering criteria 3 and 4 runs through the CLI binary. The tau
// grid keeps 0.126 and 0.178 adjacent, matching how the transition window is
// bracketed, with a detection factor of 5 (see sweep.cfg written below).
struct SweepData {
  json transitions;
  // rows keyed by (n, tau) for criterion 4/8 reuse
  struct Row {
    int n;
    double tau, r_star, rho_opt, rho_lin;
  };
  std::vector<Row> rows;
  bool ok = false;
};

SweepData run_acceptance_sweep(const fs::path& dir) {
  SweepData data;
  const fs::path cfg_path = dir / "sweep.cfg";
  {
    std::ofstream cfg(cfg_path);
    cfg << "[sweep]\n"
           "sizes = 24 50 100\n"
           "taus = 0.05 0.06 0.07 0.08 0.09 0.10 0.115 0.126 0.178 0.2 "
           "0.25 0.35 0.5\n"
           "initial_r = 0.5 1 2 4 8 16\n"
           "max_iters = 200\n"
           "drop_factor = 5\n"
           "[global]\n"
           "n_steps = 10000\n";
  }
  const fs::path out = dir / "sweep";
  const std::string cmd = std::string(QUENCHOPT_BINARY) + " sweep --config " +
                          cfg_path.string() + " --out " + out.string() +
                          " > " + (dir / "sweep.log").string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  if (WEXITSTATUS(rc) != 0) return data;

  data.transitions =
      json::parse(slurp(out / "transitions.json")).at("transitions");

  std::ifstream csv(out / "sweep.csv");
  std::string line;
  std::getline(csv, line);  // header
  while (std::getline(csv, line)) {
    SweepData::Row row{};
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double T, rho_la;
    int conv, okf;
    ss >> row.n >> row.tau >> T >> row.r_star >> row.rho_opt >> row.rho_lin >>
        rho_la >> conv >> okf;
    data.rows.push_back(row);
  }
  data.ok = true;
  return data;
}

void criterion_transition_window(const SweepData& sweep) {
  if (!sweep.ok) {
    report(3, "transition window", false, "sweep run failed");
    return;
  }
  bool ok = true;
  std::string detail;
  for (const int n : {24, 50, 100}) {
    const std::string key = std::to_string(n);
    if (!sweep.transitions.contains(key)) {
      ok = false;
      detail += fmt("N=%d: missing  ", n);
      continue;
    }
    const auto& tr = sweep.transitions.at(key);
    const bool found = tr.at("found").get<bool>();
    const double tau_c = tr.at("tau_c").get<double>();
    const bool in_window = found && tau_c > 0.126 && tau_c < 0.178;

    // Near-coincidence with the per-mode speed limit at the slowest mode.
    const ChainConfig chain = build_chain(n);
    const double tau_qsl = fleming_qsl(chain.slowest_momentum(), 2.0, 0.0) / n;
    const double ratio = tau_c / tau_qsl;
    const bool near_qsl = found && ratio >= 0.9 && ratio <= 1.5;

    ok &= in_window && near_qsl;
    detail += fmt("N=%d: tau_c=%.4f drop x%.1f %s, %.2fx QSL%s  ", n, tau_c,
                  tr.at("drop_ratio").get<double>(),
                  in_window ? "in (0.126,0.178)" : "OUT OF WINDOW", ratio,
                  near_qsl ? "" : " [outside 0.9-1.5]");
  }
  report(3, "transition window", ok, detail);
}

void criterion_above_tau_c_gain(const SweepData& sweep) {
  if (!sweep.ok) {
    report(4, "optimized gain at N=50 tau=0.25", false, "sweep run failed");
    return;
  }
  for (const auto& row : sweep.rows) {
    if (row.n == 50 && std::abs(row.tau - 0.25) < 1e-9) {
      const double ratio = row.rho_opt / row.rho_lin;
      report(4, "optimized gain at N=50 tau=0.25", ratio <= 1e-2,
             fmt("rho_opt/rho_lin = %.3e (need <= 1e-2); rho_opt=%.3e "
                 "rho_lin=%.3e r*=%.3f",
                 ratio, row.rho_opt, row.rho_lin, row.r_star));
      return;
    }
  }
  report(4, "optimized gain at N=50 tau=0.25", false, "row missing");
}

// ---------------------------------------------------------------- 5
void criterion_landscape_structure() {
  const ChainConfig chain = build_chain(50);
  std::vector<double> grid;
  for (int i = 0; i < 160; ++i)
    grid.push_back(0.1 * std::pow(400.0, i / 159.0));  // 0.1 .. 40, log

  const LandscapeScan above = landscape_scan(chain, 0.25 * 50, grid);
  const LandscapeScan below = landscape_scan(chain, 0.10 * 50, grid);
  const bool above_ok = above.minima.size() == 1;
  const bool below_ok = below.minima.size() > 1;
  report(5, "landscape minima structure", above_ok && below_ok,
         fmt("tau=0.25: %zu minima (want 1)%s; tau=0.10: %zu minima (want >1)%s",
             above.minima.size(), above_ok ? "" : " [MISMATCH]",
             below.minima.size(), below_ok ? "" : " [MISMATCH]"));
}

// ---------------------------------------------------------------- 6
void criterion_physics_oracles() {
  // Sudden quench against the closed-form overlap sum.
  const ChainConfig c100 = build_chain(100);
  const double rho_sudden =
      defect_count(linear_pulse(1e-6, 2001), c100) / 100;
  double oracle = 0.0;
  for (double k : c100.momenta) {
    const double th0 = -0.5 * std::atan2(std::sin(k), 0.0 + std::cos(k));
    const double th2 = -0.5 * std::atan2(std::sin(k), 2.0 + std::cos(k));
    oracle += std::pow(std::sin(th0 - th2), 2);
  }
  oracle *= 2.0 / 100;
  const double sudden_err = std::abs(rho_sudden - oracle);
  const bool sudden_ok = sudden_err <= 1e-6;

  // Deep adiabatic run.
  const double rho_adiabatic =
      defect_count(linear_pulse(1e4, kDefaultSamples), build_chain(8)) / 8;
  const bool adiabatic_ok = rho_adiabatic < 1e-3;

  // Kibble-Zurek exponent at N=400.
  const ChainConfig c400 = build_chain(400);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (double T : {20.0, 27.0, 37.0, 50.0, 68.0, 92.0, 125.0, 200.0}) {
    const double rho =
        defect_count(linear_pulse(T, kDefaultSamples), c400) / 400;
    const double x = std::log(T), y = std::log(rho);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  const bool kz_ok = std::abs(slope + 0.5) <= 0.05;

  report(6, "physics oracles", sudden_ok && adiabatic_ok && kz_ok,
         fmt("sudden |diff|=%.2e (<=1e-6); adiabatic rho=%.2e (<1e-3); "
             "KZ slope=%.4f (-0.5+-0.05)",
             sudden_err, rho_adiabatic, slope));
}

// ---------------------------------------------------------------- 7
void criterion_robustness(const fs::path& dir, double* r_star_out,
                          std::vector<OptimizationTrace>* traces_out) {
  const ChainConfig chain = build_chain(100);
  PowerSearchConfig sc;
  sc.initial_rs = {0.5, 2.0, 8.0};
  sc.max_iters = 200;
  const PowerSearchOutcome opt = find_optimal_power(chain, 17.8, sc);
  *r_star_out = opt.r_star;
  *traces_out = opt.traces;

  NoiseStudyConfig nc;
  nc.delta_grid = {0.0, 0.05, 0.10, 0.15};
  nc.n_realizations = 500;
  nc.rng_seed = 20240817;
  nc.base_pulse = power_pulse(opt.r_star, 17.8, kDefaultSamples);
  nc.n_spins = 100;
  const RobustnessResult res = dynamical_noise_study(nc);

  // Emit the data table alongside the pass/fail line.
  {
    std::ofstream csv(dir / "robustness.csv");
    csv << "delta,mean_rho,ci_halfwidth,n\n";
    for (const auto& s : res.per_delta)
      csv << s.delta << ',' << s.mean_density << ',' << s.ci_halfwidth << ','
          << s.n_realizations << '\n';
  }

  const double clean = res.per_delta.front().mean_density;
  const double noisy = res.per_delta.back().mean_density;
  const bool within = noisy <= 10.0 * clean;
  bool cis_ok = true;
  for (const auto& s : res.per_delta)
    cis_ok &= (s.ci_halfwidth >= 0.0) && std::isfinite(s.ci_halfwidth);

  // Determinism: identical config, same seed, different thread counts.
  NoiseStudyConfig nd = nc;
  nd.threads = 1;
  const RobustnessResult r1 = dynamical_noise_study(nd);
  nd.threads = 2;
  const RobustnessResult r2 = dynamical_noise_study(nd);
  bool deterministic = true;
  for (size_t d = 0; d < res.per_delta.size(); ++d) {
    deterministic &=
        r1.per_delta[d].mean_density == r2.per_delta[d].mean_density;
    deterministic &=
        r1.per_delta[d].mean_density == res.per_delta[d].mean_density;
    deterministic &=
        r1.per_delta[d].ci_halfwidth == res.per_delta[d].ci_halfwidth;
  }

  report(7, "noise robustness", within && cis_ok && deterministic,
         fmt("rho(0)=%.3e rho(0.15)=%.3e ratio=%.2f (<=10); CIs emitted; "
             "thread-invariant=%s",
             clean, noisy, noisy / clean, deterministic ? "yes" : "NO"));
}

// ---------------------------------------------------------------- 8
void criterion_structural(const SweepData& sweep, double r_star,
                          const std::vector<OptimizationTrace>& traces) {
  // Unitarity and orthogonality drift over the full default grid.
  double drift = 0.0;
  {
    const ChainConfig chain = build_chain(50);
    for (const Pulse& pulse : {linear_pulse(17.8, kDefaultSamples),
                               power_pulse(6.0, 17.8, kDefaultSamples)}) {
      for (double k : {chain.momenta.front(), chain.slowest_momentum()}) {
        const ModeEvolution ev = evolve_mode(k, pulse);
        drift = std::max(drift, std::abs(ev.state.norm() - 1.0));
        drift = std::max(drift, std::abs(ev.barred.norm() - 1.0));
        drift = std::max(drift, std::abs(dot(ev.state, ev.barred)));
      }
    }
  }
  const bool drift_ok = drift <= 1e-10;

  // Densities within [0, 1] across the sweep table.
  bool range_ok = true;
  for (const auto& row : sweep.rows)
    range_ok &= row.rho_opt >= 0.0 && row.rho_opt <= 1.0 &&
                row.rho_lin >= 0.0 && row.rho_lin <= 1.0;

  // Monotone descent along every accepted optimizer trace.
  bool monotone_ok = true;
  for (const auto& tr : traces)
    for (size_t i = 1; i < tr.iterates.size(); ++i)
      monotone_ok &= tr.iterates[i].defects <= tr.iterates[i - 1].defects;

  // Doubling the grid moves the density by < 1% on the acceptance pulses.
  double worst_doubling = 0.0;
  {
    auto rel_change = [&](const ChainConfig& chain, auto make) {
      const double a = defect_count(make(10000), chain) / chain.n_spins;
      const double b = defect_count(make(20000), chain) / chain.n_spins;
      return std::abs(b - a) / a;
    };
    const ChainConfig c100 = build_chain(100);
    const ChainConfig c50 = build_chain(50);
    const ChainConfig c400 = build_chain(400);
    worst_doubling = std::max(worst_doubling,
        rel_change(c100, [](int n) { return linear_pulse(17.8, n); }));
    worst_doubling = std::max(worst_doubling,
        rel_change(c100, [](int n) { return local_adiabatic_pulse(17.8, 100, n); }));
    worst_doubling = std::max(worst_doubling,
        rel_change(c100, [&](int n) { return power_pulse(r_star, 17.8, n); }));
    worst_doubling = std::max(worst_doubling,
        rel_change(c400, [](int n) { return linear_pulse(50.0, n); }));
    double r50 = 3.36;
    for (const auto& row : sweep.rows)
      if (row.n == 50 && std::abs(row.tau - 0.25) < 1e-9) r50 = row.r_star;
    worst_doubling = std::max(worst_doubling,
        rel_change(c50, [&](int n) { return power_pulse(r50, 12.5, n); }));
  }
  const bool doubling_ok = worst_doubling < 0.01;

  report(8, "structural invariants",
         drift_ok && range_ok && monotone_ok && doubling_ok,
         fmt("drift=%.1e (<=1e-10); rho in [0,1]: %s; monotone traces: %s; "
             "doubling change=%.2e (<1%%)",
             drift, range_ok ? "yes" : "NO", monotone_ok ? "yes" : "NO",
             worst_doubling));
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  fs::path dir = fs::temp_directory_path() /
                 ("quenchopt_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);

  criterion_gradient_oracle();
  criterion_qsl_regression();

  const SweepData sweep = run_acceptance_sweep(dir);
  criterion_transition_window(sweep);
  criterion_above_tau_c_gain(sweep);

  criterion_landscape_structure();
  criterion_physics_oracles();

  double r_star = 6.0;
  std::vector<OptimizationTrace> traces;
  criterion_robustness(dir, &r_star, &traces);
  criterion_structural(sweep, r_star, traces);

  int failures = 0;
  for (const auto& o : g_outcomes) failures += o.pass ? 0 : 1;
  const double mins =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count() /
      60.0;
  std::printf("acceptance: %d/%zu criteria passed in %.1f min (artifacts in %s)\n",
              static_cast<int>(g_outcomes.size()) - failures,
              g_outcomes.size(), mins, dir.c_str());
  return failures == 0 ? 0 : 1;
}
