// Command-line front end: declarative experiment configs in, CSV data and
// JSON manifests out. Every run writes a manifest that can be fed back via
// --config to reproduce the deterministic outputs bit-identically.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "quench/config.hpp"
#include "quench/experiments.hpp"
#include "quench/io.hpp"
#include "quench/parallel.hpp"
#include "quench/robustness.hpp"
#include "quench/qsl.hpp"
#include "quench/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace quench;

namespace {

struct RunContext {
  std::string command;
  KeyValueConfig config;
  fs::path out_dir;
  long long seed = 0;
  int n_steps = kDefaultSamples;
  int threads = 0;
  std::vector<std::string> outputs;
  std::chrono::steady_clock::time_point started;
};

std::string out_file(RunContext& ctx, const std::string& name) {
  ctx.outputs.push_back(name);
  return (ctx.out_dir / name).string();
}

void write_manifest(RunContext& ctx, const json& extra = json::object()) {
  const double duration =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    ctx.started)
          .count();
  json m;
  m["tool"] = "quenchopt";
  m["version"] = kVersion;
  m["command"] = ctx.command;
  m["seed"] = ctx.seed;
  m["n_steps"] = ctx.n_steps;
  m["threads"] = ctx.threads;
  m["duration_seconds"] = duration;
  m["outputs"] = ctx.outputs;
  m["resolved_config"] = ctx.config.entries();
  if (!extra.empty()) m["results"] = extra;
  write_text_file((ctx.out_dir / "manifest.json").string(), m.dump(2) + "\n");
}

// Accepts either a plain key=value config or a manifest.json from a previous
// run (its resolved_config section is replayed).
KeyValueConfig load_any_config(const std::string& path) {
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
    const json m = json::parse(read_text_file(path));
    KeyValueConfig cfg;
    for (const auto& entry : m.at("resolved_config")) {
      const std::string line = entry.get<std::string>();
      const auto eq = line.find(" = ");
      if (eq == std::string::npos)
        throw std::runtime_error("malformed manifest config entry: " + line);
      cfg.set(line.substr(0, eq), line.substr(eq + 3));
    }
    return cfg;
  }
  return KeyValueConfig::load(path);
}

Pulse make_named_pulse(const std::string& family, double r, double T,
                       int n_steps, int n_spins) {
  if (family == "power") return power_pulse(r, T, n_steps);
  if (family == "linear") return linear_pulse(T, n_steps);
  if (family == "local_adiabatic")
    return local_adiabatic_pulse(T, n_spins, n_steps);
  throw std::runtime_error("unknown pulse family '" + family +
                           "' (want power | linear | local_adiabatic | file)");
}

double resolve_half_duration(const KeyValueConfig& cfg,
                             const std::string& section, int n_spins) {
  if (cfg.has(section + ".T")) return cfg.get_double(section + ".T");
  if (cfg.has(section + ".tau"))
    return cfg.get_double(section + ".tau") * n_spins;
  throw std::runtime_error("config needs " + section + ".T or " + section +
                           ".tau");
}

json quench_summary(const QuenchResult& res, int n_spins, const Pulse& pulse) {
  json j;
  j["n_spins"] = n_spins;
  j["half_duration"] = pulse.half_duration;
  j["tau"] = pulse.half_duration / n_spins;
  j["n_steps"] = pulse.n_samples();
  j["pulse"] = pulse.provenance;
  j["defect_count"] = res.defect_count;
  j["density"] = res.density;
  return j;
}

int cmd_simulate(RunContext& ctx) {
  const auto& cfg = ctx.config;
  const int n_spins = cfg.get_int("simulate.n");
  const ChainConfig chain = build_chain(n_spins);
  const double T = resolve_half_duration(cfg, "simulate", n_spins);
  const std::string family = cfg.get_string("simulate.pulse", "linear");

  Pulse pulse;
  if (family == "file") {
    pulse = load_pulse(cfg.get_string("simulate.pulse_file"));
  } else {
    const double r = cfg.get_double("simulate.r", 1.0);
    pulse = make_named_pulse(family, r, T, ctx.n_steps, n_spins);
  }

  const QuenchResult res = defect_density(pulse, chain, ctx.threads);
  write_quench_csv(res, out_file(ctx, "pk.csv"));
  save_pulse(pulse, out_file(ctx, "pulse.txt"));
  const json summary = quench_summary(res, n_spins, pulse);
  write_text_file(out_file(ctx, "summary.json"), summary.dump(2) + "\n");
  write_manifest(ctx, summary);
  std::printf("simulate: N=%d T=%g rho=%g -> %s\n", n_spins, T, res.density,
              ctx.out_dir.string().c_str());
  return 0;
}

int cmd_sweep(RunContext& ctx) {
  const auto& cfg = ctx.config;
  SweepSpec spec;
  spec.sizes = cfg.get_int_list("sweep.sizes");
  spec.taus = cfg.get_double_list("sweep.taus");
  if (cfg.has("sweep.initial_r"))
    spec.search.initial_rs = cfg.get_double_list("sweep.initial_r");
  spec.search.max_iters = cfg.get_int("sweep.max_iters", 200);
  spec.search.step_size = cfg.get_double("sweep.step_size", 1.0);
  spec.search.grad_tol = cfg.get_double("sweep.grad_tol", -1.0);
  spec.search.n_samples = ctx.n_steps;
  spec.drop_factor = cfg.get_double("sweep.drop_factor", 10.0);
  spec.threads = ctx.threads;

  const SweepOutcome out = run_sweep(spec);

  CsvWriter csv(out_file(ctx, "sweep.csv"));
  csv.header({"n", "tau", "T", "r_star", "rho_optimized", "rho_linear",
              "rho_local_adiabatic", "converged", "ok"});
  for (const auto& pt : out.points)
    csv.row({std::to_string(pt.n_spins), format_double(pt.tau),
             format_double(pt.half_duration), format_double(pt.r_star),
             format_double(pt.rho_optimized), format_double(pt.rho_linear),
             format_double(pt.rho_local_adiabatic), pt.converged ? "1" : "0",
             pt.ok ? "1" : "0"});
  csv.close();

  json results;
  for (const auto& [n, tr] : out.transitions) {
    json t;
    t["found"] = tr.found;
    t["tau_lo"] = tr.tau_lo;
    t["tau_hi"] = tr.tau_hi;
    t["tau_c"] = tr.tau_c;
    t["drop_ratio"] = tr.drop_ratio;
    results["transitions"][std::to_string(n)] = t;
  }
  for (const auto& pt : out.points)
    if (!pt.ok)
      results["failures"].push_back(
          {{"n", pt.n_spins}, {"tau", pt.tau}, {"error", pt.error}});
  write_text_file(out_file(ctx, "transitions.json"), results.dump(2) + "\n");
  write_manifest(ctx, results);

  for (const auto& [n, tr] : out.transitions) {
    if (tr.found)
      std::printf("sweep: N=%d tau_c ~ %.4f (drop x%.1f over [%.3f, %.3f])\n",
                  n, tr.tau_c, tr.drop_ratio, tr.tau_lo, tr.tau_hi);
    else
      std::printf("sweep: N=%d no drop >= factor found\n", n);
  }
  return out.all_ok ? 0 : 2;
}

int cmd_landscape(RunContext& ctx) {
  const auto& cfg = ctx.config;
  const int n_spins = cfg.get_int("landscape.n");
  const ChainConfig chain = build_chain(n_spins);
  const double T = resolve_half_duration(cfg, "landscape", n_spins);
  const double r_min = cfg.get_double("landscape.r_min", 0.1);
  const double r_max = cfg.get_double("landscape.r_max", 40.0);
  const int count = cfg.get_int("landscape.r_count", 160);
  const std::string spacing = cfg.get_string("landscape.spacing", "log");

  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / (count - 1);
    grid[i] = spacing == "log" ? r_min * std::pow(r_max / r_min, f)
                               : r_min + (r_max - r_min) * f;
  }

  const LandscapeScan scan =
      landscape_scan(chain, T, grid, ctx.n_steps, ctx.threads);

  CsvWriter csv(out_file(ctx, "landscape.csv"));
  csv.header({"r", "defects", "rho"});
  for (const auto& pt : scan.points)
    csv.row({format_double(pt.r), format_double(pt.defects),
             format_double(pt.defects / n_spins)});
  csv.close();

  json results;
  results["n_spins"] = n_spins;
  results["half_duration"] = T;
  results["minima_count"] = scan.minima.size();
  for (int idx : scan.minima)
    results["minima"].push_back(
        {{"r", scan.points[idx].r}, {"defects", scan.points[idx].defects}});
  write_text_file(out_file(ctx, "summary.json"), results.dump(2) + "\n");
  write_manifest(ctx, results);
  std::printf("landscape: N=%d T=%g minima=%zu\n", n_spins, T,
              scan.minima.size());
  return 0;
}

int cmd_qsl(RunContext& ctx) {
  const auto& cfg = ctx.config;
  const std::vector<int> sizes = cfg.get_int_list("qsl.sizes");
  const double g_i = cfg.get_double("qsl.g_i", kFieldInitial);
  const double g_f = cfg.get_double("qsl.g_f", kFieldFinal);

  json results;
  for (int n : sizes) {
    const ChainConfig chain = build_chain(n);
    const QslReport rep = qsl_profile(chain, g_i, g_f);
    write_qsl_csv(rep, out_file(ctx, "qsl_N" + std::to_string(n) + ".csv"));
    json j;
    j["slowest_mode_tau"] = rep.tau_values.back();
    j["hegerfeldt_tau"] = rep.slowest_mode_estimate / n;
    j["peak_at_slowest_mode"] = rep.peak_at_slowest_mode;
    results[std::to_string(n)] = j;
    std::printf("qsl: N=%d T'(k_N)/N=%.4f hegerfeldt/N=%.5f\n", n,
                rep.tau_values.back(), rep.slowest_mode_estimate / n);
  }
  write_text_file(out_file(ctx, "summary.json"), results.dump(2) + "\n");
  write_manifest(ctx, results);
  return 0;
}

int cmd_robustness(RunContext& ctx) {
  const auto& cfg = ctx.config;
  const int n_spins = cfg.get_int("robustness.n");
  const ChainConfig chain = build_chain(n_spins);
  const double T = resolve_half_duration(cfg, "robustness", n_spins);
  const std::vector<double> deltas =
      cfg.has("robustness.deltas") ? cfg.get_double_list("robustness.deltas")
                                   : std::vector<double>{0.0, 0.05, 0.10, 0.15};
  const int realizations = cfg.get_int("robustness.realizations", 500);

  Pulse base;
  if (cfg.has("robustness.pulse_file")) {
    base = load_pulse(cfg.get_string("robustness.pulse_file"));
  } else if (cfg.has("robustness.r")) {
    base = power_pulse(cfg.get_double("robustness.r"), T, ctx.n_steps);
  } else {
    // Optimize the power first; the study characterizes that pulse.
    PowerSearchConfig sc;
    sc.n_samples = ctx.n_steps;
    sc.max_iters = cfg.get_int("robustness.max_iters", 200);
    sc.threads = ctx.threads;
    const PowerSearchOutcome opt = find_optimal_power(chain, T, sc);
    base = power_pulse(opt.r_star, T, ctx.n_steps);
    std::printf("robustness: optimized r*=%.5f rho=%g\n", opt.r_star,
                opt.density);
  }
  save_pulse(base, out_file(ctx, "pulse.txt"));

  json results;
  results["pulse"] = base.provenance;
  results["baseline_rho"] = defect_count(base, chain, ctx.threads) / n_spins;

  NoiseStudyConfig nc;
  nc.delta_grid = deltas;
  nc.n_realizations = realizations;
  nc.rng_seed = static_cast<std::uint64_t>(ctx.seed);
  nc.base_pulse = base;
  nc.n_spins = n_spins;
  nc.threads = ctx.threads;
  const RobustnessResult dyn = dynamical_noise_study(nc);
  write_robustness_csv(dyn, out_file(ctx, "dynamical.csv"));
  for (const auto& s : dyn.per_delta)
    results["dynamical"].push_back({{"delta", s.delta},
                                    {"mean_rho", s.mean_density},
                                    {"ci_halfwidth", s.ci_halfwidth}});

  {
    CsvWriter csv(out_file(ctx, "initial_state.csv"));
    csv.header({"delta", "rho"});
    for (double d : deltas) {
      const double rho = initial_state_error(base, chain, d, ctx.threads);
      csv.row({format_double(d), format_double(rho)});
      results["initial_state"].push_back({{"delta", d}, {"rho", rho}});
    }
    csv.close();
  }
  {
    CsvWriter csv(out_file(ctx, "spin_count.csv"));
    csv.header(
        {"delta", "n_plus", "n_minus", "rho_plus", "rho_minus", "mean_rho"});
    for (double d : deltas) {
      const SpinCountResult sc = spin_count_error(base, chain, d, ctx.threads);
      csv.row({format_double(d), std::to_string(sc.n_plus),
               std::to_string(sc.n_minus), format_double(sc.rho_plus),
               format_double(sc.rho_minus), format_double(sc.mean)});
      results["spin_count"].push_back({{"delta", d}, {"mean_rho", sc.mean}});
    }
    csv.close();
  }

  write_text_file(out_file(ctx, "summary.json"), results.dump(2) + "\n");
  write_manifest(ctx, results);
  std::printf("robustness: N=%d T=%g done (%d realizations)\n", n_spins, T,
              realizations);
  return 0;
}

int cmd_optimize_free(RunContext& ctx) {
  const auto& cfg = ctx.config;
  const int n_spins = cfg.get_int("optimize-free.n");
  const ChainConfig chain = build_chain(n_spins);
  const double T = resolve_half_duration(cfg, "optimize-free", n_spins);

  Pulse seed_pulse;
  if (cfg.has("optimize-free.pulse_file")) {
    seed_pulse = load_pulse(cfg.get_string("optimize-free.pulse_file"));
  } else if (cfg.has("optimize-free.r")) {
    seed_pulse = power_pulse(cfg.get_double("optimize-free.r"), T, ctx.n_steps);
  } else {
    PowerSearchConfig sc;
    sc.n_samples = ctx.n_steps;
    sc.threads = ctx.threads;
    const PowerSearchOutcome opt = find_optimal_power(chain, T, sc);
    seed_pulse = power_pulse(opt.r_star, T, ctx.n_steps);
    std::printf("optimize-free: seeding from r*=%.5f\n", opt.r_star);
  }

  FreeOptimizerConfig fc;
  fc.max_iters = cfg.get_int("optimize-free.max_iters", 500);
  fc.step_size = cfg.get_double("optimize-free.step_size", 0.1);
  fc.grad_tol = cfg.get_double("optimize-free.grad_tol", -1.0);
  fc.threads = ctx.threads;

  const double seed_rho =
      defect_count(seed_pulse, chain, ctx.threads) / n_spins;
  const OptimizationTrace trace = optimize_free(chain, seed_pulse, fc);

  write_trace_csv(trace, out_file(ctx, "trace.csv"));
  save_pulse(trace.final_pulse, out_file(ctx, "pulse.txt"));
  json results;
  results["seed_rho"] = seed_rho;
  results["final_rho"] = trace.final_defects / n_spins;
  results["iterations"] = trace.iterates.size() - 1;
  results["converged"] = trace.converged;
  write_text_file(out_file(ctx, "summary.json"), results.dump(2) + "\n");
  write_manifest(ctx, results);
  std::printf("optimize-free: rho %g -> %g in %zu iterations\n", seed_rho,
              trace.final_defects / n_spins, trace.iterates.size() - 1);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Defect-minimizing quench toolkit for the transverse-field Ising chain"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  long long seed = 0;
  int threads = 0;
  int n_steps = 0;

  app.add_option("--config", config_path,
                 "key = value config file, or a manifest.json from a "
                 "previous run");
  app.add_option("--out", out_dir, "output directory (default out-<command>)");
  app.add_option("--seed", seed, "RNG seed override");
  app.add_option("--threads", threads, "worker threads (0 = hardware)");
  app.add_option("--n-steps", n_steps, "time-grid samples override");

  for (const char* name :
       {"simulate", "sweep", "landscape", "qsl", "robustness", "optimize-free"})
    app.add_subcommand(name)->fallthrough();

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    RunContext ctx;
    ctx.started = std::chrono::steady_clock::now();
    ctx.command = command;
    ctx.config =
        config_path.empty() ? KeyValueConfig{} : load_any_config(config_path);

    // CLI flags override config; both land in the manifest.
    const long long cfg_seed = ctx.config.get_int64("global.seed", 0);
    const int cfg_threads = ctx.config.get_int("global.threads", 0);
    const int cfg_steps = ctx.config.get_int("global.n_steps", kDefaultSamples);
    ctx.seed = seed != 0 ? seed : cfg_seed;
    ctx.threads = threads != 0 ? threads : cfg_threads;
    ctx.n_steps = n_steps != 0 ? n_steps : cfg_steps;
    ctx.config.set("global.seed", std::to_string(ctx.seed));
    ctx.config.set("global.threads", std::to_string(ctx.threads));
    ctx.config.set("global.n_steps", std::to_string(ctx.n_steps));
    if (ctx.threads > 0) set_default_thread_count(ctx.threads);

    ctx.out_dir =
        out_dir.empty() ? fs::path("out-" + command) : fs::path(out_dir);
    fs::create_directories(ctx.out_dir);

    int rc = 0;
    if (command == "simulate") rc = cmd_simulate(ctx);
    else if (command == "sweep") rc = cmd_sweep(ctx);
    else if (command == "landscape") rc = cmd_landscape(ctx);
    else if (command == "qsl") rc = cmd_qsl(ctx);
    else if (command == "robustness") rc = cmd_robustness(ctx);
    else if (command == "optimize-free") rc = cmd_optimize_free(ctx);

    const auto unused = ctx.config.unused_keys();
    if (!unused.empty()) {
      std::fprintf(stderr, "error: unknown config keys:");
      for (const auto& k : unused) std::fprintf(stderr, " %s", k.c_str());
      std::fprintf(stderr, "\n");
      return 1;
    }
    return rc;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
