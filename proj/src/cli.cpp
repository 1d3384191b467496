#include "sisfront/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "sisfront/connect.hpp"
#include "sisfront/error.hpp"
#include "sisfront/format.hpp"
#include "sisfront/geometry.hpp"
#include "sisfront/io.hpp"
#include "sisfront/pdesim.hpp"
#include "sisfront/reductions.hpp"

#ifndef SISFRONT_VERSION
#define SISFRONT_VERSION "0.0.0"
#endif

namespace sisfront {

namespace fs = std::filesystem;

namespace {

struct CommonOptions {
  RawParams raw;
  std::string regime = "case2";
  std::string out = "sisfront-out";
  int jobs = 1;
};

struct ShootOptions {
  bool reduced = false;
  double offset = 1e-6;
  double ball_radius = 1e-6;
  double max_span = 1e4;
  double tol = 1e-10;
};

struct TrapOptions {
  double r = std::numeric_limits<double>::quiet_NaN();
  std::size_t n = 100;
  bool allow_outside = false;
};

struct SimOptions {
  double x_min = 0.0;
  double x_max = 200.0;
  std::size_t n = 2001;
  double dt = 0.0;
  double T = 50.0;
  std::size_t stride = 0;
  double interface = std::numeric_limits<double>::quiet_NaN();
  double width = 1.0;
  std::string frame = "stationary";
  std::string init = "front";
  bool recenter = false;
  double level = 0.5;
  double window = 0.5;
};

struct SweepOptions {
  std::string file;
};

/// What a command produced. Paths are relative to the run directory.
struct Outcome {
  bool pass = true;
  Json summary = Json::object();
  std::vector<std::string> outputs;
};

Json complex_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

Json spectrum_json(const Spectrum& s) {
  Json a = Json::array();
  for (const auto& z : s) a.push_back(complex_json(z));
  return a;
}

void emit(const fs::path& dir, const std::string& name, const std::string& text, Outcome& o) {
  write_text(dir / name, text);
  o.outputs.push_back(name);
}

void cmd_analyze(const ModelParams& p, const fs::path& dir, std::ostream& out, Outcome& o) {
  const auto eq = equilibria(p);
  Json j;
  j["params"] = to_json(p);
  j["equilibria"] = {to_json(eq.A), to_json(eq.B)};
  j["invasion_rate"] = invasion_rate(p);

  const ShootSystem sys = shoot_system(p.regime(), true);
  Json eig;
  eig["system"] = std::string(to_string(sys));
  const bool below_bound = p.regime() == Regime::Case3FastInfected && p.c() < case3_min_speed(p);
  const VectorField f = shoot_field(sys, p);
  eig["numerical_A"] = spectrum_json(eigenvalues(jacobian(f, equilibrium_point(sys, eq.A))));
  eig["numerical_B"] = spectrum_json(eigenvalues(jacobian(f, equilibrium_point(sys, eq.B))));
  switch (p.regime()) {
    case Regime::Case1ComparableSmall: break;
    case Regime::Case2SlowInfected: {
      const auto a = case2_eigs_A(p), b = case2_eigs_B(p);
      eig["closed_form_A"] = {a.first, a.second};
      eig["closed_form_B"] = {b.first, b.second};
      break;
    }
    case Regime::Case3FastInfected: {
      const auto a = case3_eigs_A(p);
      const auto b = case3_eigs_B(p);
      eig["closed_form_A"] = {a.first, a.second};
      eig["closed_form_B"] = {complex_json(b.first), complex_json(b.second)};
      break;
    }
  }
  j["eigenvalues"] = eig;

  const double c_min = case3_min_speed(p);
  j["c_min"] = c_min;
  if (c_min <= p.c()) {
    const SlopeInterval band = case3_slope_interval(p, p.c());
    j["slope_interval"] = {band.lo, band.hi};
  } else {
    j["slope_interval"] = nullptr;
  }
  if (p.sigma() == 0.0) {
    const FkppParameters k = fkpp_parameters(p);
    j["fkpp"] = {{"k", k.k}, {"c_tilde", k.c_tilde}, {"c_min_original", k.c_min_original}};
  }
  emit(dir, "analysis.json", dump(j), o);

  out << "regime " << to_string(p.regime()) << ", A = (" << eq.A.S() << ", " << eq.A.I() << "), B = (1, 0)\n";
  out << "c_min = " << c_min << (below_bound ? " (c is below it)" : "") << '\n';
  o.summary = {{"c_min", c_min}, {"below_bound", below_bound}};
}

void cmd_shoot(const ModelParams& p, const ShootOptions& opt, const fs::path& dir, std::ostream& out, Outcome& o) {
  ShootSpec spec;
  spec.offset = opt.offset;
  spec.ball_radius = opt.ball_radius;
  spec.max_span = opt.max_span;
  spec.tol = opt.tol;
  FrontProfile prof;
  if (opt.reduced) {
    spec.system = shoot_system(p.regime(), true);
    prof = shoot_heteroclinic(spec, p);
  } else {
    prof = full_system_connection(p, p.regime(), p.epsilon(), spec);
  }
  std::ostringstream csv;
  write_profile_csv(csv, prof);
  emit(dir, "profile.csv", csv.str(), o);
  Json s = profile_summary(prof);
  s["params"] = to_json(p);
  if (is_full(prof.system)) s["max_conservation_residual"] = max_conservation_residual(prof, p);
  emit(dir, "summary.json", dump(s), o);
  o.pass = prof.endpoint_gap < spec.ball_radius;
  o.summary = {{"endpoint_gap", prof.endpoint_gap}, {"samples", prof.size()}};
  out << to_string(prof.system) << ": endpoint gap " << format_double(prof.endpoint_gap) << " after "
      << prof.size() << " samples\n";
}

void cmd_trap(const ModelParams& p, const TrapOptions& opt, const fs::path& dir, std::ostream& out, Outcome& o) {
  TrapReport rep;
  switch (p.regime()) {
    case Regime::Case2SlowInfected: rep = trap_check_case2(p, opt.n); break;
    case Regime::Case3FastInfected: {
      const double r = std::isnan(opt.r) ? case3_default_slope(p, p.c()) : opt.r;
      rep = trap_check_case3(p, p.c(), r, opt.n, !opt.allow_outside);
      break;
    }
    case Regime::Case1ComparableSmall:
      throw Error(ErrorCode::InvalidArgument, "trap needs --regime case2 or case3");
  }
  Json j = to_json(rep);
  j["params"] = to_json(p);
  emit(dir, "trap.json", dump(j), o);
  o.pass = rep.pass;
  o.summary = {{"verdict", rep.pass ? "pass" : "fail"},
               {"worst_segment", rep.segments[rep.worst_segment].name},
               {"worst_margin", rep.segments[rep.worst_segment].min_margin}};
  out << "trapping region " << to_string(rep.region) << ": " << (rep.pass ? "pass" : "fail") << '\n';
}

void cmd_simulate(const ModelParams& p, const SimOptions& opt, const fs::path& dir, std::ostream& out, Outcome& o) {
  const Grid1D grid = Grid1D::make(opt.x_min, opt.x_max, opt.n);
  SimConfig cfg;
  cfg.T = opt.T;
  if (opt.frame == "comoving") {
    cfg.frame = Frame::CoMoving;
    cfg.frame_speed = p.c();
  } else if (opt.frame != "stationary") {
    throw Error(ErrorCode::InvalidArgument, "--frame must be stationary or comoving");
  }
  const double dx = grid.dx();
  double dt_max = std::min(0.4 * dx * dx / std::max(p.d1(), p.d2()), 0.1 / p.beta());
  if (cfg.frame == Frame::CoMoving && cfg.frame_speed > 0.0) dt_max = std::min(dt_max, dx / cfg.frame_speed);
  cfg.dt = opt.dt > 0.0 ? opt.dt : 0.9 * dt_max;
  cfg.stride = opt.stride > 0 ? opt.stride : std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(1.0 / cfg.dt)));
  cfg.recenter = opt.recenter;
  cfg.recenter_level = opt.level;

  const double x0 = std::isnan(opt.interface) ? grid.x_min + 0.25 * grid.length() : opt.interface;
  const auto eq = equilibria(p);
  Field init;
  std::optional<FrontProfile> prof;
  if (opt.init == "front") {
    init = initial_front(grid, p, x0, opt.width);
  } else if (opt.init == "A") {
    init = constant_field(grid, eq.A.S(), eq.A.I());
  } else if (opt.init == "B") {
    init = constant_field(grid, 1.0, 0.0);
  } else if (opt.init == "profile") {
    prof = full_system_connection(p, p.regime(), p.epsilon());
    init = field_from_profile(grid, *prof, x0, disease_free_tail_rate(*prof, p));
  } else {
    throw Error(ErrorCode::InvalidArgument, "--init must be front, A, B or profile");
  }

  const SimResult res = simulate(p, grid, init, cfg);
  for (std::size_t k = 0; k < res.snapshots.size(); ++k) {
    std::ostringstream name, csv;
    name << "snapshots/snapshot_" << std::setw(4) << std::setfill('0') << k << ".csv";
    write_field_csv(csv, grid, res.snapshots[k]);
    emit(dir, name.str(), csv.str(), o);
  }
  Json times = Json::array();
  for (const auto& f : res.snapshots) times.push_back(f.t);
  Json sim = {{"params", to_json(p)},      {"grid", to_json(grid)},         {"dt", res.dt_used},
              {"steps", res.steps},        {"frame", opt.frame},            {"init", opt.init},
              {"snapshot_times", times},   {"window_shift_nodes", res.shifts},
              {"total_population_start", total_population(grid, res.snapshots.front())},
              {"total_population_end", total_population(grid, res.snapshots.back())}};
  if (prof) sim["profile_discrepancy"] = compare_profile(grid, res.snapshots.back(), *prof, p);
  emit(dir, "simulation.json", dump(sim), o);

  const SpeedEstimate est = measure_front_speed(grid, res.snapshots, p, opt.level, opt.window);
  emit(dir, "speed.json", dump(to_json(est)), o);
  o.summary = {{"c_hat", est.c_hat}, {"r2", est.r2}};
  if (prof) o.summary["profile_discrepancy"] = sim["profile_discrepancy"];
  out << "front speed " << format_double(est.c_hat) << " (r2 " << est.r2 << ")\n";
}

// Sweep ---------------------------------------------------------------------

struct SweepRun {
  std::string job;
  RawParams raw;
  bool reduced = false;
  std::vector<double> deltas;
};

std::vector<std::string> split_values(const std::vector<std::string>& inputs) {
  std::vector<std::string> out;
  for (const auto& in : inputs) {
    std::stringstream ss(in);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      const auto b = tok.find_first_not_of(" \t\"'[]");
      const auto e = tok.find_last_not_of(" \t\"'[]");
      if (b != std::string::npos) out.push_back(tok.substr(b, e - b + 1));
    }
  }
  return out;
}

double parse_number(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::InvalidArgument, "sweep key '" + key + "': not a number: " + text);
}

std::vector<SweepRun> read_sweep(const std::string& file, const CommonOptions& common) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::Io, "cannot read sweep config " + file);
  const auto items = CLI::ConfigTOML().from_config(in);

  std::string job = "shoot";
  bool reduced = false;
  double dmin = -2.0, dmax = 2.0;
  std::size_t dcount = 20;
  std::map<std::string, std::vector<double>> grids;
  std::vector<Regime> regimes{parse_regime(common.regime)};
  const RawParams& base = common.raw;
  grids["beta"] = {base.beta};
  grids["gamma"] = {base.gamma};
  grids["sigma"] = {base.sigma};
  grids["c"] = {base.c};
  grids["eps"] = {base.epsilon};
  grids["alpha"] = {base.alpha};

  for (const auto& item : items) {
    const std::string& key = item.name;
    if (key == "++" || key == "--") continue;
    const auto values = split_values(item.inputs);
    if (grids.count(key)) {
      std::vector<double> v;
      for (const auto& s : values) v.push_back(parse_number(key, s));
      grids[key] = v;
    } else if (key == "regime") {
      regimes.clear();
      for (const auto& s : values) regimes.push_back(parse_regime(s));
    } else if (key == "job") {
      job = values.empty() ? "" : values.front();
    } else if (key == "reduced") {
      reduced = !values.empty() && (values.front() == "true" || values.front() == "1");
    } else if (key == "delta_min") {
      dmin = parse_number(key, values.at(0));
    } else if (key == "delta_max") {
      dmax = parse_number(key, values.at(0));
    } else if (key == "delta_count") {
      dcount = static_cast<std::size_t>(parse_number(key, values.at(0)));
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown sweep key '" + key + "'");
    }
  }
  if (job != "shoot" && job != "trap" && job != "rotation")
    throw Error(ErrorCode::InvalidArgument, "sweep job must be shoot, trap or rotation");

  std::vector<SweepRun> runs;
  for (double b : grids["beta"])
    for (double g : grids["gamma"])
      for (double s : grids["sigma"])
        for (double c : grids["c"])
          for (double e : grids["eps"])
            for (double a : grids["alpha"])
              for (Regime r : regimes) {
                SweepRun run;
                run.job = job;
                run.raw = {b, g, s, c, e, a, r};
                run.reduced = reduced;
                if (job == "rotation") run.deltas = logspace(dmin, dmax, dcount);
                runs.push_back(run);
              }
  return runs;
}

void cmd_rotation(const ModelParams& p, const std::vector<double>& deltas, const fs::path& dir, Outcome& o) {
  const ModelParams q = p.with_regime(Regime::Case2SlowInfected);
  const auto probes = interior_probe_grid(q, 20, 20);
  const RotationScan scan = rotation_monotonicity_scan(q, probes, deltas);
  emit(dir, "rotation.json", dump(to_json(scan)), o);
  Json orbits = Json::array();
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    const ModelParams qc = q.with_speed(1.0 / std::sqrt(deltas[k]));
    ShootSpec spec;
    spec.system = ShootSystem::Case2Plane;
    const FrontProfile prof = shoot_heteroclinic(spec, qc);
    std::ostringstream name, csv;
    name << "orbits/orbit_" << std::setw(3) << std::setfill('0') << k << ".csv";
    write_profile_csv(csv, prof);
    emit(dir, name.str(), csv.str(), o);
    orbits.push_back({{"delta", deltas[k]}, {"c", qc.c()}, {"file", name.str()}, {"endpoint_gap", prof.endpoint_gap}});
  }
  emit(dir, "orbits.json", dump(orbits), o);
  o.pass = scan.pass;
  o.summary = {{"max_angle_increment", scan.max_increment}, {"orbits", deltas.size()}};
}

// Runner --------------------------------------------------------------------

int exit_code_for(ErrorCode code) {
  switch (classify(code)) {
    case ErrorClass::Validation: return kExitValidation;
    case ErrorClass::Numerical: return kExitNumerical;
    case ErrorClass::Internal: return kExitInternal;
  }
  return kExitInternal;
}

Json raw_json(const RawParams& r) {
  return {{"beta", r.beta}, {"gamma", r.gamma}, {"sigma", r.sigma}, {"c", r.c},
          {"eps", r.epsilon}, {"alpha", r.alpha}, {"regime", std::string(to_string(r.regime))}};
}

struct RunRecord {
  int exit_code = kExitOk;
  bool pass = false;
  std::string error;
};

/// Validates, runs `body`, and writes manifest.json last.
RunRecord execute(const std::string& command, const RawParams& raw, const fs::path& dir, std::ostream& err,
                  const std::function<void(const ModelParams&, Outcome&)>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Json manifest;
  manifest["command"] = command;
  manifest["version"] = SISFRONT_VERSION;
  RunRecord rec;
  Outcome o;
  try {
    const ModelParams p = validate_params(raw);
    manifest["parameters"] = to_json(p);
    body(p, o);
    rec.pass = o.pass;
    rec.exit_code = o.pass ? kExitOk : kExitNumerical;
  } catch (const ValidationError& e) {
    rec.exit_code = kExitValidation;
    Json issues = Json::array();
    for (const auto& i : e.issues()) issues.push_back({{"code", to_string(i.code)}, {"message", i.message}});
    manifest["issues"] = issues;
    rec.error = e.what();
  } catch (const Error& e) {
    rec.exit_code = exit_code_for(e.code());
    manifest["error_code"] = to_string(e.code());
    rec.error = e.what();
  } catch (const std::exception& e) {
    rec.exit_code = kExitInternal;
    rec.error = e.what();
  }
  if (!manifest.contains("parameters")) manifest["parameters"] = raw_json(raw);
  // Only files that were written make it into the list.
  manifest["outputs"] = o.outputs;
  manifest["wall_clock_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  manifest["pass"] = rec.pass;
  manifest["exit_code"] = rec.exit_code;
  manifest["summary"] = o.summary;
  if (!rec.error.empty()) {
    manifest["error"] = rec.error;
    err << command << ": " << rec.error << '\n';
  }
  try {
    write_text(dir / "manifest.json", dump(manifest));
  } catch (const Error& e) {
    err << e.what() << '\n';
    rec.exit_code = kExitInternal;
  }
  return rec;
}

int cmd_sweep(const CommonOptions& common, const SweepOptions& opt, std::ostream& out, std::ostream& err) {
  const fs::path root(common.out);
  std::vector<SweepRun> runs;
  Json index;
  index["command"] = "sweep";
  index["version"] = SISFRONT_VERSION;
  index["config"] = opt.file;
  try {
    runs = read_sweep(opt.file, common);
  } catch (const Error& e) {
    index["error"] = e.what();
    index["runs"] = Json::array();
    write_text(root / "index.json", dump(index));
    err << "sweep: " << e.what() << '\n';
    return exit_code_for(e.code());
  }

  std::vector<RunRecord> records(runs.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    std::ostringstream sink;
    for (std::size_t k = next++; k < runs.size(); k = next++) {
      const SweepRun& run = runs[k];
      std::ostringstream name;
      name << "run_" << std::setw(4) << std::setfill('0') << k;
      const fs::path dir = root / name.str();
      std::ostringstream run_err;
      records[k] = execute(run.job, run.raw, dir, run_err, [&](const ModelParams& p, Outcome& o) {
        if (run.job == "rotation") return cmd_rotation(p, run.deltas, dir, o);
        if (run.job == "trap") return cmd_trap(p, TrapOptions{}, dir, sink, o);
        ShootOptions so;
        so.reduced = run.reduced;
        cmd_shoot(p, so, dir, sink, o);
      });
      if (!run_err.str().empty()) {
        std::lock_guard lock(log_mutex);
        err << name.str() << ": " << run_err.str();
      }
    }
  };
  const std::size_t n_threads = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(1, common.jobs)), 1,
                                                        std::max<std::size_t>(1, runs.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Json entries = Json::array();
  int code = kExitOk;
  std::size_t passed = 0;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    std::ostringstream name;
    name << "run_" << std::setw(4) << std::setfill('0') << k;
    Json e = {{"run", k},
              {"dir", name.str()},
              {"job", runs[k].job},
              {"parameters", raw_json(runs[k].raw)},
              {"exit_code", records[k].exit_code},
              {"pass", records[k].pass}};
    if (!records[k].error.empty()) e["error"] = records[k].error;
    entries.push_back(e);
    code = std::max(code, records[k].exit_code);
    passed += records[k].pass ? 1 : 0;
  }
  index["runs"] = entries;
  index["total"] = runs.size();
  index["passed"] = passed;
  write_text(root / "index.json", dump(index));
  out << "sweep: " << passed << "/" << runs.size() << " runs passed\n";
  return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Traveling fronts of the diffusive SIS model with saturating incidence", "sisfront"};
  app.set_version_flag("--version", SISFRONT_VERSION);
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key = value file; flags override it");

  CommonOptions common;
  RawParams& raw = common.raw;
  app.add_option("--beta", raw.beta, "Transmission rate")->capture_default_str();
  app.add_option("--gamma", raw.gamma, "Recovery rate")->capture_default_str();
  app.add_option("--sigma", raw.sigma, "Inhibition constant")->capture_default_str();
  app.add_option("--c", raw.c, "Front speed")->capture_default_str();
  app.add_option("--eps", raw.epsilon, "Small diffusion parameter")->capture_default_str();
  app.add_option("--alpha", raw.alpha, "Diffusivity ratio in case1")->capture_default_str();
  app.add_option("--regime", common.regime, "case1 | case2 | case3")->capture_default_str();
  app.add_option("--out", common.out, "Output directory")->capture_default_str();
  app.add_option("--jobs", common.jobs, "Concurrent sweep runs")->capture_default_str()->check(CLI::PositiveNumber);

  auto* analyze = app.add_subcommand("analyze", "Equilibria, eigenvalues and speed bounds")->fallthrough();

  ShootOptions shoot_opt;
  auto* shoot = app.add_subcommand("shoot", "Shoot the heteroclinic front")->fallthrough();
  shoot->add_flag("--reduced", shoot_opt.reduced, "Use the eps = 0 reduction");
  shoot->add_option("--offset", shoot_opt.offset, "Launch offset")->capture_default_str();
  shoot->add_option("--ball-radius", shoot_opt.ball_radius, "Success radius")->capture_default_str();
  shoot->add_option("--max-span", shoot_opt.max_span, "Integration span limit")->capture_default_str();
  shoot->add_option("--tol", shoot_opt.tol, "Integrator tolerance")->capture_default_str();

  TrapOptions trap_opt;
  auto* trap = app.add_subcommand("trap", "Check the trapping triangle")->fallthrough();
  trap->add_option("--r", trap_opt.r, "Slope of s3 (case3; default interval midpoint)");
  trap->add_option("--n", trap_opt.n, "Samples per side")->capture_default_str();
  trap->add_flag("--allow-outside", trap_opt.allow_outside, "Evaluate slopes outside the admissible interval");

  SimOptions sim_opt;
  auto* simulate_cmd = app.add_subcommand("simulate", "Method-of-lines PDE run and speed fit")->fallthrough();
  simulate_cmd->add_option("--x-min", sim_opt.x_min)->capture_default_str();
  simulate_cmd->add_option("--x-max", sim_opt.x_max)->capture_default_str();
  simulate_cmd->add_option("--n", sim_opt.n, "Grid nodes")->capture_default_str();
  simulate_cmd->add_option("--dt", sim_opt.dt, "Time step (default 0.9 x stability limit)");
  simulate_cmd->add_option("--T", sim_opt.T, "Horizon")->capture_default_str();
  simulate_cmd->add_option("--stride", sim_opt.stride, "Steps between snapshots (default about one time unit)");
  simulate_cmd->add_option("--interface", sim_opt.interface, "Initial interface position (default 25% of domain)");
  simulate_cmd->add_option("--width", sim_opt.width, "Initial ramp width")->capture_default_str();
  simulate_cmd->add_option("--frame", sim_opt.frame, "stationary | comoving")->capture_default_str();
  simulate_cmd->add_option("--init", sim_opt.init, "front | A | B | profile")->capture_default_str();
  simulate_cmd->add_flag("--recenter", sim_opt.recenter, "Moving window that follows the front");
  simulate_cmd->add_option("--level", sim_opt.level, "Tracked fraction of I_A")->capture_default_str();
  simulate_cmd->add_option("--window", sim_opt.window, "Fitted fraction of the time span")->capture_default_str();

  SweepOptions sweep_opt;
  auto* sweep = app.add_subcommand("sweep", "Batch of independent runs over a parameter grid")->fallthrough();
  sweep->add_option("grid", sweep_opt.file, "Sweep file with list-valued keys")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << SISFRONT_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitValidation;
  }

  try {
    raw.regime = parse_regime(common.regime);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitValidation;
  }

  const fs::path dir(common.out);
  RunRecord rec;
  if (*analyze) {
    rec = execute("analyze", raw, dir, err, [&](const ModelParams& p, Outcome& o) { cmd_analyze(p, dir, out, o); });
  } else if (*shoot) {
    rec = execute("shoot", raw, dir, err, [&](const ModelParams& p, Outcome& o) { cmd_shoot(p, shoot_opt, dir, out, o); });
  } else if (*trap) {
    rec = execute("trap", raw, dir, err, [&](const ModelParams& p, Outcome& o) { cmd_trap(p, trap_opt, dir, out, o); });
  } else if (*simulate_cmd) {
    rec = execute("simulate", raw, dir, err, [&](const ModelParams& p, Outcome& o) { cmd_simulate(p, sim_opt, dir, out, o); });
  } else {
    return cmd_sweep(common, sweep_opt, out, err);
  }
  return rec.exit_code;
}

}  // namespace sisfront
