// Command-line harness: solve user matrices and run the basin, sweep, table1 and sturm
// experiments.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "prqi/csv.hpp"
#include "prqi/errors.hpp"
#include "prqi/experiments.hpp"
#include "prqi/linalg.hpp"
#include "prqi/matrix_market.hpp"
#include "prqi/rng.hpp"
#include "prqi/shifted_solve.hpp"
#include "prqi/solvers.hpp"
#include "prqi/sturm.hpp"

namespace fs = std::filesystem;
using namespace prqi;
namespace ex = prqi::experiments;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitMaxIters = 2;
constexpr int kExitGuard = 3;

struct Globals {
  std::uint64_t seed = 1;
  std::optional<double> tol;
  std::size_t max_iters = 100;
  std::optional<std::string> gamma;
  std::string out = ".";
  std::size_t threads = 0;
};

int exit_code(Status status) {
  switch (status) {
    case Status::converged:
    case Status::near_singular_converged:
      return kExitOk;
    case Status::max_iters_exceeded:
      return kExitMaxIters;
    case Status::guard_aborted:
      return kExitGuard;
  }
  return kExitInput;
}

StoppingCriteria stopping(const Globals& g, double default_tol, bool extra = true) {
  return {g.tol.value_or(default_tol), g.max_iters, extra, false};
}

GammaSchedule schedule(const Globals& g, const char* fallback) {
  return GammaSchedule::parse(g.gamma.value_or(fallback));
}

fs::path output_path(const Globals& g, const std::string& name) {
  fs::create_directories(g.out);
  return fs::path(g.out) / name;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  return out;
}

sturm::InitialProfile parse_profile(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("profiles look like n_osc:R, got '" + text + "'");
  try {
    return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw ParseError("bad profile '" + text + "'");
  }
}

std::string fmt(double v) { return format_double(v); }

// ---------------------------------------------------------------------------------------

struct SolveArgs {
  std::string matrix;
  std::string mass;
  std::string x0;
  std::string profile;
  std::string config;
  std::string solver = "prqi";
  std::optional<double> shift;
  std::string target;
  bool random_x0 = false;
  bool finalize_real = false;
  bool no_extra = false;
  bool scaled = false;
  bool trace = false;
  bool save_vector = false;
  std::optional<std::size_t> guard_tail;
  double eta_star = 0.4;
};

void write_trace(const fs::path& path, const SolveOutcome& out) {
  std::ofstream file = open_output(path);
  CsvWriter csv(file);
  csv.row({"k", "mu", "gamma", "resnorm", "angle", "eta"});
  for (const auto& r : out.trace) {
    csv.row({std::to_string(r.k), fmt(r.mu), fmt(r.gamma), fmt(r.residual_norm),
             r.angle ? fmt(*r.angle) : "", r.eta ? fmt(*r.eta) : ""});
  }
}

int cmd_solve(const Globals& g, const SolveArgs& args) {
  const HermitianOperator a = read_matrix_market(args.matrix);
  std::optional<GeneralizedPair> pair;
  if (!args.mass.empty()) pair.emplace(a, read_matrix_market(args.mass));
  const HermitianOperator& metric = pair ? pair->m() : a;

  ComplexVector x0;
  if (!args.x0.empty()) {
    x0 = read_vector(args.x0);
  } else if (!args.profile.empty()) {
    if (!pair) throw ParseError("--profile needs --mass (a Sturm-Liouville system)");
    sturm::SturmConfig mesh;
    if (!args.config.empty()) mesh = sturm::load_run_config(args.config).mesh;
    x0 = sturm::build_initial_vector(mesh, parse_profile(args.profile), pair->m());
  } else if (args.random_x0) {
    Rng rng(g.seed);
    x0 = ComplexVector(a.size());
    for (auto& v : x0) v = rng.normal();
  } else {
    throw ParseError("give an initial vector with --x0, --profile or --random-x0");
  }
  if (x0.size() != a.size()) throw DimensionError("initial vector length does not match the matrix");
  x0 = pair ? m_normalize(metric, x0) : normalize(x0);

  TraceOptions trace;
  if (!args.target.empty()) trace.target = read_vector(args.target);

  StoppingCriteria stop = stopping(g, 1e-12, !args.no_extra);
  stop.scaled = args.scaled;
  const GammaSchedule gamma = schedule(g, "residual");
  const ex::SolverKind kind = ex::parse_solver(args.solver);

  SolveOutcome out;
  if (pair) {
    std::optional<LocalizationGuard> guard;
    if (args.guard_tail) guard = LocalizationGuard{*args.guard_tail, args.eta_star};
    switch (kind) {
      case ex::SolverKind::classic_rqi:
        out = classic_rqi_generalized(*pair, x0, stop, trace);
        break;
      case ex::SolverKind::prqi:
        out = prqi_generalized(*pair, x0, gamma, stop, guard, args.finalize_real, trace);
        break;
      default:
        throw ParseError("solver '" + args.solver + "' has no generalized variant");
    }
  } else if (kind == ex::SolverKind::prqi) {
    out = prqi::prqi(a, x0, gamma, stop, args.finalize_real, trace);
  } else if (kind == ex::SolverKind::inverse_iteration) {
    out = inverse_iteration(a, args.shift.value_or(rayleigh_quotient(a, x0)), x0, stop, trace);
  } else {
    out = ex::run_solver(kind, a, x0, gamma, stop, trace);
  }

  std::cout << "solver      " << args.solver << (pair ? " (generalized)" : "") << '\n'
            << "status      " << to_string(out.status) << '\n'
            << "eigenvalue  " << fmt(out.eigenpair.value) << '\n'
            << "residual    " << fmt(out.eigenpair.residual_norm) << '\n'
            << "iterations  " << out.iterations
            << (out.finalized_real ? " (plus one real finalization step)" : "") << '\n';
  if (args.trace) {
    const auto path = output_path(g, "trace.csv");
    write_trace(path, out);
    std::cout << "trace       " << path.string() << '\n';
  }
  if (args.save_vector) {
    const auto path = output_path(g, "eigenvector.mtx");
    write_vector(path.string(), out.eigenpair.vector);
    std::cout << "eigenvector " << path.string() << '\n';
  }
  return exit_code(out.status);
}

// ---------------------------------------------------------------------------------------

struct BasinArgs {
  double s = 0.98;
  std::size_t resolution = 400;
  std::string solver = "prqi";
};

int cmd_basin(const Globals& g, const BasinArgs& args) {
  ex::BasinOptions opt;
  opt.s = args.s;
  opt.resolution = args.resolution;
  opt.solver = ex::parse_solver(args.solver);
  opt.gamma = schedule(g, "residual");
  opt.stop = stopping(g, 1e-11);
  opt.threads = g.threads;
  if (!(std::abs(opt.s) < 1.0)) throw DomainError("basin requires |s| < 1");
  const ex::BasinRaster raster = ex::compute_basins(opt);

  char s_text[32];
  std::snprintf(s_text, sizeof s_text, "%g", args.s);
  const std::string stem =
      "basin_" + args.solver + "_s" + s_text + "_r" + std::to_string(args.resolution);
  const auto ppm = output_path(g, stem + ".ppm");
  const auto csv = output_path(g, stem + ".csv");
  {
    std::ofstream out = open_output(ppm);
    raster.write_ppm(out);
  }
  {
    std::ofstream out = open_output(csv);
    raster.write_csv(out);
  }
  const auto counts = raster.label_counts();
  std::cout << "cells              " << raster.points.size() << '\n'
            << "basin sizes        " << counts[1] << " / " << counts[2] << " / " << counts[3]
            << " (eigenvalues -1 / " << fmt(args.s) << " / 1), unconverged " << counts[0] << '\n'
            << "boundary fraction  " << fmt(raster.boundary_fraction()) << '\n'
            << "regions            " << raster.region_count() << '\n'
            << "image              " << ppm.string() << '\n'
            << "table              " << csv.string() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------------------

struct SweepArgs {
  std::string kind = "121";
  double size = 100;
  std::string angles = "1:89:89";
  std::size_t samples = 1;
  std::vector<std::string> solvers{"classic-rqi", "prqi"};
  std::optional<std::size_t> target;
};

std::vector<double> parse_angles(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(std::stod(item));
  if (parts.size() != 3 || parts[2] < 1) throw ParseError("--angles expects lo:hi:count");
  return ex::angle_grid(parts[0], parts[1], static_cast<std::size_t>(parts[2]));
}

int cmd_sweep(const Globals& g, const SweepArgs& args) {
  ex::SweepOptions opt;
  opt.spec = MatrixSpec::from_name(args.kind, args.size, g.seed);
  opt.seed = g.seed;
  opt.angles_deg = parse_angles(args.angles);
  opt.samples_per_angle = args.samples;
  opt.solvers.clear();
  for (const auto& s : args.solvers) opt.solvers.push_back(ex::parse_solver(s));
  opt.gamma = schedule(g, "residual");
  opt.stop = stopping(g, 1e-15);
  opt.target_index = args.target;
  opt.threads = g.threads;
  const auto records = ex::run_sweep(opt);

  const auto path = output_path(g, "sweep_" + opt.spec.name() + ".csv");
  {
    std::ofstream out = open_output(path);
    ex::write_sweep_csv(out, records);
  }
  std::cout << "matrix  " << opt.spec.name() << " (n = " << opt.spec.dimension() << ")\n"
            << "target  " << fmt(records.front().target) << '\n';
  for (const auto solver : opt.solvers) {
    std::size_t ok = 0, total = 0;
    for (const auto& r : records) {
      if (r.solver != ex::to_string(solver)) continue;
      ++total;
      ok += r.success;
    }
    std::cout << ex::to_string(solver) << ": " << ok << " / " << total << " runs reached the target\n";
  }
  std::cout << "table   " << path.string() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------------------

struct Table1Args {
  std::string kind = "121";
  double size = 100;
  std::size_t samples = 10000;
  std::optional<std::size_t> target;
};

int cmd_table1(const Globals& g, const Table1Args& args) {
  if (args.samples < 100) throw DomainError("table1 needs at least 100 samples per band");
  ex::Table1Options opt;
  opt.spec = MatrixSpec::from_name(args.kind, args.size, g.seed);
  opt.samples = args.samples;
  opt.seed = g.seed;
  opt.target_index = args.target;
  opt.prqi_gamma = schedule(g, "residual2");
  opt.stop = stopping(g, 1e-15);
  opt.threads = g.threads;
  const ex::Table1Result result = ex::run_table1(opt);

  const auto path = output_path(g, "table1_" + opt.spec.name() + ".csv");
  {
    std::ofstream out = open_output(path);
    ex::write_table1_csv(out, result);
  }
  std::cout << "matrix " << opt.spec.name() << " (n = " << opt.spec.dimension()
            << "), target index " << result.target_index << ", eigenvalue "
            << fmt(result.target_value) << '\n';
  std::printf("%-10s %10s %10s %10s %10s\n", "band", "classic", "prqi", "ordering", "gamma0");
  for (const auto& r : result.rows) {
    char band[32];
    std::snprintf(band, sizeof band, "%g-%g", r.band.lo_deg, r.band.hi_deg);
    std::printf("%-10s %9.2f%% %9.2f%% %9.2f%% %10.3f\n", band, 100 * r.classic_success,
                100 * r.prqi_success, 100 * r.ordering, r.mean_gamma0);
  }
  std::fflush(stdout);
  std::cout << "table  " << path.string() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------------------

struct SturmArgs {
  std::string config;
  std::vector<std::string> profiles;
  bool export_system = false;
};

int cmd_sturm(const Globals& g, const SturmArgs& args) {
  sturm::SturmRunConfig cfg;
  if (!args.config.empty()) {
    cfg = sturm::load_run_config(args.config);
  } else {
    cfg.profiles = sturm::default_profiles();
  }
  if (!args.profiles.empty()) {
    cfg.profiles.clear();
    for (const auto& p : args.profiles) cfg.profiles.push_back(parse_profile(p));
  }
  if (g.tol) cfg.solver.stop.tol = *g.tol;
  if (g.gamma) cfg.solver.schedule = GammaSchedule::parse(*g.gamma);
  cfg.solver.stop.max_iters = g.max_iters;
  cfg.mesh.validate();
  for (const auto& p : cfg.profiles) p.validate(cfg.mesh);

  const auto rows = ex::run_sturm_table(cfg, g.threads);
  const auto path = output_path(g, "sturm_table.csv");
  {
    std::ofstream out = open_output(path);
    ex::write_sturm_csv(out, rows);
  }
  if (args.export_system) {
    const GeneralizedPair system = sturm::assemble(cfg.mesh);
    write_matrix_market(output_path(g, "sturm_A.mtx").string(), system.a());
    write_matrix_market(output_path(g, "sturm_M.mtx").string(), system.m());
  }

  std::printf("X = %g, h = %g, %zu unknowns; iteration counts exclude any finalization step\n",
              cfg.mesh.length, cfg.mesh.h, cfg.mesh.nodes().size());
  std::printf("%5s %5s | %10s %5s %4s %-9s | %10s %5s %4s\n", "n_osc", "R", "PRQI", "index",
              "its", "status", "RQI", "index", "its");
  int code = kExitOk;
  for (const auto& r : rows) {
    std::printf("%5g %5g | %10.5f %5zu %4zu %-9s | %10.5f %5zu %4zu\n", r.profile.n_osc,
                r.profile.R, r.prqi.outcome.eigenpair.value, r.prqi.index,
                r.prqi.outcome.iterations,
                std::string(to_string(r.prqi.outcome.status)).substr(0, 9).c_str(),
                r.classic.outcome.eigenpair.value, r.classic.index, r.classic.outcome.iterations);
    code = std::max(code, exit_code(r.prqi.outcome.status));
  }
  std::fflush(stdout);
  std::cout << "table " << path.string() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projected Rayleigh quotient iteration: solver and experiment harness", "prqi"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--tol", g.tol, "Residual tolerance (default depends on the command)");
  app.add_option("--max-iters", g.max_iters, "Iteration limit")->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--gamma", g.gamma, "Imaginary shift rule: residual, residual2 or constant:<v>");
  app.add_option("--out", g.out, "Output directory")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)")->capture_default_str();

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solve for one eigenpair of a Matrix Market matrix");
  solve->add_option("--matrix", solve_args.matrix, "Hermitian matrix A (Matrix Market)")->required();
  solve->add_option("--mass", solve_args.mass, "Positive definite M for A v = lambda M v");
  solve->add_option("--x0", solve_args.x0, "Initial vector (Matrix Market array or plain text)");
  solve->add_option("--profile", solve_args.profile, "Sturm-Liouville profile n_osc:R as x0");
  solve->add_option("--config", solve_args.config, "Sturm-Liouville config for --profile");
  solve->add_flag("--random-x0", solve_args.random_x0, "Gaussian random initial vector");
  solve->add_option("--solver", solve_args.solver,
                    "classic-rqi, prqi, prqi-full or inverse-iteration")->capture_default_str();
  solve->add_option("--shift", solve_args.shift, "Fixed shift for inverse-iteration");
  solve->add_option("--target", solve_args.target, "Reference eigenvector for traced angles");
  solve->add_flag("--finalize-real", solve_args.finalize_real,
                  "Finish with one classic RQI step on the real part");
  solve->add_flag("--no-extra-iteration", solve_args.no_extra,
                  "Stop as soon as the residual test passes");
  solve->add_flag("--scaled", solve_args.scaled, "Use the tolerance relative to |mu|");
  solve->add_flag("--trace", solve_args.trace, "Write trace.csv to the output directory");
  solve->add_flag("--save-vector", solve_args.save_vector, "Write eigenvector.mtx");
  solve->add_option("--guard-tail", solve_args.guard_tail,
                    "Localization guard: first tail index (generalized prqi)");
  solve->add_option("--eta-star", solve_args.eta_star, "Localization guard threshold")
      ->capture_default_str();

  BasinArgs basin_args;
  auto* basin = app.add_subcommand("basin", "Basins of attraction for diag(-1, s, 1)");
  basin->add_option("--s", basin_args.s, "Middle eigenvalue, |s| < 1")->capture_default_str();
  basin->add_option("--resolution", basin_args.resolution, "Simplex lattice resolution")
      ->capture_default_str()->check(CLI::Range(3, 100000));
  basin->add_option("--solver", basin_args.solver)->capture_default_str();

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Computed eigenvalue against initial angle");
  sweep->add_option("--kind", sweep_args.kind, "121, wilkinson, laplace or randsym")
      ->capture_default_str();
  sweep->add_option("--size", sweep_args.size,
                    "n (121, randsym), n for W_{2n+1} (wilkinson), m for m^2 (laplace)")
      ->capture_default_str();
  sweep->add_option("--angles", sweep_args.angles, "Degrees lo:hi:count")->capture_default_str();
  sweep->add_option("--samples", sweep_args.samples, "Initial vectors per angle")
      ->capture_default_str();
  sweep->add_option("--solvers", sweep_args.solvers, "Solvers to compare")->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--target", sweep_args.target, "Target eigenvalue index (0-based)");

  Table1Args table1_args;
  auto* table1 = app.add_subcommand("table1", "Success fractions by initial-angle band");
  table1->add_option("--kind", table1_args.kind, "121 or laplace (any sweep kind works)")
      ->capture_default_str();
  table1->add_option("--size", table1_args.size)->capture_default_str();
  table1->add_option("--samples", table1_args.samples, "Samples per band")->capture_default_str();
  table1->add_option("--target", table1_args.target, "Target eigenvalue index (0-based)");

  SturmArgs sturm_args;
  auto* sturm_cmd = app.add_subcommand("sturm", "Sturm-Liouville gap eigenvalues");
  sturm_cmd->add_option("--config", sturm_args.config, "Key-value config file");
  sturm_cmd->add_option("--profile", sturm_args.profiles, "Profile n_osc:R (repeatable)");
  sturm_cmd->add_flag("--export", sturm_args.export_system,
                      "Also write sturm_A.mtx and sturm_M.mtx");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*solve) return cmd_solve(g, solve_args);
    if (*basin) return cmd_basin(g, basin_args);
    if (*sweep) return cmd_sweep(g, sweep_args);
    if (*table1) return cmd_table1(g, table1_args);
    if (*sturm_cmd) return cmd_sturm(g, sturm_args);
  } catch (const NearSingularError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
