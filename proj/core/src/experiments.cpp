#include "prqi/experiments.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <queue>

#include "prqi/csv.hpp"
#include "prqi/errors.hpp"
#include "prqi/linalg.hpp"
#include "prqi/rng.hpp"

namespace prqi::experiments {

SolverKind parse_solver(std::string_view name) {
  if (name == "classic-rqi" || name == "rqi") return SolverKind::classic_rqi;
  if (name == "prqi") return SolverKind::prqi;
  if (name == "prqi-full") return SolverKind::prqi_full;
  if (name == "inverse-iteration") return SolverKind::inverse_iteration;
  throw ParseError("unknown solver '" + std::string(name) +
                   "' (expected classic-rqi, prqi, prqi-full or inverse-iteration)");
}

std::string_view to_string(SolverKind kind) noexcept {
  switch (kind) {
    case SolverKind::classic_rqi:
      return "classic-rqi";
    case SolverKind::prqi:
      return "prqi";
    case SolverKind::prqi_full:
      return "prqi-full";
    case SolverKind::inverse_iteration:
      return "inverse-iteration";
  }
  return "unknown";
}

SolveOutcome run_solver(SolverKind kind, const HermitianOperator& a, const ComplexVector& x0,
                        const GammaSchedule& gamma, const StoppingCriteria& stop,
                        const TraceOptions& trace) {
  switch (kind) {
    case SolverKind::classic_rqi:
      return classic_rqi(a, x0, stop, trace);
    case SolverKind::prqi:
      return prqi(a, x0, gamma, stop, false, trace);
    case SolverKind::prqi_full:
      return prqi_full(a, x0, gamma, stop, trace);
    case SolverKind::inverse_iteration:
      return inverse_iteration(a, rayleigh_quotient(a, x0), x0, stop, trace);
  }
  throw DomainError("unknown solver kind");
}

bool matches_target(double lambda, double target) {
  return std::abs(lambda - target) <= 1e-8 * (1.0 + std::abs(target));
}

// ---------------------------------------------------------------------------------------

namespace {

// Lattice coordinates (i, j) -> index into BasinRaster::points, or -1.
class LatticeIndex {
 public:
  explicit LatticeIndex(const BasinRaster& raster)
      : r_(raster.resolution), index_(r_ * r_, -1) {
    for (std::size_t p = 0; p < raster.points.size(); ++p) {
      index_[raster.points[p].i * r_ + raster.points[p].j] = static_cast<long>(p);
    }
  }
  [[nodiscard]] long at(long i, long j) const {
    if (i < 0 || j < 0 || i >= static_cast<long>(r_) || j >= static_cast<long>(r_)) return -1;
    return index_[static_cast<std::size_t>(i) * r_ + static_cast<std::size_t>(j)];
  }

 private:
  std::size_t r_;
  std::vector<long> index_;
};

constexpr long kNeighbors[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

}  // namespace

double BasinRaster::boundary_fraction() const {
  if (points.empty()) return 0.0;
  const LatticeIndex lattice(*this);
  std::size_t boundary = 0;
  for (std::size_t p = 0; p < points.size(); ++p) {
    const auto i = static_cast<long>(points[p].i);
    const auto j = static_cast<long>(points[p].j);
    for (const auto& d : kNeighbors) {
      const long q = lattice.at(i + d[0], j + d[1]);
      if (q >= 0 && labels[static_cast<std::size_t>(q)] != labels[p]) {
        ++boundary;
        break;
      }
    }
  }
  return static_cast<double>(boundary) / static_cast<double>(points.size());
}

std::size_t BasinRaster::region_count() const {
  const LatticeIndex lattice(*this);
  std::vector<bool> seen(points.size(), false);
  std::size_t regions = 0;
  for (std::size_t start = 0; start < points.size(); ++start) {
    if (seen[start]) continue;
    ++regions;
    std::queue<std::size_t> frontier;
    frontier.push(start);
    seen[start] = true;
    while (!frontier.empty()) {
      const std::size_t p = frontier.front();
      frontier.pop();
      for (const auto& d : kNeighbors) {
        const long q = lattice.at(static_cast<long>(points[p].i) + d[0],
                                  static_cast<long>(points[p].j) + d[1]);
        if (q < 0) continue;
        const auto qi = static_cast<std::size_t>(q);
        if (!seen[qi] && labels[qi] == labels[p]) {
          seen[qi] = true;
          frontier.push(qi);
        }
      }
    }
  }
  return regions;
}

std::vector<std::size_t> BasinRaster::label_counts() const {
  std::vector<std::size_t> counts(4, 0);
  for (const int l : labels) ++counts[static_cast<std::size_t>(l)];
  return counts;
}

void BasinRaster::write_ppm(std::ostream& out) const {
  const std::size_t side = resolution >= 3 ? resolution - 2 : 0;
  out << "P6\n" << side << ' ' << side << "\n255\n";
  static constexpr unsigned char palette[4][3] = {
      {0, 0, 0}, {220, 40, 40}, {40, 160, 60}, {40, 80, 220}};
  std::vector<unsigned char> pixels(side * side * 3, 255);
  for (std::size_t p = 0; p < points.size(); ++p) {
    const std::size_t col = points[p].i - 1;
    const std::size_t row = side - points[p].j;
    const auto* c = palette[labels[p]];
    for (int ch = 0; ch < 3; ++ch) pixels[(row * side + col) * 3 + ch] = c[ch];
  }
  out.write(reinterpret_cast<const char*>(pixels.data()),
            static_cast<std::streamsize>(pixels.size()));
}

void BasinRaster::write_csv(std::ostream& out) const {
  CsvWriter csv(out);
  csv.row({"x1", "x2", "x3", "label", "iters"});
  const double r = static_cast<double>(resolution);
  for (std::size_t p = 0; p < points.size(); ++p) {
    csv.row({format_double(static_cast<double>(points[p].i) / r),
             format_double(static_cast<double>(points[p].j) / r),
             format_double(static_cast<double>(points[p].k) / r), std::to_string(labels[p]),
             std::to_string(iterations[p])});
  }
}

BasinRaster compute_basins(const BasinOptions& options) {
  if (options.resolution < 3) throw DomainError("basin resolution must be >= 3");
  const HermitianOperator a = generate(MatrixSpec::diag3(options.s));
  const double eigenvalues[3] = {-1.0, options.s, 1.0};
  BasinRaster raster;
  raster.resolution = options.resolution;
  raster.points = simplex_grid(options.resolution);
  raster.labels.assign(raster.points.size(), BasinRaster::sentinel);
  raster.iterations.assign(raster.points.size(), 0);
  parallel_for(raster.points.size(), options.threads, [&](std::size_t p) {
    const SolveOutcome out =
        run_solver(options.solver, a, raster.points[p].vector, options.gamma, options.stop);
    raster.iterations[p] = out.iterations;
    if (out.status != Status::converged && out.status != Status::near_singular_converged) return;
    for (int l = 0; l < 3; ++l) {
      if (std::abs(out.eigenpair.value - eigenvalues[l]) <= 1e-6) raster.labels[p] = l + 1;
    }
  });
  return raster;
}

// ---------------------------------------------------------------------------------------

std::vector<double> angle_grid(double lo_deg, double hi_deg, std::size_t count) {
  if (count == 0) throw DomainError("angle grid needs at least one point");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = count == 1 ? lo_deg
                        : lo_deg + (hi_deg - lo_deg) * static_cast<double>(i) /
                                       static_cast<double>(count - 1);
  }
  return out;
}

namespace {

std::size_t pick_target(const std::optional<std::size_t>& requested, std::uint64_t seed,
                        std::size_t n) {
  if (requested) {
    if (*requested >= n) throw DomainError("target index out of range");
    return *requested;
  }
  Rng rng(Rng::split_seed(seed, 0));
  return rng.index(n);
}

}  // namespace

std::vector<SweepRecord> run_sweep(const SweepOptions& options) {
  if (options.angles_deg.empty()) throw DomainError("sweep needs at least one angle");
  const HermitianOperator a = generate(options.spec);
  const EigenDecomposition decomp = oracle_eig(a);
  const std::size_t target = pick_target(options.target_index, options.seed, a.size());
  const double target_value = decomp.values[target];

  const std::size_t per_angle = options.samples_per_angle * options.solvers.size();
  std::vector<SweepRecord> records(options.angles_deg.size() * per_angle);
  const std::size_t jobs = options.angles_deg.size() * options.samples_per_angle;
  parallel_for(jobs, options.threads, [&](std::size_t job) {
    const std::size_t angle_index = job / options.samples_per_angle;
    const double deg = options.angles_deg[angle_index];
    const std::uint64_t seed = Rng::split_seed(options.seed, 1 + job);
    const ComplexVector x0 =
        initial_vector_with_angle(decomp, target, deg * std::numbers::pi / 180.0, seed);
    for (std::size_t s = 0; s < options.solvers.size(); ++s) {
      const SolveOutcome out = run_solver(options.solvers[s], a, x0, options.gamma, options.stop);
      SweepRecord& rec = records[job * options.solvers.size() + s];
      rec.angle_deg = deg;
      rec.solver = std::string(to_string(options.solvers[s]));
      rec.eigenvalue = out.eigenpair.value;
      rec.target = target_value;
      rec.success = matches_target(out.eigenpair.value, target_value);
      rec.iterations = out.iterations;
      rec.seed = seed;
      rec.status = out.status;
    }
  });
  return records;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
  CsvWriter csv(out);
  csv.row({"angle_deg", "solver", "eigenvalue", "target", "success", "iterations", "seed",
           "status"});
  for (const auto& r : records) {
    csv.row({format_double(r.angle_deg), r.solver, format_double(r.eigenvalue),
             format_double(r.target), r.success ? "1" : "0", std::to_string(r.iterations),
             std::to_string(r.seed), std::string(to_string(r.status))});
  }
}

// ---------------------------------------------------------------------------------------

std::vector<AngleBand> table1_bands() {
  return {{80, 90}, {70, 80}, {60, 70}, {50, 60}, {40, 50}, {30, 40}, {0, 30}};
}

Table1Result run_table1(const Table1Options& options) {
  if (options.samples < 1) throw DomainError("table1 needs at least one sample per band");
  const HermitianOperator a = generate(options.spec);
  const EigenDecomposition decomp = oracle_eig(a);
  const std::size_t n = a.size();
  Table1Result result;
  result.target_index = pick_target(options.target_index, options.seed, n);
  result.target_value = decomp.values[result.target_index];
  const double target_value = result.target_value;

  const auto bands = table1_bands();
  struct Sample {
    bool classic = false;
    bool prqi = false;
    bool ordering = false;
    double gamma0 = 0.0;
  };
  std::vector<Sample> samples(bands.size() * options.samples);
  parallel_for(samples.size(), options.threads, [&](std::size_t job) {
    const AngleBand band = bands[job / options.samples];
    Rng rng(Rng::split_seed(options.seed, 1 + job));
    double deg = band.lo_deg;
    while (deg <= band.lo_deg || deg >= band.hi_deg) {
      deg = band.lo_deg + (band.hi_deg - band.lo_deg) * rng.uniform();
    }
    const ComplexVector x0 = initial_vector_with_angle(
        decomp, result.target_index, deg * std::numbers::pi / 180.0, rng.next());

    Sample& s = samples[job];
    const double mu0 = rayleigh_quotient(a, x0);
    const double r0 = norm(residual(a, mu0, x0));
    s.gamma0 = options.prqi_gamma(IterationState{0, mu0, r0, &x0});
    s.ordering = true;
    const double d_target = std::abs(target_value - mu0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != result.target_index && !(d_target < std::abs(decomp.values[j] - mu0))) {
        s.ordering = false;
        break;
      }
    }
    s.classic = matches_target(classic_rqi(a, x0, options.stop).eigenpair.value, target_value);
    s.prqi = matches_target(prqi(a, x0, options.prqi_gamma, options.stop).eigenpair.value,
                            target_value);
  });

  for (std::size_t b = 0; b < bands.size(); ++b) {
    Table1Row row;
    row.band = bands[b];
    row.samples = options.samples;
    for (std::size_t k = 0; k < options.samples; ++k) {
      const Sample& s = samples[b * options.samples + k];
      row.classic_success += s.classic;
      row.prqi_success += s.prqi;
      row.ordering += s.ordering;
      row.mean_gamma0 += s.gamma0;
    }
    const auto count = static_cast<double>(options.samples);
    row.classic_success /= count;
    row.prqi_success /= count;
    row.ordering /= count;
    row.mean_gamma0 /= count;
    result.rows.push_back(row);
  }
  return result;
}

void write_table1_csv(std::ostream& out, const Table1Result& result) {
  CsvWriter csv(out);
  csv.row({"band_lo_deg", "band_hi_deg", "samples", "classic_success", "prqi_success",
           "ordering_satisfied", "mean_gamma0"});
  for (const auto& r : result.rows) {
    csv.row({format_double(r.band.lo_deg), format_double(r.band.hi_deg),
             std::to_string(r.samples), format_double(r.classic_success),
             format_double(r.prqi_success), format_double(r.ordering),
             format_double(r.mean_gamma0)});
  }
}

// ---------------------------------------------------------------------------------------

std::vector<SturmRow> run_sturm_table(const sturm::SturmRunConfig& config, std::size_t threads) {
  const GeneralizedPair system = sturm::assemble(config.mesh);
  std::vector<SturmRow> rows(config.profiles.size());
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    rows[i].profile = config.profiles[i];
    rows[i].prqi = sturm::solve_gap_eigenpair(config.mesh, system, config.profiles[i], config.solver);
    rows[i].classic = sturm::solve_classic(config.mesh, system, config.profiles[i], config.solver);
  });
  return rows;
}

void write_sturm_csv(std::ostream& out, const std::vector<SturmRow>& rows) {
  CsvWriter csv(out);
  csv.row({"n_osc", "R", "prqi_lambda", "prqi_index", "prqi_iters", "prqi_status", "rqi_lambda",
           "rqi_index", "rqi_iters", "rqi_status", "prqi_in_gap", "prqi_eta_final"});
  for (const auto& r : rows) {
    csv.row({format_double(r.profile.n_osc), format_double(r.profile.R),
             format_double(r.prqi.outcome.eigenpair.value), std::to_string(r.prqi.index),
             std::to_string(r.prqi.outcome.iterations),
             std::string(to_string(r.prqi.outcome.status)),
             format_double(r.classic.outcome.eigenpair.value), std::to_string(r.classic.index),
             std::to_string(r.classic.outcome.iterations),
             std::string(to_string(r.classic.outcome.status)), r.prqi.in_gap ? "1" : "0",
             format_double(r.prqi.eta_final)});
  }
}

}  // namespace prqi::experiments
