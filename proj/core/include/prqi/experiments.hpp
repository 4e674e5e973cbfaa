#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "prqi/matrices.hpp"
#include "prqi/schedule.hpp"
#include "prqi/solvers.hpp"
#include "prqi/sturm.hpp"

namespace prqi::experiments {

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 = hardware concurrency).
/// Each index is processed exactly once; callers write into per-index slots, so results do
/// not depend on scheduling. The first exception thrown by any body is rethrown.
template <typename Body>
void parallel_for(std::size_t count, std::size_t threads, Body&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

enum class SolverKind { classic_rqi, prqi, prqi_full, inverse_iteration };

SolverKind parse_solver(std::string_view name);
std::string_view to_string(SolverKind kind) noexcept;

/// Runs one of the standard-problem solvers. inverse_iteration uses the Rayleigh quotient of
/// x0 as its fixed shift.
SolveOutcome run_solver(SolverKind kind, const HermitianOperator& a, const ComplexVector& x0,
                        const GammaSchedule& gamma, const StoppingCriteria& stop,
                        const TraceOptions& trace = {});

// ---------------------------------------------------------------------------------------
// Basins of attraction on diag(-1, s, 1)

struct BasinOptions {
  double s = 0.98;
  std::size_t resolution = 400;
  SolverKind solver = SolverKind::prqi;
  GammaSchedule gamma = GammaSchedule::residual_norm();
  StoppingCriteria stop{1e-11, 100, true, false};
  std::size_t threads = 0;
};

struct BasinRaster {
  static constexpr int sentinel = 0;  // no convergence to one of the three eigenpairs

  std::size_t resolution = 0;
  std::vector<SimplexPoint> points;
  std::vector<int> labels;  // 1, 2, 3 for eigenvalues -1, s, 1; or sentinel
  std::vector<std::size_t> iterations;

  /// Share of cells with at least one lattice 4-neighbor carrying a different label.
  [[nodiscard]] double boundary_fraction() const;
  /// Number of 4-connected regions of equal label.
  [[nodiscard]] std::size_t region_count() const;
  /// Cells per label, indexed 0 (sentinel) .. 3.
  [[nodiscard]] std::vector<std::size_t> label_counts() const;

  /// Binary P6 image of size (r-2) x (r-2); cell (i, j) sits at column i-1, row r-2-j.
  /// Palette: red, green, blue for labels 1..3, black for the sentinel, white off-lattice.
  void write_ppm(std::ostream& out) const;
  /// Columns x1, x2, x3 (barycentric), label, iters.
  void write_csv(std::ostream& out) const;
};

BasinRaster compute_basins(const BasinOptions& options);

// ---------------------------------------------------------------------------------------
// Angle sweeps

struct SweepOptions {
  MatrixSpec spec = MatrixSpec::one_two_one(100);
  std::uint64_t seed = 1;
  std::vector<double> angles_deg;
  std::size_t samples_per_angle = 1;
  std::vector<SolverKind> solvers{SolverKind::classic_rqi, SolverKind::prqi};
  GammaSchedule gamma = GammaSchedule::residual_norm();
  StoppingCriteria stop{1e-15, 100, true, false};
  /// Defaults to a seeded random index.
  std::optional<std::size_t> target_index;
  std::size_t threads = 0;
};

struct SweepRecord {
  double angle_deg = 0.0;
  std::string solver;
  double eigenvalue = 0.0;
  double target = 0.0;
  bool success = false;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  Status status = Status::converged;
};

/// |lambda - target| <= 1e-8 (1 + |target|).
bool matches_target(double lambda, double target);

/// Uniformly spaced angles lo, ..., hi (inclusive) in degrees.
std::vector<double> angle_grid(double lo_deg, double hi_deg, std::size_t count);

std::vector<SweepRecord> run_sweep(const SweepOptions& options);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records);

// ---------------------------------------------------------------------------------------
// Success fractions by initial-angle band

struct AngleBand {
  double lo_deg;
  double hi_deg;
};

/// 80-90, 70-80, 60-70, 50-60, 40-50, 30-40, 0-30 degrees.
std::vector<AngleBand> table1_bands();

struct Table1Options {
  MatrixSpec spec = MatrixSpec::one_two_one(100);
  std::size_t samples = 10000;  // per band
  std::uint64_t seed = 1;
  std::optional<std::size_t> target_index;
  GammaSchedule prqi_gamma = GammaSchedule::residual_norm_squared();
  StoppingCriteria stop{1e-15, 100, true, false};
  std::size_t threads = 0;
};

struct Table1Row {
  AngleBand band;
  std::size_t samples = 0;
  double classic_success = 0.0;  // fractions in [0, 1]
  double prqi_success = 0.0;
  double ordering = 0.0;  // initial shift closest to the target eigenvalue
  double mean_gamma0 = 0.0;
};

struct Table1Result {
  std::size_t target_index = 0;
  double target_value = 0.0;
  std::vector<Table1Row> rows;
};

/// Initial vectors cos(theta) v_t + sin(theta) w with theta uniform in each band and w a
/// Gaussian combination of the other eigenvectors.
Table1Result run_table1(const Table1Options& options);
void write_table1_csv(std::ostream& out, const Table1Result& result);

// ---------------------------------------------------------------------------------------
// Sturm-Liouville table

struct SturmRow {
  sturm::InitialProfile profile;
  sturm::GapResult prqi;
  sturm::GapResult classic;
};

std::vector<SturmRow> run_sturm_table(const sturm::SturmRunConfig& config, std::size_t threads);
void write_sturm_csv(std::ostream& out, const std::vector<SturmRow>& rows);

}  // namespace prqi::experiments
