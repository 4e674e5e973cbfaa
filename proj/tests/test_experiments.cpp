#include <atomic>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "prqi/errors.hpp"
#include "prqi/experiments.hpp"

using namespace prqi;
using namespace prqi::experiments;

TEST(ParallelFor, EveryIndexOnce) {
  for (std::size_t threads : {1, 3, 8}) {
    std::vector<int> hits(1000);
    parallel_for(hits.size(), threads, [&](std::size_t i) { ++hits[i]; });
    for (int h : hits) EXPECT_EQ(h, 1);
  }
}

TEST(ParallelFor, RethrowsFirstError) {
  EXPECT_THROW(parallel_for(100, 4,
                            [](std::size_t i) {
                              if (i == 17) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}

TEST(Solvers, ParseNames) {
  EXPECT_EQ(parse_solver("rqi"), SolverKind::classic_rqi);
  EXPECT_EQ(parse_solver("classic-rqi"), SolverKind::classic_rqi);
  EXPECT_EQ(parse_solver("prqi-full"), SolverKind::prqi_full);
  EXPECT_EQ(parse_solver("inverse-iteration"), SolverKind::inverse_iteration);
  EXPECT_THROW(parse_solver("lanczos"), ParseError);
}

TEST(Basins, RasterPartitionsTheLattice) {
  BasinOptions o;
  o.resolution = 30;
  o.threads = 2;
  const auto r = compute_basins(o);
  EXPECT_EQ(r.points.size(), 29u * 28u / 2u);
  EXPECT_EQ(r.labels.size(), r.points.size());
  const auto counts = r.label_counts();
  EXPECT_EQ(counts[0] + counts[1] + counts[2] + counts[3], r.points.size());
  for (int l : r.labels) EXPECT_TRUE(l >= 0 && l <= 3);
}

TEST(Basins, PpmIsWellFormedAndDeterministic) {
  BasinOptions o;
  o.resolution = 24;
  o.solver = SolverKind::classic_rqi;
  std::ostringstream a, b;
  compute_basins(o).write_ppm(a);
  o.threads = 3;
  compute_basins(o).write_ppm(b);
  EXPECT_EQ(a.str(), b.str());
  std::istringstream in(a.str());
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  in >> magic >> w >> h >> maxval;
  in.get();
  EXPECT_EQ(magic, "P6");
  EXPECT_EQ(w, 22);
  EXPECT_EQ(h, 22);
  EXPECT_EQ(maxval, 255);
  const std::string payload(std::istreambuf_iterator<char>(in), {});
  EXPECT_EQ(payload.size(), static_cast<std::size_t>(3 * w * h));
}

TEST(Basins, UniformRasterHasNoBoundary) {
  BasinRaster r;
  r.resolution = 8;
  r.points = simplex_grid(8);
  r.labels.assign(r.points.size(), 2);
  EXPECT_EQ(r.boundary_fraction(), 0.0);
  EXPECT_EQ(r.region_count(), 1u);
  // one odd cell makes a second region
  r.labels[0] = 1;
  EXPECT_EQ(r.region_count(), 2u);
  EXPECT_GT(r.boundary_fraction(), 0.0);
}

TEST(Sweep, GridAndTargetMatch) {
  const auto g = angle_grid(10, 30, 5);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_DOUBLE_EQ(g.front(), 10.0);
  EXPECT_DOUBLE_EQ(g[2], 20.0);
  EXPECT_DOUBLE_EQ(g.back(), 30.0);
  EXPECT_TRUE(matches_target(1.0 + 1e-9, 1.0));
  EXPECT_FALSE(matches_target(1.0 + 1e-7, 1.0));
}

TEST(Sweep, SmallAnglesSucceed) {
  SweepOptions o;
  o.spec = MatrixSpec::one_two_one(30);
  o.angles_deg = {1.0, 2.0};
  o.samples_per_angle = 3;
  o.target_index = 10;
  const auto records = run_sweep(o);
  EXPECT_EQ(records.size(), 2u * 3u * 2u);
  for (const auto& r : records)
    if (r.solver == "prqi") EXPECT_TRUE(r.success);
  std::ostringstream csv;
  write_sweep_csv(csv, records);
  EXPECT_EQ(csv.str().substr(0, csv.str().find("\r\n")).find("angle_deg"), 0u);
}

TEST(Table1, ShapeOnSmallRun) {
  Table1Options o;
  o.spec = MatrixSpec::one_two_one(20);
  o.samples = 150;
  o.target_index = 9;
  const auto res = run_table1(o);
  ASSERT_EQ(res.rows.size(), 7u);
  // success never drops as the band moves toward the target, up to sampling noise
  for (std::size_t b = 1; b < res.rows.size(); ++b) {
    EXPECT_GE(res.rows[b].prqi_success, res.rows[b - 1].prqi_success - 0.08);
    EXPECT_LE(res.rows[b].mean_gamma0, res.rows[b - 1].mean_gamma0 + 0.1);
  }
  EXPECT_DOUBLE_EQ(res.rows.back().prqi_success, 1.0);
  EXPECT_DOUBLE_EQ(res.rows.back().classic_success, 1.0);
  for (const auto& row : res.rows) EXPECT_EQ(row.samples, 150u);

  // deterministic under a fixed seed
  const auto again = run_table1(o);
  for (std::size_t b = 0; b < 7; ++b) EXPECT_EQ(again.rows[b].classic_success, res.rows[b].classic_success);
}
