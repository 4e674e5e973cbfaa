#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "prqi/errors.hpp"
#include "prqi/inertia.hpp"
#include "prqi/linalg.hpp"
#include "prqi/shifted_solve.hpp"
#include "prqi/solvers.hpp"
#include "prqi/sturm.hpp"

using namespace prqi;
using namespace prqi::sturm;

namespace {

double row_sum(const HermitianOperator& t, std::size_t i) {
  const auto& d = t.diagonal();
  const auto& o = t.off_diagonal();
  double s = d[i];
  if (i > 0) s += o[i - 1];
  if (i + 1 < d.size()) s += o[i];
  return s;
}

SturmConfig small_mesh(double h, LeftBoundary bc) {
  SturmConfig c;
  c.length = 1.0;
  c.h = h;
  c.x_dirichlet_pad = 0.0;
  c.left_bc = bc;
  return c;
}

// smallest generalized eigenvalue by inverse iteration at shift 0
double smallest_eigenvalue(const GeneralizedPair& p) {
  ComplexVector x(p.size());
  for (auto& v : x) v = 1.0;
  x = m_normalize(p.m(), x);
  for (int k = 0; k < 200; ++k)
    x = m_normalize(p.m(), solve_shifted_generalized(p, Complex(-1e-3), p.m().apply(x)));
  return generalized_rayleigh_quotient(p, x);
}

}  // namespace

TEST(SturmConfig, Validation) {
  SturmConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.elements(), 10730u);
  c.h = 0.03;
  EXPECT_THROW(c.validate(), DomainError);
  c = SturmConfig{};
  c.quadrature_points = 1;
  EXPECT_THROW(c.validate(), DomainError);
  EXPECT_THROW((InitialProfile{3.2, 35}.validate(SturmConfig{})), DomainError);
  EXPECT_THROW((InitialProfile{3, 200}.validate(SturmConfig{})), DomainError);
}

TEST(Assemble, MassRowSumsAndStiffnessKernel) {
  const auto c = small_mesh(0.1, LeftBoundary::natural);
  const auto p = assemble(c, [](double) { return 0.0; });
  const std::size_t n = p.size();
  ASSERT_EQ(n, 11u);
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double expected = (i == 0 || i + 1 == n) ? c.h / 2 : c.h;
    EXPECT_NEAR(row_sum(p.m(), i), expected, 1e-15);
    total += row_sum(p.m(), i);
    // constants lie in the kernel of the pure stiffness matrix
    EXPECT_NEAR(row_sum(p.a(), i), 0.0, 1e-12);
  }
  EXPECT_NEAR(total, c.length, 1e-14);
}

TEST(Assemble, DirichletDropsTheFirstNode) {
  const auto c = small_mesh(0.1, LeftBoundary::dirichlet);
  EXPECT_EQ(assemble(c).size(), 10u);
  EXPECT_DOUBLE_EQ(c.nodes().front(), 0.1);
}

TEST(Assemble, MassIsPositiveDefinite) {
  const SturmConfig c;
  const auto p = assemble(c);
  EXPECT_TRUE(is_positive_definite(p.m()));
  const auto k = assemble(small_mesh(0.05, LeftBoundary::natural), [](double) { return 0.0; });
  EXPECT_EQ(shifted_inertia(k.a(), -1e-12).negative, 0u);  // stiffness is semidefinite
}

TEST(Assemble, SecondOrderMeshConvergence) {
  // -u'' = lambda u, u(0) = 0, u'(1) = 0: lambda_1 = (pi / 2)^2
  const double exact = std::pow(std::numbers::pi / 2, 2);
  double prev = 0;
  for (double h : {0.1, 0.05, 0.025}) {
    const auto p = assemble(small_mesh(h, LeftBoundary::dirichlet), [](double) { return 0.0; });
    const double err = std::abs(smallest_eigenvalue(p) - exact);
    if (prev > 0) EXPECT_NEAR(prev / err, 4.0, 0.2) << h;
    prev = err;
  }
}

TEST(Potential, Values) {
  EXPECT_DOUBLE_EQ(potential(0.0), -40.0);
  EXPECT_NEAR(potential(std::numbers::pi / 2), 1.0 - 40.0 / (1 + std::pow(std::numbers::pi / 2, 2)), 1e-14);
}

TEST(InitialVector, Profile) {
  const SturmConfig c;
  const auto p = assemble(c);
  const InitialProfile prof{1.5, 35};
  const auto x = build_initial_vector(c, prof, p.m());
  const auto nodes = c.nodes();
  EXPECT_NEAR(m_norm(p.m(), x), 1.0, 1e-12);
  const double first = x[static_cast<std::size_t>(std::llround(5.0 / c.h))].real();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] <= c.x_dirichlet_pad || nodes[i] > prof.R) {
      EXPECT_EQ(x[i], Complex(0.0)) << nodes[i];
      continue;
    }
    // three pieces of length 35 / 3 with alternating sign
    const int piece = std::min(2, static_cast<int>(std::floor(nodes[i] / (35.0 / 3))));
    EXPECT_DOUBLE_EQ(x[i].real(), piece % 2 == 0 ? first : -first) << nodes[i];
  }
  EXPECT_DOUBLE_EQ(eta(x, guard_from_cutoff(c, 80.0, 0.4)), 0.0);
}

TEST(Guard, FirstNodeBeyondCutoff) {
  const SturmConfig c;
  const auto g = guard_from_cutoff(c, 80.0, 0.4);
  const auto nodes = c.nodes();
  EXPECT_GT(nodes[g.tail_start_index], 80.0);
  EXPECT_LE(nodes[g.tail_start_index - 1], 80.0);
  EXPECT_THROW(guard_from_cutoff(c, 200.0, 0.4), DomainError);
}

TEST(EigenvalueIndex, MonotoneAndStartsAtOne) {
  const auto p = assemble(small_mesh(0.05, LeftBoundary::dirichlet), [](double) { return 0.0; });
  EXPECT_EQ(eigenvalue_index(p, -1.0), 1u);
  std::size_t last = 0;
  for (double l = -1.0; l < 1e4; l += 13.7) {
    const auto idx = eigenvalue_index(p, l);
    EXPECT_GE(idx, last);
    last = idx;
  }
  EXPECT_EQ(last, p.size() + 1);
}

TEST(GapSolver, TableRow) {
  const SturmConfig c;
  const auto p = assemble(c);
  const GapSolverSettings settings;
  const auto r = solve_gap_eigenpair(c, p, InitialProfile{4.5, 55}, settings);
  EXPECT_EQ(r.outcome.status, Status::converged);
  EXPECT_NEAR(r.outcome.eigenpair.value, 0.53874, 5e-6);
  EXPECT_EQ(r.index, 24u);
  EXPECT_EQ(r.outcome.iterations, 8u);
  EXPECT_TRUE(r.in_gap);
  EXPECT_LT(r.eta_final, 0.4);
  EXPECT_LE(r.outcome.eigenpair.residual_norm, settings.stop.tol);

  const auto classic = solve_classic(c, p, InitialProfile{4.5, 55}, settings);
  EXPECT_GT(classic.outcome.eigenpair.value, 20.0);
}

TEST(RunConfig, ParsesKeys) {
  std::istringstream in(
      "# mesh\n"
      "X = 50\n"
      "h = 0.02\n"
      "x0 = 0.2\n"
      "left_bc = dirichlet\n"
      "tol = 1e-9\n"
      "schedule = residual\n"
      "S = 40\n"
      "eta_star = 0.3\n"
      "profiles = 3:35, 4.5:20\n");
  const auto cfg = parse_run_config(in);
  EXPECT_DOUBLE_EQ(cfg.mesh.length, 50.0);
  EXPECT_DOUBLE_EQ(cfg.mesh.h, 0.02);
  EXPECT_DOUBLE_EQ(cfg.mesh.x_dirichlet_pad, 0.2);
  EXPECT_EQ(cfg.mesh.left_bc, LeftBoundary::dirichlet);
  EXPECT_DOUBLE_EQ(cfg.solver.stop.tol, 1e-9);
  EXPECT_EQ(cfg.solver.schedule.kind(), GammaSchedule::Kind::residual_norm);
  EXPECT_DOUBLE_EQ(cfg.solver.S, 40.0);
  EXPECT_DOUBLE_EQ(cfg.solver.eta_star, 0.3);
  ASSERT_EQ(cfg.profiles.size(), 2u);
  EXPECT_DOUBLE_EQ(cfg.profiles[1].n_osc, 4.5);
  EXPECT_DOUBLE_EQ(cfg.profiles[1].R, 20.0);
}

TEST(RunConfig, DefaultsAndErrors) {
  std::istringstream empty("");
  const auto cfg = parse_run_config(empty);
  EXPECT_EQ(cfg.profiles.size(), 8u);
  EXPECT_DOUBLE_EQ(cfg.mesh.length, 107.3);
  std::istringstream bad("colour = blue\n");
  EXPECT_THROW(parse_run_config(bad), ParseError);
  std::istringstream bad_value("h = fast\n");
  EXPECT_THROW(parse_run_config(bad_value), ParseError);
}
