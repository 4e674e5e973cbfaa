#include <cmath>

#include <gtest/gtest.h>

#include "prqi/errors.hpp"
#include "prqi/linalg.hpp"
#include "prqi/matrices.hpp"
#include "prqi/schedule.hpp"
#include "prqi/shifted_solve.hpp"
#include "prqi/solvers.hpp"
#include "support.hpp"

using namespace prqi;
using prqi::testing::alignment;
using prqi::testing::diagonal;
using prqi::testing::random_hermitian;
using prqi::testing::random_vector;

namespace {

const StoppingCriteria kTight{1e-12, 50, true, false};

TraceOptions keep_iterates() {
  TraceOptions t;
  t.keep_iterates = true;
  return t;
}

void expect_same_iterates(const SolveOutcome& a, const SolveOutcome& b, double tol = 1e-10) {
  ASSERT_EQ(a.iterates.size(), b.iterates.size());
  for (std::size_t k = 0; k < a.iterates.size(); ++k)
    EXPECT_GE(alignment(a.iterates[k], b.iterates[k]), 1.0 - tol) << "step " << k;
}

}  // namespace

TEST(GammaSchedule, ParseAndEvaluate) {
  const ComplexVector x{1.0};
  const IterationState s{0, 0.5, 0.3, &x};
  EXPECT_DOUBLE_EQ(GammaSchedule::parse("residual")(s), 0.3);
  EXPECT_DOUBLE_EQ(GammaSchedule::parse("residual2")(s), 0.09);
  EXPECT_DOUBLE_EQ(GammaSchedule::parse("constant:0.25")(s), 0.25);
  EXPECT_DOUBLE_EQ(GammaSchedule::parse("constant:0")(s), 0.0);
  EXPECT_THROW(GammaSchedule::parse("constant:-1"), DomainError);
  EXPECT_THROW(GammaSchedule::parse("constant:abc"), ParseError);
  EXPECT_THROW(GammaSchedule::parse("quartic"), ParseError);
}

TEST(GammaSchedule, CustomRuleValidated) {
  const ComplexVector x{1.0};
  const IterationState s{0, 0.0, 0.1, &x};
  const auto bad = GammaSchedule::custom([](const IterationState&) { return -1.0; });
  EXPECT_THROW((void)bad(s), DomainError);
  const auto good = GammaSchedule::custom([](const IterationState& st) { return 2 * st.residual_norm; }, "twice");
  EXPECT_DOUBLE_EQ(good(s), 0.2);
  EXPECT_EQ(good.name(), "twice");
}

TEST(StoppingCriteria, Validation) {
  EXPECT_THROW((StoppingCriteria{0.0, 10}.validate()), DomainError);
  EXPECT_THROW((StoppingCriteria{1e-8, 0}.validate()), DomainError);
  EXPECT_THROW((LocalizationGuard{5, 0.4}.validate(5)), DomainError);
  EXPECT_THROW((LocalizationGuard{1, 1.0}.validate(5)), DomainError);
}

TEST(InverseIteration, ContractsAtTheTheoreticalRate) {
  const auto a = diagonal({-1.0, 0.1, 1.0});
  TraceOptions trace;
  trace.target = ComplexVector{0.0, 0.0, 1.0};
  const auto out = inverse_iteration(a, 0.9, normalize(ComplexVector{1.0, 1.0, 1.0}), kTight, trace);
  EXPECT_EQ(out.status, Status::converged);
  EXPECT_NEAR(out.eigenpair.value, 1.0, 1e-12);
  // |1 - 0.9| / |0.1 - 0.9|
  for (std::size_t k = 0; k + 1 < out.trace.size(); ++k) {
    const double t0 = std::tan(*out.trace[k].angle), t1 = std::tan(*out.trace[k + 1].angle);
    if (t0 < 1e-10) break;
    EXPECT_LE(t1 / t0, 0.125 + 1e-8);
  }
  // the ratio approaches the bound once the middle component has died out
  const std::size_t k = out.trace.size() - 3;
  const double late = std::tan(*out.trace[k + 1].angle) / std::tan(*out.trace[k].angle);
  EXPECT_NEAR(late, 0.125, 1e-3);
}

TEST(InverseIteration, ShiftOnEigenvalueIsAnError) {
  EXPECT_THROW(inverse_iteration(diagonal({1.0, 2.0}), 1.0, normalize(ComplexVector{1.0, 1.0}), kTight),
               NearSingularError);
}

TEST(InverseIteration, ExactEigenvectorStopsImmediately) {
  const StoppingCriteria stop{1e-12, 50, false, false};
  const auto out = inverse_iteration(diagonal({1.0, 2.0}), 1.3, ComplexVector{0.0, 1.0}, stop);
  EXPECT_EQ(out.status, Status::converged);
  EXPECT_EQ(out.iterations, 0u);
}

TEST(ClassicRqi, Diag3Example) {
  const auto out = classic_rqi(diagonal({-1.0, 0.1, 1.0}), normalize(ComplexVector{0.1, 0.98, 0.1}), kTight);
  // cubic convergence lands on the eigenvalue to machine precision
  EXPECT_TRUE(out.status == Status::converged || out.status == Status::near_singular_converged);
  EXPECT_NEAR(out.eigenpair.value, 0.1, 1e-12);
  EXPECT_EQ(out.trace.size(), out.iterations + 1);
}

TEST(ClassicRqi, ExactEigenvector) {
  const auto out = classic_rqi(diagonal({-1.0, 0.1, 1.0}), ComplexVector{0.0, 0.0, 1.0}, kTight);
  EXPECT_LE(out.iterations, 1u);
  EXPECT_DOUBLE_EQ(out.eigenpair.value, 1.0);
}

TEST(ClassicRqi, HittingAnEigenvalueCountsAsConvergence) {
  // x0 = (1, 1)/sqrt2 on [[0, 1], [1, 0]] has RQ 1, an eigenvalue
  ComplexMatrix m(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  const auto out = classic_rqi(HermitianOperator::dense(m), normalize(ComplexVector{1.0, 1.0}), kTight);
  EXPECT_TRUE(out.status == Status::converged || out.status == Status::near_singular_converged);
  EXPECT_NEAR(out.eigenpair.value, 1.0, 1e-12);
}

TEST(ClassicRqi, MaxItersReported) {
  const auto a = generate(MatrixSpec::one_two_one(30));
  Rng rng(1);
  const auto out = classic_rqi(a, random_vector(30, rng, true), StoppingCriteria{1e-30, 2, false, false});
  EXPECT_EQ(out.status, Status::max_iters_exceeded);
  EXPECT_EQ(out.iterations, 2u);
  EXPECT_EQ(out.trace.size(), 3u);
}

TEST(ClassicRqi, ConvergedMeansResidualBelowTolerance) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto a = random_hermitian(15, seed);
    Rng rng(seed);
    const auto out = classic_rqi(a, random_vector(15, rng), kTight);
    if (out.status != Status::converged) continue;
    EXPECT_LE(out.eigenpair.residual_norm, kTight.tol);
    for (const auto& rec : out.trace) EXPECT_TRUE(std::isfinite(rec.residual_norm));
  }
}

TEST(ClassicRqi, ScaledTolerance) {
  // the scaled test compares against |mu| tol
  const auto a = diagonal({100.0, 200.0, 300.0});
  const auto x0 = normalize(ComplexVector{0.01, 1.0, 0.01});
  const auto loose = classic_rqi(a, x0, StoppingCriteria{1e-3, 50, false, true});
  const auto strict = classic_rqi(a, x0, StoppingCriteria{1e-3, 50, false, false});
  EXPECT_LE(loose.iterations, strict.iterations);
  EXPECT_LE(loose.eigenpair.residual_norm, 1e-3 * std::abs(loose.eigenpair.value));
}

TEST(Prqi, ZeroGammaMatchesClassicRqi) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto a = random_hermitian(12, seed);
    Rng rng(seed + 100);
    const auto x0 = random_vector(12, rng);
    const auto c = classic_rqi(a, x0, kTight, keep_iterates());
    const auto p = prqi::prqi(a, x0, GammaSchedule::constant(0.0), kTight, false, keep_iterates());
    const auto f = prqi_full(a, x0, GammaSchedule::constant(0.0), kTight, keep_iterates());
    expect_same_iterates(c, p);
    expect_same_iterates(c, f);
  }
}

TEST(Prqi, FullAndSimplifiedAgree) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto a = random_hermitian(20, seed);
    Rng rng(seed);
    const auto x0 = random_vector(20, rng);
    for (double g : {0.1, 1.0, 10.0}) {
      const StoppingCriteria stop{1e-12, 15, false, false};
      const auto f = prqi_full(a, x0, GammaSchedule::constant(g), stop, keep_iterates());
      const auto s = prqi::prqi(a, x0, GammaSchedule::constant(g), stop, false, keep_iterates());
      // near convergence the full system goes singular first, so compare the shared prefix
      const std::size_t n = std::min(f.iterates.size(), s.iterates.size());
      ASSERT_GE(n, 3u);
      for (std::size_t k = 0; k < n; ++k)
        EXPECT_GE(alignment(f.iterates[k], s.iterates[k]), 1.0 - 1e-8) << "seed " << seed << " step " << k;
    }
  }
}

TEST(Prqi, GammaTraceFollowsSchedule) {
  const auto a = generate(MatrixSpec::one_two_one(40));
  Rng rng(5);
  const auto x0 = random_vector(40, rng, true);
  const auto r1 = prqi::prqi(a, x0, GammaSchedule::residual_norm(), kTight);
  for (const auto& rec : r1.trace) EXPECT_DOUBLE_EQ(rec.gamma, rec.residual_norm);
  const auto r2 = prqi::prqi(a, x0, GammaSchedule::residual_norm_squared(), kTight);
  for (const auto& rec : r2.trace) EXPECT_DOUBLE_EQ(rec.gamma, rec.residual_norm * rec.residual_norm);
}

TEST(Prqi, ExactEigenvectorHasZeroGamma) {
  const auto out = prqi::prqi(diagonal({-1.0, 0.5, 1.0}), ComplexVector{0.0, 1.0, 0.0},
                        GammaSchedule::residual_norm(), kTight);
  EXPECT_EQ(out.status, Status::converged);
  EXPECT_DOUBLE_EQ(out.trace.front().gamma, 0.0);
  EXPECT_LE(out.iterations, 1u);
}

TEST(Prqi, ScaleShiftInvarianceForResidualNorm) {
  // gamma scales by |alpha|, so a negative alpha yields the complex conjugate iterates of a real A
  for (double alpha : {2.0, -0.5})
    for (double beta : {0.0, 3.0})
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto a = random_hermitian(15, 40 + seed, true);
        const auto b = a.affine(alpha, beta);
        Rng rng(seed);
        const auto x0 = random_vector(15, rng, true);
        const StoppingCriteria stop{1e-10, 8, false, false};
        const auto ra = prqi::prqi(a, x0, GammaSchedule::residual_norm(), stop, false, keep_iterates());
        const auto rb = prqi::prqi(b, x0, GammaSchedule::residual_norm(), stop, false, keep_iterates());
        const std::size_t n = std::min(ra.iterates.size(), rb.iterates.size());
        for (std::size_t k = 0; k < n; ++k) {
          auto expected = ra.iterates[k];
          if (alpha < 0)
            for (auto& v : expected) v = std::conj(v);
          EXPECT_GE(alignment(expected, rb.iterates[k]), 1.0 - 1e-8) << alpha << " " << beta << " " << k;
        }
      }
}

TEST(Prqi, OrthogonalInvariance) {
  const auto a = random_hermitian(10, 77, true);
  // Q from the oracle eigenvectors of an unrelated real symmetric matrix
  const auto q = oracle_eig(random_hermitian(10, 78, true)).vectors;
  const auto qa = HermitianOperator::dense(q.adjoint() * a.to_dense() * q);
  Rng rng(3);
  const auto x0 = random_vector(10, rng, true);
  const auto qx0 = q.adjoint().apply(x0);
  const StoppingCriteria stop{1e-10, 10, false, false};
  const auto r1 = prqi::prqi(a, x0, GammaSchedule::residual_norm_squared(), stop, false, keep_iterates());
  const auto r2 = prqi::prqi(qa, qx0, GammaSchedule::residual_norm_squared(), stop, false, keep_iterates());
  const std::size_t n = std::min(r1.iterates.size(), r2.iterates.size());
  for (std::size_t k = 0; k < n; ++k)
    EXPECT_GE(alignment(q.adjoint().apply(r1.iterates[k]), r2.iterates[k]), 1.0 - 1e-10);
}

TEST(Prqi, FinalizeRealGivesRealVector) {
  const auto a = generate(MatrixSpec::one_two_one(30));
  Rng rng(2);
  const auto out = prqi::prqi(a, random_vector(30, rng, true), GammaSchedule::residual_norm(), kTight, true);
  EXPECT_TRUE(out.finalized_real);
  EXPECT_TRUE(out.eigenpair.vector.is_real());
  EXPECT_LE(out.eigenpair.residual_norm, 1e-10);
}

TEST(Generalized, IdentityMassMatchesStandard) {
  const auto a = random_hermitian(10, 9);
  const GeneralizedPair p(a, HermitianOperator::identity(10));
  Rng rng(4);
  const auto x0 = random_vector(10, rng);
  expect_same_iterates(classic_rqi(a, x0, kTight, keep_iterates()),
                       classic_rqi_generalized(p, x0, kTight, keep_iterates()));
  const auto s = GammaSchedule::residual_norm_squared();
  expect_same_iterates(prqi::prqi(a, x0, s, kTight, false, keep_iterates()),
                       prqi_generalized(p, x0, s, kTight, std::nullopt, false, keep_iterates()));
}

TEST(Generalized, DiagonalExample) {
  // diag(2, 6) v = lambda diag(1, 2) v has eigenvalues 2 and 3; RQ(x0) = 8/3 is nearer 3
  const GeneralizedPair p(diagonal({2.0, 6.0}), diagonal({1.0, 2.0}));
  const auto x0 = m_normalize(p.m(), ComplexVector{1.0, 1.0});
  const auto out = classic_rqi_generalized(p, x0, kTight);
  EXPECT_NEAR(out.eigenpair.value, 3.0, 1e-12);
  EXPECT_NEAR(std::abs(out.eigenpair.vector[0]), 0.0, 1e-10);
  EXPECT_NEAR(m_norm(p.m(), out.eigenpair.vector), 1.0, 1e-12);
}

TEST(Generalized, GuardAborts) {
  // the iterate lives in the tail, so the guard fires at once
  const GeneralizedPair p(diagonal({1.0, 2.0, 3.0, 4.0}), HermitianOperator::identity(4));
  const auto x0 = normalize(ComplexVector{0.1, 0.1, 1.0, 1.0});
  const auto out = prqi_generalized(p, x0, GammaSchedule::residual_norm(), kTight, LocalizationGuard{2, 0.4});
  EXPECT_EQ(out.status, Status::guard_aborted);
  ASSERT_TRUE(out.trace.back().eta.has_value());
  EXPECT_GT(*out.trace.back().eta, 0.4);
}

TEST(Eta, Examples) {
  const LocalizationGuard half{2, 0.4};
  EXPECT_DOUBLE_EQ(eta(ComplexVector{1.0, 1.0, 0.0, 0.0}, half), 0.0);
  EXPECT_DOUBLE_EQ(eta(ComplexVector{0.0, 0.0, 1.0, 0.0}, half), 1.0);
  EXPECT_NEAR(eta(ComplexVector{1.0, 1.0, 1.0, 1.0}, half), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_THROW(eta(ComplexVector(4), half), DomainError);
}

TEST(ConvergenceOrder, Fits) {
  EXPECT_NEAR(convergence_order_estimate(std::vector<double>{1e-1, 1e-2, 1e-4, 1e-8}), 2.0, 1e-12);
  EXPECT_NEAR(convergence_order_estimate(std::vector<double>{1e-1, 1e-3, 1e-9}), 3.0, 1e-12);
  // saturated entries are dropped
  EXPECT_NEAR(convergence_order_estimate(std::vector<double>{1e-1, 1e-3, 1e-9, 1e-17, 1e-17}), 3.0, 1e-12);
  EXPECT_THROW(convergence_order_estimate(std::vector<double>{1e-1, 1e-3}), NotEstimable);
}

TEST(ConvergenceOrder, SolversOnDiag3) {
  const auto a = generate(MatrixSpec::diag3(0.1));
  const auto eig = oracle_eig(a);
  TraceOptions trace;
  trace.target = eig.vectors.column(1);
  const auto x0 = initial_vector_with_angle(eig, 1, 0.1, 3);
  auto slope = [&](const SolveOutcome& out) {
    std::vector<double> t;
    for (const auto& rec : out.trace) t.push_back(std::tan(*rec.angle));
    return convergence_order_estimate(t);
  };
  const StoppingCriteria stop{1e-15, 30, false, false};
  EXPECT_GE(slope(classic_rqi(a, x0, stop, trace)), 2.5);
  EXPECT_GE(slope(prqi::prqi(a, x0, GammaSchedule::residual_norm_squared(), stop, false, trace)), 2.5);
  const double q = slope(prqi::prqi(a, x0, GammaSchedule::residual_norm(), stop, false, trace));
  EXPECT_GE(q, 1.7);
  EXPECT_LE(q, 2.5);
}
