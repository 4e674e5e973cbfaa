#include <benchmark/benchmark.h>

#include "prqi/matrices.hpp"
#include "prqi/rng.hpp"
#include "prqi/shifted_solve.hpp"
#include "prqi/solvers.hpp"
#include "prqi/sturm.hpp"

namespace {

using namespace prqi;

ComplexVector gaussian(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  ComplexVector x(n);
  for (auto& v : x) v = rng.normal();
  return normalize(x);
}

void BM_TridiagonalSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = generate(MatrixSpec::one_two_one(n));
  const auto rhs = gaussian(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(solve_shifted(a, Complex(1.3, 0.01), rhs));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TridiagonalSolve)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_DenseSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = generate(MatrixSpec::laplace_2d(n));
  const auto rhs = gaussian(a.size(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(solve_shifted(a, Complex(1.3, 0.01), rhs));
}
BENCHMARK(BM_DenseSolve)->DenseRange(4, 10, 3);

void BM_Solver(benchmark::State& state) {
  const auto a = generate(MatrixSpec::one_two_one(1000));
  const auto x0 = gaussian(1000, 2);
  const StoppingCriteria stop{1e-12, 100, true, false};
  const bool use_prqi = state.range(0) != 0;
  for (auto _ : state) {
    auto out = use_prqi ? prqi::prqi(a, x0, GammaSchedule::residual_norm_squared(), stop)
                        : classic_rqi(a, x0, stop);
    benchmark::DoNotOptimize(out.eigenpair.value);
  }
  state.SetLabel(use_prqi ? "prqi" : "classic");
}
BENCHMARK(BM_Solver)->Arg(0)->Arg(1);

void BM_OracleEig(benchmark::State& state) {
  const auto a = generate(MatrixSpec::one_two_one(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(oracle_eig(a).values.front());
}
BENCHMARK(BM_OracleEig)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_SturmGapSolve(benchmark::State& state) {
  const sturm::SturmConfig mesh;
  const auto system = sturm::assemble(mesh);
  const sturm::GapSolverSettings settings;
  for (auto _ : state)
    benchmark::DoNotOptimize(sturm::solve_gap_eigenpair(mesh, system, {4.5, 55.0}, settings).index);
}
BENCHMARK(BM_SturmGapSolve)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
