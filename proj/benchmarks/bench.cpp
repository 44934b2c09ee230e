#include <benchmark/benchmark.h>

#include "poincare/expression.hpp"
#include "poincare/reduction.hpp"
#include "poincare/solver.hpp"
#include "poincare/spectral.hpp"

using namespace poincare;

namespace {

const Problem& e1() {
  static const Problem p = make_problem({-6, 11, -6}, {"1/(1+t)^3", "0", "0"});
  return p;
}

void BM_ExpressionEval(benchmark::State& state) {
  const auto e = expr::parse_expression("exp(-t)*sin(3*t) + 1/(1+t)^3 - sqrt(abs(t - 2))");
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(e.evaluate(t));
    t += 1e-3;
  }
}
BENCHMARK(BM_ExpressionEval);

void BM_OmegaTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reduction::build_reduced_rhs(n));
}
BENCHMARK(BM_OmegaTable)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

void BM_FindRoots(benchmark::State& state) {
  const auto a = spectral::monic_from_roots(std::vector<double>{2.5, 1.1, 0.3, -0.4, -1.7, -2.9});
  for (auto _ : state) benchmark::DoNotOptimize(spectral::find_roots(a));
}
BENCHMARK(BM_FindRoots);

void BM_ApplyOperator(benchmark::State& state) {
  const auto spectrum = spectral::find_roots(e1().a);
  const auto table = reduction::build_reduced_rhs(3);
  solver::SolveOptions o;
  o.t_max = 200.0;
  const auto sol = solver::solve(e1(), spectrum, table, 2, o);
  for (auto _ : state) benchmark::DoNotOptimize(sol.op->apply(sol.z));
}
BENCHMARK(BM_ApplyOperator)->Unit(benchmark::kMicrosecond);

void BM_PicardE1(benchmark::State& state) {
  const auto spectrum = spectral::find_roots(e1().a);
  const auto table = reduction::build_reduced_rhs(3);
  solver::SolveOptions o;
  o.t_max = 200.0;
  const int i = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solver::solve(e1(), spectrum, table, i, o));
}
BENCHMARK(BM_PicardE1)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
