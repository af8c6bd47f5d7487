#include <benchmark/benchmark.h>

#include "envlab/complement.hpp"
#include "envlab/ergodic.hpp"
#include "envlab/isometry.hpp"
#include "envlab/random.hpp"
#include "simplex.hpp"

using namespace envlab;

namespace {

void BM_Simplex(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  detail::LinearProgram lp(n);
  lp.free_var.assign(static_cast<std::size_t>(n), false);
  lp.c = -Vector::Ones(n);
  for (int r = 0; r < n; ++r) {
    Vector row(n);
    for (int i = 0; i < n; ++i) row[i] = u(rng);
    lp.add_ub(row, 1.0);
  }
  for (auto _ : state) benchmark::DoNotOptimize(detail::solve_lp(lp).objective);
}
BENCHMARK(BM_Simplex)->Arg(8)->Arg(32)->Arg(96);

void BM_Cesaro(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Space s = Space::uniform(n, 3.0);
  Rng rng(2);
  std::vector<SignedPermutation> g;
  for (int k = 0; k < 3; ++k) g.push_back(random_signed_permutation(rng, s));
  const auto t = ContractionOperator::convex_combination(s, random_convex_weights(rng, 3), g);
  const ErgodicOptions opt{1e-9, 1LL << 40, ErgodicMethod::cesaro};
  for (auto _ : state) benchmark::DoNotOptimize(cesaro_projection(t, opt).iterations);
}
BENCHMARK(BM_Cesaro)->Arg(4)->Arg(6);

void BM_Stabilizer(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Space s = Space::uniform(n, 3.0);
  Rng rng(3);
  const Subspace y = random_subspace(rng, s, 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(stabilizer(y).size());
}
BENCHMARK(BM_Stabilizer)->DenseRange(4, 7);

void BM_OpNormSmooth(benchmark::State& state) {
  const Space s = Space::uniform(static_cast<int>(state.range(0)), 3.0);
  const Matrix a = Matrix::Random(s.n(), s.n());
  for (auto _ : state) benchmark::DoNotOptimize(op_norm(s, a, 3.0).value);
}
BENCHMARK(BM_OpNormSmooth)->Arg(4)->Arg(16);

void BM_MinProjectionL1(benchmark::State& state) {
  const Space s = Space::uniform(static_cast<int>(state.range(0)), 1.0);
  Rng rng(4);
  const Subspace y = random_subspace(rng, s, s.n() / 2);
  for (auto _ : state) benchmark::DoNotOptimize(min_projection_norm(s, y, 1.0).upper_bound);
}
BENCHMARK(BM_MinProjectionL1)->Arg(4)->Arg(6);

}  // namespace
BENCHMARK_MAIN();
