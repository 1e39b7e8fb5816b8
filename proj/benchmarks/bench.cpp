// Microbenchmarks for the hot paths: closed-form sector eigensystems, dense
// assembly, completeness scans, symmetry verifiers, band surfaces, and the
// dense biorthogonal construction.

#include <random>

#include <benchmark/benchmark.h>

#include "ptg/biortho.hpp"
#include "ptg/bloch.hpp"
#include "ptg/dirac.hpp"
#include "ptg/finite_biortho.hpp"
#include "ptg/spectrum.hpp"
#include "ptg/symmetry.hpp"

namespace {

using namespace ptg;

void BM_SectorEigen(benchmark::State& state) {
  const DiracModel m(Cone::K, FieldSign::Positive, 0.9, 1.0);
  const int l = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sector_eigen(m, 0, l));
  }
}
BENCHMARK(BM_SectorEigen)->Arg(1)->Arg(16)->Arg(64);

void BM_Apply(benchmark::State& state) {
  const DiracModel m(Cone::K, FieldSign::Positive, 0.9, 1.0);
  const int n2 = static_cast<int>(state.range(0));
  Spinor f(TruncationSpec(0, n2 + 1));
  for (int l = 0; l <= n2; ++l) {
    f.set_amplitude(Component::Upper, {0, l}, Complex(1.0, 0.5));
    if (l > 0) f.set_amplitude(Component::Lower, {0, l - 1}, Complex(-0.25, 1.0));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply(m, f));
  }
}
BENCHMARK(BM_Apply)->Arg(8)->Arg(64);

void BM_MatrixOnBasis(benchmark::State& state) {
  const DiracModel m(Cone::K, FieldSign::Positive, 0.9, 1.0);
  const TruncationSpec trunc(static_cast<int>(state.range(0)),
                             static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(matrix_on_basis(m, trunc));
  }
}
BENCHMARK(BM_MatrixOnBasis)->Args({0, 8})->Args({2, 16});

void BM_CompletenessCheck(benchmark::State& state) {
  const DiracModel m(Cone::K, FieldSign::Positive, 1.0, 1.0);
  const TruncationSpec trunc(static_cast<int>(state.range(0)), 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(completeness_check(m, trunc));
  }
}
BENCHMARK(BM_CompletenessCheck)->Arg(0)->Arg(2);

void BM_VerifyPT(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const TruncationSpec trunc(n, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_PT_identity(0.7, trunc));
  }
}
BENCHMARK(BM_VerifyPT)->Arg(8)->Arg(16);

void BM_BandSurface(benchmark::State& state) {
  const BlochParams p(1.0, Complex(0.0, 0.5), Complex(0.0, -0.5));
  const int n = static_cast<int>(state.range(0));
  const KGrid grid(-3.0, 3.0, n, -3.0, 3.0, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(band_surface(p, grid));
  }
}
BENCHMARK(BM_BandSurface)->Arg(32)->Arg(128);

void BM_BuildSystem(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937 rng(42u);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXcd basis(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) basis(i, j) = Complex(u(rng), u(rng));
  }
  Eigen::VectorXcd spec(n);
  for (int k = 0; k < n; ++k) spec(k) = Complex(static_cast<double>(k) + 0.5, 0.0);
  const Eigen::MatrixXcd H =
      basis * spec.asDiagonal() * basis.partialPivLu().solve(Eigen::MatrixXcd::Identity(n, n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_system(H));
  }
}
BENCHMARK(BM_BuildSystem)->Arg(4)->Arg(8)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
