#include <benchmark/benchmark.h>

#include <random>

#include "pargrade/cohom.hpp"
#include "pargrade/exactlin.hpp"
#include "pargrade/ffgeom.hpp"
#include "pargrade/liegrade.hpp"
#include "pargrade/orbitlib.hpp"
#include "pargrade/rootdata.hpp"

namespace {

using namespace pargrade;

void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> entry(-9, 9);
  exactlin::IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
  for (auto _ : state) benchmark::DoNotOptimize(exactlin::smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(6)->Arg(8)->Arg(12);

void BM_SubspaceEnumeration(benchmark::State& state) {
  const long long p = state.range(0);
  for (auto _ : state) {
    long long count = 0;
    ffgeom::for_each_subspace(p, 4, 2, [&](const ffgeom::Subspace&) { ++count; });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_SubspaceEnumeration)->Arg(2)->Arg(3)->Arg(5)->Arg(7);

void BM_FiberVerification(benchmark::State& state) {
  const auto c = cohom::load_case(state.range(0) == 0 ? "sp4" : "sl4");
  for (auto _ : state) benchmark::DoNotOptimize(ffgeom::verify_fiber_counts(c, {2, 3, 5}));
}
BENCHMARK(BM_FiberVerification)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_GradedOrbits(benchmark::State& state) {
  const liegrade::Cocharacter chi{{1, 0, 0, -1}};
  for (auto _ : state) benchmark::DoNotOptimize(orbitlib::graded_orbit_reps_typeA(chi, -1));
}
BENCHMARK(BM_GradedOrbits);

void BM_CanonicalParabolic(benchmark::State& state) {
  const liegrade::Cocharacter chi{{1, 0, 0, -1}};
  const auto sl4 = liegrade::MatrixLieAlgebra::build(rootdata::GroupType::SL, 4);
  const auto x = exactlin::RationalMatrix::parse("0,0,0,0;1,0,0,0;0,0,0,0;0,0,1,0");
  for (auto _ : state) {
    const auto t = liegrade::adapted_sl2_triple(sl4, chi, -1, x);
    benchmark::DoNotOptimize(liegrade::canonical_parabolic(sl4, chi, t, -1));
  }
}
BENCHMARK(BM_CanonicalParabolic);

void BM_PrimeReport(benchmark::State& state) {
  const auto rd = rootdata::standard_root_datum(state.range(0) == 0 ? rootdata::GroupType::Sp : rootdata::GroupType::SL,
                                                4);
  for (auto _ : state) benchmark::DoNotOptimize(rootdata::prime_report(rd));
}
BENCHMARK(BM_PrimeReport)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
