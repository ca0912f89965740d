#include <benchmark/benchmark.h>

#include <random>

#include "fda/catalog.hpp"
#include "fda/linalg.hpp"
#include "fda/parallel.hpp"

namespace {

fda::Catalog& cat() {
  static fda::Catalog c;
  return c;
}

void BM_Canonicalize(benchmark::State& state) {
  const auto& sig = *cat().mink(11).algebra->signature();
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> g(0, static_cast<int>(sig.size()) - 1);
  std::vector<fda::Monomial::Storage> inputs(1024);
  for (auto& f : inputs)
    for (int i = 0; i < state.range(0); ++i)
      f.push_back(static_cast<fda::GenId>(g(rng)));
  for (auto _ : state)
    for (const auto& f : inputs) {
      auto copy = f;
      benchmark::DoNotOptimize(fda::canonicalize(sig, copy));
    }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(inputs.size()));
}
BENCHMARK(BM_Canonicalize)->Arg(4)->Arg(8)->Arg(12);

void BM_Mu4Squared(benchmark::State& state) {
  const fda::Element& mu4 = cat().mu(11, 2);
  fda::ThreadCountScope threads(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(fda::mul(mu4, mu4));
}
BENCHMARK(BM_Mu4Squared)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_DMu7(benchmark::State& state) {
  const fda::Element& mu7 = cat().mu(11, 5);
  const auto& a = *cat().mink(11).algebra;
  fda::ThreadCountScope threads(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(fda::apply_d(a, mu7));
}
BENCHMARK(BM_DMu7)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_DifferentialMatrixRank(benchmark::State& state) {
  const auto& a = cat().mink(11).algebra;
  const int degree = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const fda::SparseRationalMatrix m = fda::differential_matrix(a, degree);
    benchmark::DoNotOptimize(fda::rank(m));
  }
}
BENCHMARK(BM_DifferentialMatrixRank)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_RandomRank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> v(-9, 9);
  fda::SparseRationalMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (rng() % 4 == 0)
        m.set(r, c, fda::Rational(v(rng)));
  for (auto _ : state)
    benchmark::DoNotOptimize(fda::rank(m));
}
BENCHMARK(BM_RandomRank)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_LorentzTrace3(benchmark::State& state) {
  const auto& p = cat().poincare();
  for (auto _ : state)
    benchmark::DoNotOptimize(fda::lorentz_trace_element(p, cat().rep(11), 3));
}
BENCHMARK(BM_LorentzTrace3)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
