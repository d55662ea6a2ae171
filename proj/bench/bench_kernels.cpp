#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "tlfreq/kernels.hpp"

namespace k = tlfreq::kernels;

namespace {

std::vector<double> random_vector(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (auto& e : v) e = d(rng);
  return v;
}

k::FactorTable random_table(std::size_t terms, std::size_t slots, std::size_t points) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> phase(-3.0, 3.0);
  k::FactorTable t;
  t.terms = terms;
  t.slots = slots;
  t.points = points;
  t.coeffs = random_vector(terms, 8);
  t.factors.resize(terms * slots * points);
  for (auto& f : t.factors) f = std::polar(1.0, phase(rng));
  return t;
}

template <bool Parallel>
void BM_Correlate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = random_vector(n + 200, 1);
  const auto taps = random_vector(201, 2);
  std::vector<double> out(n);
  for (auto _ : state) {
    if constexpr (Parallel) {
      k::parallel::correlate(x, taps, -100, 0.01, 100, out);
    } else {
      k::serial::correlate(x, taps, -100, 0.01, 100, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

template <bool Parallel>
void BM_Since(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto r1 = random_vector(n, 3);
  const auto r2 = random_vector(n, 4);
  const std::size_t hi = 100;
  std::vector<double> out(n - hi);
  for (auto _ : state) {
    if constexpr (Parallel) {
      k::parallel::since(r1, r2, 20, hi, hi, out);
    } else {
      k::serial::since(r1, r2, 20, hi, hi, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n - hi));
}

template <bool Parallel>
void BM_MonomialRows(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  k::MonomialBasis basis;
  basis.num_vars = 4;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b + a <= 3; ++b)
      for (int c = 0; c + b + a <= 3; ++c)
        for (int d = 0; d + c + b + a <= 3; ++d) {
          if (a + b + c + d == 0) continue;
          basis.exponents.insert(basis.exponents.end(), {a, b, c, d});
        }
  const auto samples = random_vector(rows * 4, 5);
  std::vector<double> out(rows * basis.size());
  for (auto _ : state) {
    if constexpr (Parallel) {
      k::parallel::monomial_rows(basis, samples, rows, out);
    } else {
      k::serial::monomial_rows(basis, samples, rows, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(rows));
}

template <bool Parallel>
void BM_EvaluateGrid(benchmark::State& state) {
  const auto points = static_cast<std::size_t>(state.range(0));
  const auto t = random_table(56, 2, points);
  std::vector<k::cplx> out(points * points);
  for (auto _ : state) {
    if constexpr (Parallel) {
      k::parallel::evaluate_grid(t, out);
    } else {
      k::serial::evaluate_grid(t, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(out.size()));
}

template <bool Parallel>
void BM_SlotProfile(benchmark::State& state) {
  const auto points = static_cast<std::size_t>(state.range(0));
  const auto t = random_table(56, 3, points);
  std::vector<double> out(points);
  for (auto _ : state) {
    if constexpr (Parallel) {
      k::parallel::slot_profile(t, out);
    } else {
      k::serial::slot_profile(t, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_HyperplaneSum(benchmark::State& state) {
  const auto points = static_cast<std::size_t>(state.range(0));
  const auto t = random_table(21, 2, points);
  const long half = static_cast<long>(points / 2);
  std::vector<long> bins(points);
  for (std::size_t i = 0; i < points; ++i) bins[i] = static_cast<long>(i) - half;
  std::vector<k::cplx> out(4 * half + 1);
  for (auto _ : state) {
    if constexpr (Parallel) {
      k::parallel::hyperplane_sum(t, bins, -2 * half, out);
    } else {
      k::serial::hyperplane_sum(t, bins, -2 * half, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(BM_Correlate<false>)->Name("correlate/serial")->Arg(1 << 16);
BENCHMARK(BM_Correlate<true>)->Name("correlate/parallel")->Arg(1 << 16);
BENCHMARK(BM_Since<false>)->Name("since/serial")->Arg(1 << 16);
BENCHMARK(BM_Since<true>)->Name("since/parallel")->Arg(1 << 16);
BENCHMARK(BM_MonomialRows<false>)->Name("monomial_rows/serial")->Arg(1 << 14);
BENCHMARK(BM_MonomialRows<true>)->Name("monomial_rows/parallel")->Arg(1 << 14);
BENCHMARK(BM_EvaluateGrid<false>)->Name("evaluate_grid/serial")->Arg(201);
BENCHMARK(BM_EvaluateGrid<true>)->Name("evaluate_grid/parallel")->Arg(201);
BENCHMARK(BM_SlotProfile<false>)->Name("slot_profile/serial")->Arg(41);
BENCHMARK(BM_SlotProfile<true>)->Name("slot_profile/parallel")->Arg(41);
BENCHMARK(BM_HyperplaneSum<false>)->Name("hyperplane_sum/serial")->Arg(401);
BENCHMARK(BM_HyperplaneSum<true>)->Name("hyperplane_sum/parallel")->Arg(401);

BENCHMARK_MAIN();
