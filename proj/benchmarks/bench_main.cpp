#include "hypsym/analytic.hpp"
#include "hypsym/clifford.hpp"
#include "hypsym/groups.hpp"
#include "hypsym/modsym.hpp"
#include "hypsym/special.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace hypsym;

static void BM_CliffordMultiply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  CliffordElement<double> x(n), y(n);
  for (Mask m = 0; m < x.size(); ++m) {
    x[m] = u(rng);
    y[m] = u(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_CliffordMultiply)->DenseRange(1, 5);

static void BM_RationalMultiply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  CliffordElement<Rational> x(n), y(n);
  for (Mask m = 0; m < x.size(); ++m) {
    x[m] = Rational(static_cast<std::int64_t>(rng() % 19) - 9, static_cast<std::int64_t>(rng() % 4) + 1);
    y[m] = Rational(static_cast<std::int64_t>(rng() % 19) - 9, static_cast<std::int64_t>(rng() % 4) + 1);
  }
  for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_RationalMultiply)->DenseRange(1, 5);

static void BM_CountDoubleCosets(benchmark::State& state) {
  const auto g = GroupDescriptor::gamma0(11);
  for (auto _ : state) benchmark::DoNotOptimize(count_double_cosets(g, static_cast<double>(state.range(0))));
}
BENCHMARK(BM_CountDoubleCosets)->Arg(500)->Arg(2000);

static void BM_GaussianEnumeration(benchmark::State& state) {
  const auto g = GroupDescriptor::imag_quad_gamma0(-4);
  for (auto _ : state) benchmark::DoNotOptimize(count_double_cosets(g, static_cast<double>(state.range(0))));
}
BENCHMARK(BM_GaussianEnumeration)->Arg(10)->Arg(20);

static void BM_SymbolTable(benchmark::State& state) {
  const auto q = state.range(0);
  static const Newform f = eta_product_coefficients(required_terms(1.0 / 2200.0, 1e-12) + 1);
  for (auto _ : state) benchmark::DoNotOptimize(SymbolTable(f, q, 1e-12));
}
BENCHMARK(BM_SymbolTable)->Arg(110)->Arg(1100)->Arg(2189);

static void BM_Kloosterman(benchmark::State& state) {
  const auto g = GroupDescriptor::gamma0(11);
  const auto chi = Cocycle::dirichlet_entry(DirichletCharacter(11, 5));
  const std::vector<std::int64_t> mu{1}, nu{2};
  for (auto _ : state) benchmark::DoNotOptimize(kloosterman_sum(g, QuadInt(state.range(0)), mu, nu, chi));
}
BENCHMARK(BM_Kloosterman)->Arg(121)->Arg(1331);

static void BM_BesselK(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0)) / 4.0;
  for (auto _ : state) benchmark::DoNotOptimize(bessel_K({1.5, 2.0}, x, 1e-12));
}
BENCHMARK(BM_BesselK)->Arg(1)->Arg(8)->Arg(40);
BENCHMARK_MAIN();
