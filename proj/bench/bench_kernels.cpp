// Serial reference vs OpenMP kernels on the workloads the sequences use.

#include <benchmark/benchmark.h>

#include "zetadiff/kernels.hpp"
#include "zetadiff/mpcore.hpp"

using namespace zetadiff;

namespace {

using TableFn = std::vector<BigReal> (*)(long, Bits);
using SweepFn = std::vector<BigReal> (*)(const std::vector<BigReal>&, long, const std::vector<long>&, Bits);
using PanelFn = BigComplex (*)(long, const std::function<BigComplex(long)>&);

// max_ell = range(0), working precision grows with it as the budgets do
template <TableFn fill>
void BM_ZetaTable(benchmark::State& state) {
  long max_ell = state.range(0);
  Bits prec = digits_to_bits(max_ell / 2 + 30);
  for (auto _ : state) benchmark::DoNotOptimize(fill(max_ell, prec));
  state.SetItemsProcessed(state.iterations() * max_ell);
}

template <SweepFn sweep>
void BM_BinomialSweep(benchmark::State& state) {
  long n_max = state.range(0);
  Bits prec = digits_to_bits(n_max / 2 + 30);
  auto phi = kernels::serial::fill_zeta_table(n_max, prec);
  std::vector<long> ns;
  for (long n = 2; n <= n_max; ++n) ns.push_back(n);
  for (auto _ : state) benchmark::DoNotOptimize(sweep(phi, 2, ns, prec));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(ns.size()));
}

// One complex zeta evaluation per panel, the cost profile of the line integrals.
template <PanelFn integrate>
void BM_Panels(benchmark::State& state) {
  long count = state.range(0);
  Bits prec = digits_to_bits(30);
  auto panel = [prec](long i) {
    BigComplex s(BigReal(1.5, prec), BigReal(static_cast<double>(i) * 0.75, prec));
    return zeta_cx(s, prec);
  };
  for (auto _ : state) benchmark::DoNotOptimize(integrate(count, panel));
  state.SetItemsProcessed(state.iterations() * count);
}

}  // namespace

BENCHMARK(BM_ZetaTable<kernels::serial::fill_zeta_table>)->Name("zeta_table/serial")->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ZetaTable<kernels::omp::fill_zeta_table>)->Name("zeta_table/omp")->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BinomialSweep<kernels::serial::binomial_sweep>)->Name("binomial_sweep/serial")->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BinomialSweep<kernels::omp::binomial_sweep>)->Name("binomial_sweep/omp")->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Panels<kernels::serial::integrate_panels>)->Name("panels/serial")->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Panels<kernels::omp::integrate_panels>)->Name("panels/omp")->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
