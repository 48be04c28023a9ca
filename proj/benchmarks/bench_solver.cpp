#include <benchmark/benchmark.h>

#include "qhorn/pn.hpp"
#include "qhorn/solver.hpp"

namespace {

void BM_ChainOutput(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qhorn::Program p = qhorn::make_chain_program(n);
  qhorn::Query q;
  q.kind = qhorn::Query::Kind::Definite;
  q.head = p.varId("e0");
  for (auto _ : state) {
    qhorn::SolveResult r = qhorn::output(p, q);
    benchmark::DoNotOptimize(r.verdict);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_ChainOutput)->RangeMultiplier(2)->Range(1 << 10, 1 << 17)
    ->Complexity(benchmark::oN);

void BM_ChainSearch(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qhorn::Program p = qhorn::make_chain_program(n);
  qhorn::Query q;
  q.kind = qhorn::Query::Kind::Definite;
  q.head = p.varId("e0");
  qhorn::RefutationInput in = qhorn::build_refutation_input(p, q);
  for (auto _ : state) {
    auto out = qhorn::search_recursive(in.pprime, in.topGoal, 10 * n + 100);
    benchmark::DoNotOptimize(out.kind);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_ChainSearch)->RangeMultiplier(4)->Range(1 << 6, 1 << 10)
    ->Complexity();

}  // namespace

BENCHMARK_MAIN();
