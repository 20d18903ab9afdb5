#include <benchmark/benchmark.h>

#include "luckcheck/betamath.hpp"
#include "luckcheck/bkr.hpp"
#include "luckcheck/oracles.hpp"
#include "luckcheck/solver.hpp"

namespace {

using namespace luckcheck;

void BM_TailProb(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(betamath::tail_prob({175000, 57, 1e-4}));
  }
}
BENCHMARK(BM_TailProb);

void BM_LogTailProbDeepUnderflow(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(betamath::log_tail_prob({650, 600, 1e-4}));
  }
}
BENCHMARK(BM_LogTailProbDeepUnderflow);

void BM_DlogTailDn(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(betamath::dlog_tail_dn({174000, 57, 1e-4}));
  }
}
BENCHMARK(BM_DlogTailDn);

void BM_MinTickets(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(betamath::min_tickets(57, 1e-4, 5e-14));
  }
}
BENCHMARK(BM_MinTickets);

void BM_SolveMinSpendFourClasses(benchmark::State& state) {
  const solver::MinSpendProblem problem{
      {{1.0, 1e-4, 2}, {50.0, 1e-4, 1}, {100.0, 1e-4, 1}, {200.0, 1e-4, 2}}, 5e-14};
  for (auto _ : state) {
    benchmark::DoNotOptimize(solver::solve_min_spend(problem));
  }
}
BENCHMARK(BM_SolveMinSpendFourClasses);

void BM_SolveMaxProbFourClasses(benchmark::State& state) {
  const solver::MaxProbProblem problem{
      {{1.0, 1e-4, 2}, {50.0, 1e-4, 1}, {100.0, 1e-4, 1}, {200.0, 1e-4, 2}}, 1.85e6};
  for (auto _ : state) {
    benchmark::DoNotOptimize(solver::solve_max_prob(problem));
  }
}
BENCHMARK(BM_SolveMaxProbFourClasses);

void BM_BkrBoxThreeEvents(benchmark::State& state) {
  const int dims = static_cast<int>(state.range(0));
  bkr::FiniteEventSpace space(2, dims);
  std::vector<bkr::Event> events;
  for (int k = 0; k < 3; ++k) {
    bkr::Event e = bkr::empty_event(space);
    for (std::uint64_t idx = k; idx < space.outcome_count(); idx += k + 2) e.insert(idx);
    events.push_back(std::move(e));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(bkr::bkr_box(events));
  }
}
BENCHMARK(BM_BkrBoxThreeEvents)->Arg(4)->Arg(6)->Arg(8);

void BM_ExactBinomialTail(benchmark::State& state) {
  const long n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracles::exact_binomial_tail(n, 5, 1e-4));
  }
}
BENCHMARK(BM_ExactBinomialTail)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
