#pragma once

#include <cstdint>
#include <vector>

#include "luckcheck/ruin.hpp"
#include "luckcheck/solver.hpp"

// Deliberately slow, simple reference implementations used by tests. They
// share only domain types with the production paths they check.
namespace luckcheck::oracles {

using Seed = std::uint64_t;

// P(X >= w) for X ~ Binomial(n, p) by direct log-space summation of the
// smaller tail. Guarded to n <= 100000.
double exact_binomial_tail(long n, int w, double p);

struct GridMinSpend {
  std::vector<long> n;
  double spend = 0.0;
};

// Exhaustive integer search of min c . n subject to
// prod_i exact_binomial_tail(n_i) >= eps over the box [w_i, w_i + radius].
// At most two bet classes.
GridMinSpend grid_min_spend(const std::vector<solver::BetSpec>& bets, double eps, long radius);

struct RuinSimulation {
  double mean_t = 0.0;   // tickets bought before going broke
  double se_t = 0.0;
  double mean_wins = 0.0;
  double se_wins = 0.0;
  long trials = 0;
  Seed seed = 0;
};

// Play-until-broke simulation of a bankroll scenario; deterministic per seed.
RuinSimulation simulate_ruin(const ruin::BankrollScenario& scenario, long trials, Seed seed);

}  // namespace luckcheck::oracles
