#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace luckcheck::solver {

// One bet class: each wager costs `cost` and wins with probability
// `win_prob`; the gambler was observed winning it `wins` times.
struct BetSpec {
  double cost = 0.0;
  double win_prob = 0.0;
  int wins = 0;
};

// Minimize total spend c . n subject to n_i >= w_i and
// sum_i log D(n_i; w_i, p_i) >= log eps.
struct MinSpendProblem {
  std::vector<BetSpec> bets;
  double eps = 0.0;
};

// Maximize sum_i log D(n_i; w_i, p_i) subject to n_i >= w_i and
// c . n <= budget.
struct MaxProbProblem {
  std::vector<BetSpec> bets;
  double budget = 0.0;
};

struct SpendBound {
  std::vector<double> n_star;       // optimal real-valued wager counts
  double spend = 0.0;               // c . n_star
  double achieved_log_prob = 0.0;   // sum_i log D at n_star
  std::vector<std::size_t> active_set;  // coordinates with n_i > w_i
  bool converged = false;
  int iterations = 0;
  bool relaxed_lower_bound = false;  // true for subset solves of a larger problem
};

struct RoundedSpend {
  std::vector<double> n;  // n_star rounded up to whole wagers
  double spend = 0.0;
};

struct MaxProbSolution {
  std::vector<double> n_star;
  double log_prob = 0.0;
  double spend = 0.0;
  bool budget_binding = false;
  int iterations = 0;
};

// Raised when the dual bisection exhausts its iteration cap; carries the last
// iterate for diagnosis.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, SpendBound last)
      : std::runtime_error(what), last_iterate(std::move(last)) {}
  SpendBound last_iterate;
};

// Global minimizer of the spend. Dual method: for a multiplier lambda, each
// coordinate solves d/dn log D = cost/lambda by bisection (the derivative is
// positive and strictly decreasing), clipped at n = w; an outer bisection on
// lambda drives sum log D to log eps. Log-concavity of D in n makes the
// feasible set convex, so the KKT point is the global optimum.
SpendBound solve_min_spend(const MinSpendProblem& problem);

// Same machinery with the roles of objective and constraint exchanged: the
// outer bisection is on the budget multiplier.
MaxProbSolution solve_max_prob(const MaxProbProblem& problem);

// Solve the reduced problem on the given bet indices. Dropping constraints
// can only lower the optimum, so the result is still a lower bound for the
// full problem; it is flagged as relaxed whenever `keep` is a proper subset.
SpendBound solve_min_spend_subset(const MinSpendProblem& problem,
                                  const std::vector<std::size_t>& keep);

// n_star rounded up to whole wagers, with its spend.
RoundedSpend round_up(const MinSpendProblem& problem, const SpendBound& bound);

}  // namespace luckcheck::solver
