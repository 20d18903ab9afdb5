#include "luckcheck/solver.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "luckcheck/betamath.hpp"

namespace luckcheck::solver {

namespace {

constexpr int kMaxOuterIterations = 200;
constexpr int kMaxInnerIterations = 200;
constexpr double kLambdaLo = 1e-30;
constexpr double kLambdaHi = 1e+30;
constexpr double kConstraintRelTol = 1e-8;

void check_bets(const std::vector<BetSpec>& bets) {
  if (bets.empty()) throw std::invalid_argument("solver: at least one bet class required");
  for (const BetSpec& b : bets) {
    if (!(b.cost > 0.0)) throw std::invalid_argument("solver: bet cost must be positive");
    if (!(b.win_prob > 0.0 && b.win_prob < 1.0)) {
      throw std::invalid_argument("solver: win probability must lie strictly inside (0, 1)");
    }
    if (b.wins < 0) throw std::invalid_argument("solver: win count must be >= 0");
  }
}

double deriv(const BetSpec& bet, double n) {
  return betamath::dlog_tail_dn({n, bet.wins, bet.win_prob});
}

// n solving d/dn log D(n; w, p) = target, or w when the derivative is already
// below target at the vertex. The derivative is strictly decreasing in n.
double solve_coordinate(const BetSpec& bet, double target) {
  const double w = bet.wins;
  const double vertex = w + std::max(1e-6, 1e-8 * w);
  if (deriv(bet, vertex) <= target) return w;
  double lo = vertex;
  double hi = std::max(2.0 * w, 1.0);
  while (hi <= lo) hi *= 2.0;
  while (deriv(bet, hi) > target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e16) break;
  }
  for (int i = 0; i < kMaxInnerIterations && hi - lo > 1e-10 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (deriv(bet, mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double sum_log_tail(const std::vector<BetSpec>& bets, const std::vector<double>& n) {
  double s = 0.0;  // fixed accumulation order: bit-identical regardless of scheduling
  for (std::size_t i = 0; i < bets.size(); ++i) {
    if (bets[i].wins == 0) continue;
    s += betamath::log_tail_prob({n[i], bets[i].wins, bets[i].win_prob});
  }
  return s;
}

double dot_cost(const std::vector<BetSpec>& bets, const std::vector<double>& n) {
  double s = 0.0;
  for (std::size_t i = 0; i < bets.size(); ++i) s += bets[i].cost * n[i];
  return s;
}

// n(lambda): coordinates with w = 0 never help the constraint and stay at 0.
std::vector<double> min_spend_point(const std::vector<BetSpec>& bets, double lambda) {
  std::vector<double> n(bets.size(), 0.0);
  for (std::size_t i = 0; i < bets.size(); ++i) {
    if (bets[i].wins == 0) continue;
    n[i] = solve_coordinate(bets[i], bets[i].cost / lambda);
  }
  return n;
}

SpendBound make_bound(const std::vector<BetSpec>& bets, std::vector<double> n, int iterations,
                      bool converged) {
  SpendBound out;
  out.spend = dot_cost(bets, n);
  out.achieved_log_prob = sum_log_tail(bets, n);
  for (std::size_t i = 0; i < bets.size(); ++i) {
    if (bets[i].wins > 0 && n[i] > bets[i].wins) out.active_set.push_back(i);
  }
  out.n_star = std::move(n);
  out.converged = converged;
  out.iterations = iterations;
  return out;
}

}  // namespace

SpendBound solve_min_spend(const MinSpendProblem& problem) {
  check_bets(problem.bets);
  if (!(problem.eps > 0.0 && problem.eps < 1.0)) {
    throw std::invalid_argument("solver: eps must lie strictly inside (0, 1)");
  }
  const std::vector<BetSpec>& bets = problem.bets;
  const double log_eps = std::log(problem.eps);

  std::vector<double> vertex(bets.size(), 0.0);
  double vertex_log = 0.0;
  for (std::size_t i = 0; i < bets.size(); ++i) {
    if (bets[i].wins == 0) continue;
    vertex[i] = bets[i].wins;
    vertex_log += bets[i].wins * std::log(bets[i].win_prob);
  }
  if (vertex_log >= log_eps) {
    // the constraint already holds at n = w
    return make_bound(bets, std::move(vertex), 0, true);
  }

  // the coordinate solves quantize the constraint value, so the acceptance
  // band carries an absolute floor alongside the relative tolerance
  const double band = kConstraintRelTol * std::max(1.0, std::fabs(log_eps));
  double lo = std::log(kLambdaLo);  // sum log D below log eps
  double hi = std::log(kLambdaHi);  // sum log D above log eps
  for (int iter = 1; iter <= kMaxOuterIterations; ++iter) {
    const double lambda = std::exp(0.5 * (lo + hi));
    std::vector<double> n = min_spend_point(bets, lambda);
    const double s = sum_log_tail(bets, n);
    if (std::fabs(s - log_eps) <= band) {
      return make_bound(bets, std::move(n), iter, true);
    }
    if (s < log_eps) {
      lo = std::log(lambda);
    } else {
      hi = std::log(lambda);
    }
    if (hi - lo <= 1e-13 * std::max(1.0, std::fabs(hi))) {
      // multiplier bracket exhausted at double resolution: take the feasible
      // side, optimal to within the representable dual precision
      return make_bound(bets, min_spend_point(bets, std::exp(hi)), iter, true);
    }
  }
  SpendBound last = make_bound(bets, min_spend_point(bets, std::exp(hi)), kMaxOuterIterations, false);
  throw SolverError("solve_min_spend: dual bisection did not converge in " +
                        std::to_string(kMaxOuterIterations) + " iterations",
                    std::move(last));
}

MaxProbSolution solve_max_prob(const MaxProbProblem& problem) {
  check_bets(problem.bets);
  const std::vector<BetSpec>& bets = problem.bets;
  double vertex_cost = 0.0;
  for (const BetSpec& b : bets) vertex_cost += b.cost * b.wins;
  if (problem.budget < vertex_cost * (1.0 - 1e-12)) {
    throw std::invalid_argument(
        "solve_max_prob: budget cannot cover the winning wagers; short by " +
        std::to_string(vertex_cost - problem.budget));
  }

  MaxProbSolution out;
  out.n_star.assign(bets.size(), 0.0);

  bool any_wins = false;
  for (const BetSpec& b : bets) any_wins = any_wins || b.wins > 0;
  if (!any_wins) {
    // D is identically 1; nothing to buy
    return out;
  }

  const auto point = [&](double mu) {
    std::vector<double> n(bets.size(), 0.0);
    for (std::size_t i = 0; i < bets.size(); ++i) {
      if (bets[i].wins == 0) continue;
      n[i] = solve_coordinate(bets[i], mu * bets[i].cost);
    }
    return n;
  };

  double lo = std::log(kLambdaLo);  // spend above budget
  double hi = std::log(kLambdaHi);  // spend at or below budget
  std::vector<double> n;
  int iterations = 0;
  for (int iter = 1; iter <= kMaxOuterIterations; ++iter) {
    iterations = iter;
    const double mu = std::exp(0.5 * (lo + hi));
    n = point(mu);
    const double spend = dot_cost(bets, n);
    if (std::fabs(spend - problem.budget) <= 1e-9 * std::max(1.0, problem.budget)) {
      hi = std::log(mu);
      break;
    }
    if (spend > problem.budget) {
      lo = std::log(mu);
    } else {
      hi = std::log(mu);
    }
    if (hi - lo <= 1e-13 * std::max(1.0, std::fabs(hi))) break;
  }
  n = point(std::exp(hi));  // the feasible side of the bracket
  out.n_star = n;
  out.spend = dot_cost(bets, n);
  out.log_prob = sum_log_tail(bets, n);
  out.budget_binding = out.spend >= problem.budget * (1.0 - 1e-6);
  out.iterations = iterations;
  return out;
}

SpendBound solve_min_spend_subset(const MinSpendProblem& problem,
                                  const std::vector<std::size_t>& keep) {
  check_bets(problem.bets);
  if (keep.empty()) throw std::invalid_argument("solve_min_spend_subset: empty subset");
  std::set<std::size_t> kept(keep.begin(), keep.end());
  for (std::size_t i : kept) {
    if (i >= problem.bets.size()) {
      throw std::out_of_range("solve_min_spend_subset: bet index out of range");
    }
  }

  MinSpendProblem reduced;
  reduced.eps = problem.eps;
  std::vector<std::size_t> order(kept.begin(), kept.end());
  for (std::size_t i : order) reduced.bets.push_back(problem.bets[i]);

  SpendBound inner = solve_min_spend(reduced);

  SpendBound out;
  out.n_star.assign(problem.bets.size(), 0.0);
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.n_star[order[k]] = inner.n_star[k];
    if (inner.n_star[k] > problem.bets[order[k]].wins && problem.bets[order[k]].wins > 0) {
      out.active_set.push_back(order[k]);
    }
  }
  out.spend = inner.spend;
  out.achieved_log_prob = inner.achieved_log_prob;
  out.converged = inner.converged;
  out.iterations = inner.iterations;
  out.relaxed_lower_bound = order.size() < problem.bets.size();
  return out;
}

RoundedSpend round_up(const MinSpendProblem& problem, const SpendBound& bound) {
  RoundedSpend out;
  out.n.resize(bound.n_star.size());
  for (std::size_t i = 0; i < bound.n_star.size(); ++i) {
    out.n[i] = std::ceil(bound.n_star[i] - 1e-9);
    out.spend += problem.bets[i].cost * out.n[i];
  }
  return out;
}

}  // namespace luckcheck::solver
