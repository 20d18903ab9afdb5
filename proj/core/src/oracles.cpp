#include "luckcheck/oracles.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace luckcheck::oracles {

namespace {

constexpr long kMaxN = 100000;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

double log_binom_pmf(long n, long k, double p) {
  double log_choose = 0.0;
  if (k > 0 && k < n) {
    log_choose = std::lgamma(static_cast<double>(n + 1)) -
                 std::lgamma(static_cast<double>(k + 1)) -
                 std::lgamma(static_cast<double>(n - k + 1));
  }
  return log_choose + k * std::log(p) + (n - k) * std::log1p(-p);
}

// uniform double in [0, 1) from the top 53 bits, identical on every platform
double uniform(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

}  // namespace

double exact_binomial_tail(long n, int w, double p) {
  if (n < 0 || n > kMaxN) {
    throw std::invalid_argument("exact_binomial_tail: n must lie in [0, 100000]");
  }
  if (w < 0 || w > n) {
    throw std::invalid_argument("exact_binomial_tail: w must lie in [0, n]");
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("exact_binomial_tail: p must lie strictly inside (0, 1)");
  }
  if (w == 0) return 1.0;

  // sum whichever tail has the fewer / smaller terms, relative to the mean
  if (w <= n * p) {
    double log_lower = kNegInf;  // P(X <= w-1)
    for (long k = 0; k < w; ++k) log_lower = log_add(log_lower, log_binom_pmf(n, k, p));
    const double lower = std::exp(log_lower);
    return lower >= 1.0 ? 0.0 : -std::expm1(log_lower);
  }
  double log_upper = kNegInf;  // P(X >= w)
  for (long k = w; k <= n; ++k) log_upper = log_add(log_upper, log_binom_pmf(n, k, p));
  return std::exp(log_upper);
}

GridMinSpend grid_min_spend(const std::vector<solver::BetSpec>& bets, double eps, long radius) {
  if (bets.empty() || bets.size() > 2) {
    throw std::invalid_argument("grid_min_spend: supports one or two bet classes");
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("grid_min_spend: eps must lie strictly inside (0, 1)");
  }
  if (radius < 0) throw std::invalid_argument("grid_min_spend: radius must be >= 0");

  if (bets.size() == 1) {
    const solver::BetSpec& b = bets[0];
    for (long n = b.wins; n <= b.wins + radius; ++n) {
      if (exact_binomial_tail(n, b.wins, b.win_prob) >= eps) {
        return {{n}, b.cost * n};
      }
    }
    throw std::runtime_error("grid_min_spend: no feasible point inside the search box");
  }

  const solver::BetSpec& b0 = bets[0];
  const solver::BetSpec& b1 = bets[1];
  std::vector<double> d0(radius + 1), d1(radius + 1);
  for (long k = 0; k <= radius; ++k) {
    d0[k] = exact_binomial_tail(b0.wins + k, b0.wins, b0.win_prob);
    d1[k] = exact_binomial_tail(b1.wins + k, b1.wins, b1.win_prob);
  }

  // both tails increase in n, so as n0 rises the least feasible n1 falls
  GridMinSpend best;
  bool found = false;
  long j = radius;
  for (long i = 0; i <= radius; ++i) {
    if (d0[i] <= 0.0) continue;
    while (j > 0 && d0[i] * d1[j - 1] >= eps) --j;
    if (d0[i] * d1[j] < eps) continue;
    const long n0 = b0.wins + i;
    const long n1 = b1.wins + j;
    const double spend = b0.cost * n0 + b1.cost * n1;
    if (!found || spend < best.spend) {
      best = {{n0, n1}, spend};
      found = true;
    }
  }
  if (!found) throw std::runtime_error("grid_min_spend: no feasible point inside the search box");
  return best;
}

RuinSimulation simulate_ruin(const ruin::BankrollScenario& scenario, long trials, Seed seed) {
  if (trials < 1000) throw std::invalid_argument("simulate_ruin: at least 1000 trials");
  (void)ruin::expected_stopping_time_bounds(scenario);  // validates the scenario

  const double c = scenario.ticket.cost;
  const double j = scenario.ticket.prize;
  const double p = scenario.ticket.win_prob;

  std::mt19937_64 rng(seed);
  double sum_t = 0.0, sumsq_t = 0.0;
  double sum_w = 0.0, sumsq_w = 0.0;
  for (long trial = 0; trial < trials; ++trial) {
    double bankroll = scenario.bankroll;
    double tickets = 0.0;
    double wins = 0.0;
    while (bankroll >= c) {
      bankroll -= c;
      tickets += 1.0;
      if (p > 0.0 && uniform(rng) < p) {
        bankroll += j;
        wins += 1.0;
      }
    }
    sum_t += tickets;
    sumsq_t += tickets * tickets;
    sum_w += wins;
    sumsq_w += wins * wins;
  }

  RuinSimulation out;
  out.trials = trials;
  out.seed = seed;
  out.mean_t = sum_t / trials;
  out.mean_wins = sum_w / trials;
  const double var_t = std::max(0.0, (sumsq_t - trials * out.mean_t * out.mean_t) / (trials - 1));
  const double var_w =
      std::max(0.0, (sumsq_w - trials * out.mean_wins * out.mean_wins) / (trials - 1));
  out.se_t = std::sqrt(var_t / trials);
  out.se_wins = std::sqrt(var_w / trials);
  return out;
}

}  // namespace luckcheck::oracles
