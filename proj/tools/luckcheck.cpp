// luckcheck: screens lottery prize-claim records for win patterns that imply
// implausibly large spending, and exposes the underlying calculators.
//
// Exit codes: 0 success, 1 input error, 2 flagged findings.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "luckcheck/betamath.hpp"
#include "luckcheck/bkr_verify.hpp"
#include "luckcheck/oracles.hpp"
#include "luckcheck/ruin.hpp"
#include "luckcheck/screening.hpp"
#include "luckcheck/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitFlagged = 2;

// inline bet syntax: cost:prob:wins, probability as a decimal or a/b
luckcheck::solver::BetSpec parse_bet(const std::string& text) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, ':')) parts.push_back(part);
  if (parts.size() != 3) {
    throw CLI::ValidationError("--bet", "expected cost:prob:wins, got '" + text + "'");
  }
  try {
    luckcheck::solver::BetSpec bet;
    bet.cost = std::stod(parts[0]);
    const auto slash = parts[1].find('/');
    bet.win_prob = slash == std::string::npos
                       ? std::stod(parts[1])
                       : std::stod(parts[1].substr(0, slash)) / std::stod(parts[1].substr(slash + 1));
    bet.wins = std::stoi(parts[2]);
    return bet;
  } catch (const std::exception&) {
    throw CLI::ValidationError("--bet", "cannot parse '" + text + "'");
  }
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << text;
}

int run_screen(const std::string& catalog_path, const std::string& claims_path,
               const luckcheck::screening::ScreeningConfig& config, const std::string& format,
               const std::string& out_path) {
  using namespace luckcheck::screening;
  const auto catalog = catalog_path.empty() ? builtin_play4_catalog()
                                            : load_catalog_file(catalog_path);
  if (catalog.empty()) {
    std::cerr << "warning: catalog is empty\n";
  }
  const auto claims = load_claims_file(claims_path, config.reporting_threshold);
  const ScreeningReport report = screen(claims, catalog, config);
  write_output(format == "tree" ? render_tree(report) : render_table(report), out_path);
  return report.implausible > 0 ? kExitFlagged : kExitOk;
}

int run_min_spend(const std::vector<luckcheck::solver::BetSpec>& bets, double eps) {
  using namespace luckcheck::solver;
  const MinSpendProblem problem{bets, eps};
  const SpendBound bound = solve_min_spend(problem);
  const RoundedSpend rounded = round_up(problem, bound);

  std::cout << "minimum plausible spend (eps=" << eps << ")\n";
  std::cout << std::left << std::setw(6) << "bet" << std::right << std::setw(12) << "cost"
            << std::setw(12) << "win_prob" << std::setw(6) << "wins" << std::setw(16)
            << "n*" << std::setw(12) << "rounded" << "\n";
  for (std::size_t i = 0; i < bets.size(); ++i) {
    std::cout << std::left << std::setw(6) << i << std::right << std::setw(12) << bets[i].cost
              << std::setw(12) << bets[i].win_prob << std::setw(6) << bets[i].wins
              << std::setw(16) << std::fixed << std::setprecision(3) << bound.n_star[i]
              << std::setw(12) << std::setprecision(0) << rounded.n[i] << "\n";
    std::cout.unsetf(std::ios::fixed);
    std::cout << std::setprecision(6);
  }
  std::cout << "spend (continuous relaxation): $" << std::fixed << std::setprecision(2)
            << bound.spend << "\n";
  std::cout << "spend (whole wagers):          $" << rounded.spend << "\n";
  std::cout.unsetf(std::ios::fixed);
  std::cout << std::setprecision(6) << "achieved log probability: " << bound.achieved_log_prob
            << " (log eps = " << std::log(eps) << ")\n"
            << "converged in " << bound.iterations << " dual iterations\n";
  return kExitOk;
}

int run_max_prob(const std::vector<luckcheck::solver::BetSpec>& bets, double budget) {
  using namespace luckcheck::solver;
  const MaxProbSolution sol = solve_max_prob({bets, budget});
  std::cout << "best-case win probability with budget $" << std::fixed << std::setprecision(2)
            << budget << "\n";
  std::cout.unsetf(std::ios::fixed);
  std::cout << std::setprecision(6);
  for (std::size_t i = 0; i < bets.size(); ++i) {
    std::cout << "  bet " << i << " (cost " << bets[i].cost << ", p " << bets[i].win_prob
              << ", wins " << bets[i].wins << "): n* = " << sol.n_star[i] << "\n";
  }
  std::cout << "spend at optimum: $" << std::fixed << std::setprecision(2) << sol.spend << "\n";
  std::cout.unsetf(std::ios::fixed);
  std::cout << std::setprecision(6) << "log probability: " << sol.log_prob << "\n"
            << "probability: " << std::scientific << std::setprecision(6)
            << std::exp(sol.log_prob) << "\n";
  return kExitOk;
}

int run_ruin(double bankroll, double cost, double prize, double prob, bool simulate, long trials,
             std::uint64_t seed) {
  using namespace luckcheck::ruin;
  const BankrollScenario scenario{bankroll, {cost, prize, prob}};
  const StoppingTimeBounds bounds = expected_stopping_time_bounds(scenario);

  std::cout << "expected tickets before going broke: (" << std::fixed << std::setprecision(2)
            << bounds.lower << ", " << bounds.upper << "]";
  if (bounds.exact) std::cout << "  (exact: " << *bounds.exact << ")";
  std::cout << "\n";
  std::cout << "expected total outlay (recycled winnings included): $"
            << bounds.upper * cost << "\n";
  if (prize > 0.0) {
    std::cout << "expected prizes collected: " << expected_prize_count(scenario) << "\n";
  }
  std::cout.unsetf(std::ios::fixed);

  if (simulate) {
    const auto sim = luckcheck::oracles::simulate_ruin(scenario, trials, seed);
    std::cout << std::setprecision(6) << "simulation (" << sim.trials << " trials, seed "
              << sim.seed << "): mean tickets " << sim.mean_t << " +- " << sim.se_t
              << ", mean wins " << sim.mean_wins << " +- " << sim.se_wins << "\n";
  }
  return kExitOk;
}

int run_bkr_check(std::uint64_t seed, int instances) {
  const auto report = luckcheck::bkr::run_verification(seed, instances);
  std::cout << "worked-example fixture: " << (report.fixture_ok ? "ok" : "MISMATCH") << "\n";
  for (const auto& law : report.laws) {
    std::cout << std::left << std::setw(48) << law.law << " " << (law.instances - law.failures)
              << "/" << law.instances << " passed\n";
  }
  std::cout << (report.all_passed() ? "all checks passed" : "CHECKS FAILED") << " (seed "
            << report.seed << ", " << report.instances_per_law << " instances per law)\n";
  return report.all_passed() ? kExitOk : kExitFlagged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lottery win-record plausibility screening"};
  app.require_subcommand(1);

  // screen
  auto* screen_cmd = app.add_subcommand("screen", "screen a claims file against a bet catalog");
  std::string catalog_path, claims_path, format = "table", out_path;
  luckcheck::screening::ScreeningConfig config;
  screen_cmd->add_option("--catalog", catalog_path,
                         "bet catalog file (defaults to the built-in Play 4 catalog)");
  screen_cmd->add_option("--claims", claims_path, "prize claims file")->required();
  screen_cmd->add_option("--eps", config.eps, "probability cutoff");
  screen_cmd->add_option("--population", config.population, "gambling population N");
  screen_cmd->add_option("--take-home-rate", config.take_home_rate,
                         "after-tax fraction of prize value");
  screen_cmd->add_option("--threshold", config.reporting_threshold,
                         "smallest recordable prize");
  screen_cmd->add_option("--flag-spend", config.flag_spend_threshold,
                         "implied spend above which a gambler can be flagged");
  screen_cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"table", "tree"}));
  screen_cmd->add_option("--out", out_path, "write the report here instead of stdout");

  // min-spend
  auto* min_cmd = app.add_subcommand("min-spend", "minimum plausible spend for a win record");
  std::vector<std::string> bet_specs;
  double eps = 5e-14;
  min_cmd->add_option("--bet", bet_specs, "bet class as cost:prob:wins (repeatable)")
      ->required();
  min_cmd->add_option("--eps", eps, "probability cutoff");

  // max-prob
  auto* max_cmd = app.add_subcommand("max-prob", "best-case win probability under a budget");
  std::vector<std::string> max_bet_specs;
  double budget = 0.0;
  max_cmd->add_option("--bet", max_bet_specs, "bet class as cost:prob:wins (repeatable)")
      ->required();
  max_cmd->add_option("--budget", budget, "total spending budget")->required();

  // ruin
  auto* ruin_cmd = app.add_subcommand("ruin", "expected lifetime of a recycling gambler");
  double bankroll = 0.0, cost = 1.0, prize = 0.0, prob = 0.0;
  bool simulate = false;
  long trials = 100000;
  std::uint64_t seed = 20140901;
  ruin_cmd->add_option("--bankroll", bankroll, "starting bankroll")->required();
  ruin_cmd->add_option("--cost", cost, "ticket cost")->required();
  ruin_cmd->add_option("--prize", prize, "ticket prize")->required();
  ruin_cmd->add_option("--prob", prob, "ticket win probability")->required();
  ruin_cmd->add_flag("--simulate", simulate, "cross-check with a Monte Carlo run");
  ruin_cmd->add_option("--trials", trials, "simulation trials");
  ruin_cmd->add_option("--seed", seed, "simulation seed");

  // bkr-check
  auto* bkr_cmd = app.add_subcommand("bkr-check",
                                     "verify the box-operation laws by exhaustive enumeration");
  std::uint64_t bkr_seed = 20140901;
  int instances = 500;
  bkr_cmd->add_option("--seed", bkr_seed, "randomization seed");
  bkr_cmd->add_option("--instances", instances, "instances per law");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the parse message
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (screen_cmd->parsed()) {
      return run_screen(catalog_path, claims_path, config, format, out_path);
    }
    if (min_cmd->parsed()) {
      std::vector<luckcheck::solver::BetSpec> bets;
      for (const auto& s : bet_specs) bets.push_back(parse_bet(s));
      return run_min_spend(bets, eps);
    }
    if (max_cmd->parsed()) {
      std::vector<luckcheck::solver::BetSpec> bets;
      for (const auto& s : max_bet_specs) bets.push_back(parse_bet(s));
      return run_max_prob(bets, budget);
    }
    if (ruin_cmd->parsed()) {
      return run_ruin(bankroll, cost, prize, prob, simulate, trials, seed);
    }
    if (bkr_cmd->parsed()) {
      return run_bkr_check(bkr_seed, instances);
    }
  } catch (const CLI::Error& e) {
    app.exit(e);
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
