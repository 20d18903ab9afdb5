#include "luckcheck/screening.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "luckcheck/betamath.hpp"

namespace luckcheck::screening {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

double parse_number(const std::string& s, const std::string& source, int line,
                    const std::string& field) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError(source, line, "cannot parse " + field + " from '" + s + "'");
  }
}

// decimal or an exact fraction a/b
double parse_probability(const std::string& s, const std::string& source, int line,
                         const std::string& field) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return parse_number(s, source, line, field);
  const double num = parse_number(s.substr(0, slash), source, line, field);
  const double den = parse_number(s.substr(slash + 1), source, line, field);
  if (den == 0.0) throw ParseError(source, line, field + ": zero denominator");
  return num / den;
}

bool parse_bool(const std::string& s, const std::string& source, int line,
                const std::string& field) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ParseError(source, line, "cannot parse " + field + " from '" + s + "'");
}

constexpr const char* kCatalogHeader = "bet_id,game,cost,win_prob,prize,recordable";
constexpr const char* kClaimsHeader = "gambler_id,claim_date,bet_id,prize_amount,draw_id,units";

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kPlausiblyLucky: return "plausibly-lucky";
    case Verdict::kImplausible: return "implausible";
    case Verdict::kInsufficientData: return "insufficient-data";
  }
  return "unknown";
}

std::vector<BetCatalogEntry> load_catalog(std::istream& in, const std::string& source_name) {
  std::vector<BetCatalogEntry> catalog;
  std::set<std::string> seen;
  std::string line;
  int line_number = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    if (!header_seen) {
      if (stripped != kCatalogHeader) {
        throw ParseError(source_name, line_number,
                         std::string("expected header '") + kCatalogHeader + "'");
      }
      header_seen = true;
      continue;
    }
    const auto fields = split_fields(stripped);
    if (fields.size() != 6) {
      throw ParseError(source_name, line_number, "expected 6 fields, got " +
                                                     std::to_string(fields.size()));
    }
    BetCatalogEntry entry;
    entry.bet_id = fields[0];
    entry.game = fields[1];
    entry.cost = parse_number(fields[2], source_name, line_number, "cost");
    entry.win_prob = parse_probability(fields[3], source_name, line_number, "win_prob");
    entry.prize = parse_number(fields[4], source_name, line_number, "prize");
    entry.recordable = parse_bool(fields[5], source_name, line_number, "recordable");
    if (entry.bet_id.empty()) throw ParseError(source_name, line_number, "empty bet_id");
    if (!(entry.cost > 0.0)) {
      throw ParseError(source_name, line_number, "cost must be positive");
    }
    if (!(entry.win_prob > 0.0 && entry.win_prob < 1.0)) {
      throw ParseError(source_name, line_number, "win_prob must lie strictly inside (0, 1)");
    }
    if (!(entry.prize >= 0.0)) {
      throw ParseError(source_name, line_number, "prize must be >= 0");
    }
    if (!seen.insert(entry.bet_id).second) {
      throw ParseError(source_name, line_number, "duplicate bet_id '" + entry.bet_id + "'");
    }
    catalog.push_back(std::move(entry));
  }
  return catalog;
}

std::vector<BetCatalogEntry> load_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open catalog file: " + path);
  return load_catalog(in, path);
}

std::vector<ClaimRecord> load_claims(std::istream& in, const std::string& source_name,
                                     double reporting_threshold) {
  std::vector<ClaimRecord> claims;
  std::string line;
  int line_number = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    if (!header_seen) {
      if (stripped != kClaimsHeader) {
        throw ParseError(source_name, line_number,
                         std::string("expected header '") + kClaimsHeader + "'");
      }
      header_seen = true;
      continue;
    }
    const auto fields = split_fields(stripped);
    if (fields.size() != 6) {
      throw ParseError(source_name, line_number, "expected 6 fields, got " +
                                                     std::to_string(fields.size()));
    }
    ClaimRecord claim;
    claim.gambler_id = fields[0];
    claim.claim_date = fields[1];
    claim.bet_id = fields[2];
    claim.prize_amount = parse_number(fields[3], source_name, line_number, "prize_amount");
    claim.draw_id = fields[4];
    claim.units = fields[5].empty()
                      ? 1
                      : static_cast<int>(parse_number(fields[5], source_name, line_number, "units"));
    if (claim.gambler_id.empty()) throw ParseError(source_name, line_number, "empty gambler_id");
    if (claim.bet_id.empty()) throw ParseError(source_name, line_number, "empty bet_id");
    if (claim.claim_date.empty()) throw ParseError(source_name, line_number, "empty claim_date");
    if (claim.units < 1) throw ParseError(source_name, line_number, "units must be >= 1");
    if (claim.prize_amount < reporting_threshold) {
      throw ParseError(source_name, line_number,
                       "prize_amount below the reporting threshold");
    }
    claims.push_back(std::move(claim));
  }
  return claims;
}

std::vector<ClaimRecord> load_claims_file(const std::string& path, double reporting_threshold) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open claims file: " + path);
  return load_claims(in, path, reporting_threshold);
}

std::vector<BetCatalogEntry> builtin_play4_catalog() {
  return {
      {"play4_straight", "Play 4", 1.0, 1e-4, 5000.0, true},
      {"play4_box4", "Play 4", 1.0, 4e-4, 1198.0, true},
      {"play4_box6", "Play 4", 1.0, 6e-4, 800.0, true},
      {"play4_box12", "Play 4", 1.0, 12e-4, 400.0, false},
      {"play4_box24", "Play 4", 1.0, 24e-4, 200.0, false},
  };
}

std::vector<GamblerProfile> build_profiles(const std::vector<ClaimRecord>& claims,
                                           const std::vector<BetCatalogEntry>& catalog) {
  std::map<std::string, const BetCatalogEntry*> by_id;
  for (const BetCatalogEntry& entry : catalog) by_id[entry.bet_id] = &entry;

  std::set<std::string> unresolved;
  for (const ClaimRecord& claim : claims) {
    if (!by_id.count(claim.bet_id)) unresolved.insert(claim.bet_id);
  }
  if (!unresolved.empty()) {
    std::string msg = "claims reference unknown bet ids:";
    for (const std::string& id : unresolved) msg += " '" + id + "'";
    throw std::invalid_argument(msg);
  }

  // gambler -> (bet_id, draw key) -> total units; the draw key is the draw id
  // when present, otherwise the claim date (same-date claims on one bet type
  // without a draw id are conservatively one multi-unit wager)
  struct DrawGroup {
    int units = 0;
    bool from_date_key = false;
    int rows = 0;
  };
  std::map<std::string, std::map<std::pair<std::string, std::string>, DrawGroup>> groups;
  std::map<std::string, std::map<std::string, std::set<std::string>>> draw_to_bets;
  std::map<std::string, int> rows_per_gambler;
  std::map<std::string, int> units_per_gambler;

  for (const ClaimRecord& claim : claims) {
    const bool has_draw = !claim.draw_id.empty();
    const std::string key = has_draw ? "draw|" + claim.draw_id : "date|" + claim.claim_date;
    DrawGroup& group = groups[claim.gambler_id][{claim.bet_id, key}];
    group.units += claim.units;
    group.rows += 1;
    group.from_date_key = group.from_date_key || !has_draw;
    if (has_draw) draw_to_bets[claim.gambler_id][claim.draw_id].insert(claim.bet_id);
    rows_per_gambler[claim.gambler_id] += 1;
    units_per_gambler[claim.gambler_id] += claim.units;
  }

  std::vector<GamblerProfile> profiles;
  for (const auto& [gambler_id, gambler_groups] : groups) {
    GamblerProfile profile;
    profile.gambler_id = gambler_id;
    profile.claim_rows = rows_per_gambler[gambler_id];
    profile.total_unit_claims = units_per_gambler[gambler_id];

    std::map<std::pair<std::string, int>, int> class_wins;  // (bet, units) -> wins
    for (const auto& [bet_and_key, group] : gambler_groups) {
      class_wins[{bet_and_key.first, group.units}] += 1;
      profile.win_events += 1;
      profile.same_date_collapse_applied =
          profile.same_date_collapse_applied || (group.from_date_key && group.rows > 1);
    }
    for (const auto& [bet_units, wins] : class_wins) {
      const BetCatalogEntry& entry = *by_id.at(bet_units.first);
      UnitClass uc;
      uc.bet_id = bet_units.first;
      uc.units = bet_units.second;
      uc.wins = wins;
      uc.cost = entry.cost * uc.units;
      uc.win_prob = entry.win_prob;
      uc.prize = entry.prize * uc.units;
      profile.unit_classes.push_back(std::move(uc));
    }

    for (const auto& [draw_id, bets] : draw_to_bets[gambler_id]) {
      if (bets.size() > 1) profile.dependent_draws.push_back(draw_id);
    }
    profiles.push_back(std::move(profile));
  }
  return profiles;
}

solver::SpendBound min_spend_for_profile(const GamblerProfile& profile,
                                         const ScreeningConfig& config) {
  if (!profile.dependent_draws.empty()) {
    throw DependentWinsError(
        "profile '" + profile.gambler_id +
        "' has wins on dependent bets; use assess_budget_plausibility instead");
  }
  if (profile.unit_classes.empty()) {
    solver::SpendBound zero;
    zero.converged = true;
    return zero;
  }
  solver::MinSpendProblem problem;
  problem.eps = config.eps;
  for (const UnitClass& uc : profile.unit_classes) {
    problem.bets.push_back({uc.cost, uc.win_prob, uc.wins});
  }
  return solver::solve_min_spend(problem);
}

double assess_budget_plausibility(const GamblerProfile& profile, double budget,
                                  const ScreeningConfig& config) {
  if (profile.unit_classes.empty()) return 1.0;
  if (budget <= 0.0) {
    double prizes = 0.0;
    for (const UnitClass& uc : profile.unit_classes) prizes += uc.prize * uc.wins;
    budget = config.take_home_rate * prizes;
  }
  solver::MaxProbProblem problem;
  problem.budget = budget;
  for (const UnitClass& uc : profile.unit_classes) {
    problem.bets.push_back({uc.cost, uc.win_prob, uc.wins});
  }
  return std::exp(solver::solve_max_prob(problem).log_prob);
}

double population_adjust(double prob, double n_gamblers) {
  if (!(prob >= 0.0 && prob <= 1.0)) {
    throw std::invalid_argument("population_adjust: prob must lie in [0, 1]");
  }
  if (!(n_gamblers >= 1.0)) {
    throw std::invalid_argument("population_adjust: population must be >= 1");
  }
  return std::min(1.0, n_gamblers * prob);
}

ScreeningReport screen(const std::vector<ClaimRecord>& claims,
                       const std::vector<BetCatalogEntry>& catalog,
                       const ScreeningConfig& config) {
  ScreeningReport report;
  report.config = config;

  // split by gambler so one malformed record cannot abort the others
  std::map<std::string, std::vector<ClaimRecord>> by_gambler;
  for (const ClaimRecord& claim : claims) by_gambler[claim.gambler_id].push_back(claim);

  for (const auto& [gambler_id, gambler_claims] : by_gambler) {
    GamblerFinding finding;
    finding.gambler_id = gambler_id;
    try {
      auto profiles = build_profiles(gambler_claims, catalog);
      finding.profile = profiles.at(0);

      double vertex_cost = 0.0;
      for (const UnitClass& uc : finding.profile.unit_classes) {
        vertex_cost += uc.cost * uc.wins;
      }

      if (finding.profile.unit_classes.empty()) {
        finding.route = "none";
        finding.verdict = Verdict::kInsufficientData;
      } else if (finding.profile.dependent_draws.empty()) {
        finding.route = "min-spend";
        const solver::SpendBound bound = min_spend_for_profile(finding.profile, config);
        solver::MinSpendProblem problem;
        problem.eps = config.eps;
        for (const UnitClass& uc : finding.profile.unit_classes) {
          problem.bets.push_back({uc.cost, uc.win_prob, uc.wins});
        }
        finding.rounded_spend = solver::round_up(problem, bound).spend;
        finding.population_adjusted =
            population_adjust(std::exp(bound.achieved_log_prob), config.population);
        finding.implied_spend = bound.spend;
        finding.verdict = (bound.spend > config.flag_spend_threshold &&
                           finding.population_adjusted < 1e-6)
                              ? Verdict::kImplausible
                              : Verdict::kPlausiblyLucky;
        finding.min_spend = bound;
      } else {
        // dependent wins: ask whether reinvesting the whole take-home prize
        // value could plausibly produce the record
        finding.route = "budget-plausibility";
        double prizes = 0.0;
        for (const UnitClass& uc : finding.profile.unit_classes) prizes += uc.prize * uc.wins;
        finding.budget = config.take_home_rate * prizes;
        const double prob = assess_budget_plausibility(finding.profile, finding.budget, config);
        finding.max_win_prob = prob;
        finding.population_adjusted = population_adjust(prob, config.population);
        finding.implied_spend = vertex_cost;
        finding.verdict = finding.population_adjusted < 1e-6 ? Verdict::kImplausible
                                                             : Verdict::kPlausiblyLucky;
      }
    } catch (const std::exception& e) {
      finding.route = "none";
      finding.error = e.what();
      finding.verdict = Verdict::kInsufficientData;
    }
    report.findings.push_back(std::move(finding));
  }

  std::stable_sort(report.findings.begin(), report.findings.end(),
                   [](const GamblerFinding& a, const GamblerFinding& b) {
                     if (a.implied_spend != b.implied_spend) {
                       return a.implied_spend > b.implied_spend;
                     }
                     return a.gambler_id < b.gambler_id;
                   });

  report.gamblers = static_cast<int>(report.findings.size());
  for (const GamblerFinding& f : report.findings) {
    switch (f.verdict) {
      case Verdict::kImplausible: ++report.implausible; break;
      case Verdict::kPlausiblyLucky: ++report.plausibly_lucky; break;
      case Verdict::kInsufficientData: ++report.insufficient_data; break;
    }
  }
  return report;
}

}  // namespace luckcheck::screening
