#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "luckcheck/solver.hpp"

namespace luckcheck::screening {

// One wagering option of one game, as listed in the bet catalog.
struct BetCatalogEntry {
  std::string bet_id;
  std::string game;
  double cost = 0.0;      // per unit wagered
  double win_prob = 0.0;
  double prize = 0.0;     // per unit wagered
  bool recordable = false;  // prize at or above the reporting threshold
};

// One recorded prize claim. `units` is the wager multiple: a $52 wager on one
// drawing that wins is one claim with units = 52.
struct ClaimRecord {
  std::string gambler_id;
  std::string claim_date;  // ISO-8601
  std::string bet_id;
  double prize_amount = 0.0;
  std::string draw_id;  // may be empty
  int units = 1;
};

// Win counts of one gambler on one (bet type, wager size) class.
struct UnitClass {
  std::string bet_id;
  int units = 1;
  int wins = 0;
  double cost = 0.0;      // units x catalog cost
  double win_prob = 0.0;
  double prize = 0.0;     // units x catalog prize
};

struct GamblerProfile {
  std::string gambler_id;
  std::vector<UnitClass> unit_classes;
  std::vector<std::string> dependent_draws;  // draw ids won by more than one bet type
  int claim_rows = 0;        // input rows
  int total_unit_claims = 0; // rows weighted by units
  int win_events = 0;        // wins after unit aggregation
  bool same_date_collapse_applied = false;  // the missing-draw-id heuristic fired
};

struct ScreeningConfig {
  double eps = 5e-14;                    // probability cutoff
  double population = 1.9e7;             // gambling population N
  double flag_spend_threshold = 1e5;     // spend above this is flaggable
  double take_home_rate = 0.65;          // after-tax fraction of prize value
  double reporting_threshold = 600.0;    // smallest recordable prize
};

enum class Verdict { kPlausiblyLucky, kImplausible, kInsufficientData };

std::string to_string(Verdict v);

struct GamblerFinding {
  std::string gambler_id;
  GamblerProfile profile;
  std::string route;  // "min-spend", "budget-plausibility", or "none"
  std::optional<solver::SpendBound> min_spend;
  double rounded_spend = 0.0;            // integer round-up of the spend, when routed
  std::optional<double> max_win_prob;    // budget-plausibility route
  double budget = 0.0;                   // budget used on that route
  double population_adjusted = 0.0;      // min(1, N x probability)
  double implied_spend = 0.0;            // ordering key: spend, or the winning wagers' cost
  Verdict verdict = Verdict::kInsufficientData;
  std::string error;  // non-empty when this gambler's analysis failed
};

struct ScreeningReport {
  ScreeningConfig config;
  std::vector<GamblerFinding> findings;  // descending implied spend, ties by id
  int gamblers = 0;
  int implausible = 0;
  int plausibly_lucky = 0;
  int insufficient_data = 0;
};

// Parse failure with its source location.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
        line_number(line) {}
  int line_number = 0;
};

// Raised by the min-spend route when the profile has dependent wins; such a
// record must go through the budget-plausibility assessment instead.
class DependentWinsError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Delimited-text loaders. Headers are fixed; probabilities accept decimals or
// exact fractions like 1/10000. Empty input gives an empty list.
std::vector<BetCatalogEntry> load_catalog(std::istream& in, const std::string& source_name);
std::vector<BetCatalogEntry> load_catalog_file(const std::string& path);
std::vector<ClaimRecord> load_claims(std::istream& in, const std::string& source_name,
                                     double reporting_threshold = 600.0);
std::vector<ClaimRecord> load_claims_file(const std::string& path,
                                          double reporting_threshold = 600.0);

// The Play-4 wagering options this toolkit ships with: the straight bet plus
// the 4-, 6-, 12- and 24-way boxes.
std::vector<BetCatalogEntry> builtin_play4_catalog();

// Group claims by gambler and aggregate into per-class win counts. Claims on
// one bet type sharing a drawing (same draw id, or same date when the draw id
// is missing) collapse into one win of a unit-scaled class. A drawing won by
// two distinct bet types marks the profile as having dependent wins.
std::vector<GamblerProfile> build_profiles(const std::vector<ClaimRecord>& claims,
                                           const std::vector<BetCatalogEntry>& catalog);

// Minimum plausible spend for a profile with no dependent wins.
solver::SpendBound min_spend_for_profile(const GamblerProfile& profile,
                                         const ScreeningConfig& config);

// Probability of winning the profile's record if `budget` were spent as
// favourably as possible across its bet classes. Pass a non-positive budget
// to derive it as take_home_rate x total prize value.
double assess_budget_plausibility(const GamblerProfile& profile, double budget,
                                  const ScreeningConfig& config);

// Bonferroni population bound: min(1, n_gamblers x prob).
double population_adjust(double prob, double n_gamblers);

// The whole pipeline: profiles, routing, verdicts. Analysis failures are kept
// per gambler and never abort the run.
ScreeningReport screen(const std::vector<ClaimRecord>& claims,
                       const std::vector<BetCatalogEntry>& catalog,
                       const ScreeningConfig& config);

// Renderings; both are deterministic functions of the report.
std::string render_table(const ScreeningReport& report);
std::string render_tree(const ScreeningReport& report);  // JSON document

}  // namespace luckcheck::screening
