#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "luckcheck/screening.hpp"

namespace luckcheck::screening {

namespace {

using json = nlohmann::ordered_json;

std::string format_money(double v) {
  std::ostringstream out;
  out << "$" << std::fixed << std::setprecision(2) << v;
  return out.str();
}

std::string format_prob(double v) {
  std::ostringstream out;
  out << std::scientific << std::setprecision(3) << v;
  return out.str();
}

json profile_json(const GamblerProfile& profile) {
  json classes = json::array();
  for (const UnitClass& uc : profile.unit_classes) {
    classes.push_back({{"bet_id", uc.bet_id},
                       {"units", uc.units},
                       {"wins", uc.wins},
                       {"cost", uc.cost},
                       {"win_prob", uc.win_prob},
                       {"prize", uc.prize}});
  }
  return json{{"claim_rows", profile.claim_rows},
              {"unit_claims", profile.total_unit_claims},
              {"win_events", profile.win_events},
              {"unit_classes", classes},
              {"dependent_draws", profile.dependent_draws},
              {"same_date_collapse_applied", profile.same_date_collapse_applied}};
}

}  // namespace

std::string render_tree(const ScreeningReport& report) {
  json doc;
  doc["config"] = {{"eps", report.config.eps},
                   {"population", report.config.population},
                   {"flag_spend_threshold", report.config.flag_spend_threshold},
                   {"take_home_rate", report.config.take_home_rate},
                   {"reporting_threshold", report.config.reporting_threshold},
                   {"population_times_eps", report.config.population * report.config.eps}};
  json gamblers = json::array();
  for (const GamblerFinding& f : report.findings) {
    json g;
    g["gambler_id"] = f.gambler_id;
    g["profile"] = profile_json(f.profile);
    g["route"] = f.route;
    if (f.min_spend) {
      g["min_spend"] = {{"spend", f.min_spend->spend},
                        {"rounded_spend", f.rounded_spend},
                        {"n_star", f.min_spend->n_star},
                        {"achieved_log_prob", f.min_spend->achieved_log_prob},
                        {"converged", f.min_spend->converged},
                        {"iterations", f.min_spend->iterations}};
    }
    if (f.max_win_prob) {
      g["budget"] = f.budget;
      g["max_win_prob"] = *f.max_win_prob;
    }
    g["population_adjusted"] = f.population_adjusted;
    g["verdict"] = to_string(f.verdict);
    if (!f.error.empty()) g["error"] = f.error;
    gamblers.push_back(std::move(g));
  }
  doc["gamblers"] = std::move(gamblers);
  doc["summary"] = {{"gamblers", report.gamblers},
                    {"implausible", report.implausible},
                    {"plausibly_lucky", report.plausibly_lucky},
                    {"insufficient_data", report.insufficient_data}};
  return doc.dump(2) + "\n";
}

std::string render_table(const ScreeningReport& report) {
  std::ostringstream out;
  out << "screening run: eps=" << format_prob(report.config.eps)
      << " population=" << report.config.population
      << " (N*eps=" << format_prob(report.config.population * report.config.eps) << ")\n"
      << "defaults: reporting threshold " << format_money(report.config.reporting_threshold)
      << ", flag-spend threshold " << format_money(report.config.flag_spend_threshold)
      << ", take-home rate " << report.config.take_home_rate << "\n\n";

  out << std::left << std::setw(20) << "gambler" << std::right << std::setw(7) << "claims"
      << std::setw(6) << "wins" << "  " << std::left << std::setw(21) << "route" << std::right
      << std::setw(14) << "spend/prob" << std::setw(12) << "pop-adj" << "  " << std::left
      << "verdict\n";
  out << std::string(92, '-') << "\n";
  for (const GamblerFinding& f : report.findings) {
    out << std::left << std::setw(20) << f.gambler_id << std::right << std::setw(7)
        << f.profile.total_unit_claims << std::setw(6) << f.profile.win_events << "  "
        << std::left << std::setw(21) << f.route << std::right << std::setw(14);
    if (f.min_spend) {
      out << format_money(f.min_spend->spend);
    } else if (f.max_win_prob) {
      out << format_prob(*f.max_win_prob);
    } else {
      out << "-";
    }
    out << std::setw(12);
    if (f.route != "none") {
      out << format_prob(f.population_adjusted);
    } else {
      out << "-";
    }
    out << "  " << std::left << to_string(f.verdict);
    if (!f.error.empty()) out << "  [" << f.error << "]";
    out << "\n";
  }
  out << std::string(92, '-') << "\n";
  out << report.gamblers << " gambler(s): " << report.implausible << " implausible, "
      << report.plausibly_lucky << " plausibly lucky, " << report.insufficient_data
      << " with insufficient data\n";
  return out.str();
}

}  // namespace luckcheck::screening
