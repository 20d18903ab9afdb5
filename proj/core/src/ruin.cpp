#include "luckcheck/ruin.hpp"

#include <cmath>
#include <stdexcept>

namespace luckcheck::ruin {

namespace {

void check_scenario(const BankrollScenario& s) {
  const TicketSpec& t = s.ticket;
  if (!(t.cost > 0.0)) throw std::invalid_argument("ticket cost must be positive");
  if (!(t.prize >= 0.0)) throw std::invalid_argument("ticket prize must be >= 0");
  if (!(t.win_prob >= 0.0 && t.win_prob < 1.0)) {
    throw std::invalid_argument("ticket win probability must lie in [0, 1)");
  }
  if (expected_ticket_value(t) >= 0.0) {
    throw std::domain_error("scenario assumes a losing ticket: E(X) = p*j - c must be < 0");
  }
  if (!(s.bankroll >= t.cost)) {
    throw std::invalid_argument("bankroll must afford at least one ticket");
  }
}

bool integer_multiple(double value, double unit) {
  const double q = value / unit;
  return std::fabs(q - std::round(q)) <= 1e-9 * std::max(1.0, std::fabs(q));
}

}  // namespace

double expected_ticket_value(const TicketSpec& ticket) {
  return ticket.win_prob * ticket.prize - ticket.cost;
}

StoppingTimeBounds expected_stopping_time_bounds(const BankrollScenario& s) {
  check_scenario(s);
  const double drift = -expected_ticket_value(s.ticket);  // |E(X)|
  StoppingTimeBounds out;
  out.lower = (s.bankroll - s.ticket.cost) / drift;
  out.upper = s.bankroll / drift;
  // all possible ticket values are multiples of c iff the prize is
  // (automatic when the ticket never wins)
  const bool prize_ok = s.ticket.win_prob == 0.0 || integer_multiple(s.ticket.prize, s.ticket.cost);
  if (integer_multiple(s.bankroll, s.ticket.cost) && prize_ok) {
    out.exact = out.upper;
  }
  return out;
}

double expected_prize_count(const BankrollScenario& s) {
  check_scenario(s);
  const TicketSpec& t = s.ticket;
  return t.win_prob * s.bankroll / (t.cost - t.win_prob * t.prize);
}

}  // namespace luckcheck::ruin
