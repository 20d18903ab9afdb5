#pragma once

#include <optional>

namespace luckcheck::ruin {

// A single-prize lottery ticket: costs `cost`, pays `prize` with probability
// `win_prob` and nothing otherwise. The net value X of a ticket must have
// negative expectation, E(X) = win_prob * prize - cost < 0.
struct TicketSpec {
  double cost = 1.0;      // c > 0
  double prize = 0.0;     // j >= 0
  double win_prob = 0.0;  // p in [0, 1)
};

// A gambler who starts with `bankroll` and buys `ticket` over and over,
// recycling winnings, until the bankroll drops below one ticket cost.
struct BankrollScenario {
  double bankroll = 0.0;  // S0 >= cost
  TicketSpec ticket;
};

struct StoppingTimeBounds {
  double lower = 0.0;  // (S0 - c) / |E(X)|, strict
  double upper = 0.0;  // S0 / |E(X)|
  // equals `upper` when S0 and the prize are integer multiples of the cost
  std::optional<double> exact;
};

double expected_ticket_value(const TicketSpec& ticket);  // E(X) = p j - c

// Bounds on the expected number of tickets bought before going broke,
// (S0 - c)/|E(X)| < E(T) <= S0/|E(X)|, via Wald's equation.
StoppingTimeBounds expected_stopping_time_bounds(const BankrollScenario& s);

// Expected number of prizes collected before going broke: p S0 / (c - p j).
double expected_prize_count(const BankrollScenario& s);

}  // namespace luckcheck::ruin
