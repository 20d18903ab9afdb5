#include "luckcheck/bkr_verify.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "luckcheck/betamath.hpp"

namespace luckcheck::bkr {

namespace {

using Rng = std::mt19937_64;

int rand_int(Rng& rng, int lo, int hi) {  // inclusive bounds
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

double rand_unit(Rng& rng) { return (rng() >> 11) * 0x1.0p-53; }

Event random_event(Rng& rng, const FiniteEventSpace& space, double density) {
  Event e = empty_event(space);
  for (std::uint64_t idx = 0; idx < space.outcome_count(); ++idx) {
    if (rand_unit(rng) < density) e.insert(idx);
  }
  return e;
}

std::vector<int> random_coords(Rng& rng, int dims) {
  std::vector<int> coords;
  for (int j = 0; j < dims; ++j) {
    if (rng() & 1u) coords.push_back(j);
  }
  return coords;
}

std::vector<int> intersect_coords(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  for (int x : a) {
    for (int y : b) {
      if (x == y) {
        out.push_back(x);
        break;
      }
    }
  }
  return out;
}

FiniteEventSpace random_nonuniform_space(Rng& rng, int alphabet, int dims) {
  std::vector<std::vector<double>> dists(dims, std::vector<double>(alphabet));
  for (auto& dist : dists) {
    double total = 0.0;
    for (double& w : dist) {
      w = 0.05 + rand_unit(rng);
      total += w;
    }
    for (double& w : dist) w /= total;
    // renormalize exactly enough for the 1e-12 constructor check
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < dist.size(); ++k) s += dist[k];
    dist.back() = 1.0 - s;
  }
  return FiniteEventSpace(std::move(dists));
}

bool check_cyl_composition(Rng& rng) {
  const int alphabet = rand_int(rng, 2, 3);
  const int dims = rand_int(rng, 1, 4);
  FiniteEventSpace space(alphabet, dims);
  Event a = random_event(rng, space, rand_unit(rng));
  auto j = random_coords(rng, dims);
  auto k = random_coords(rng, dims);
  return closure(closure(a, j), k) == closure(a, intersect_coords(j, k));
}

bool check_monotonicity(Rng& rng) {
  const int alphabet = rand_int(rng, 2, 3);
  const int dims = rand_int(rng, 1, 4);
  FiniteEventSpace space(alphabet, dims);
  Event a = random_event(rng, space, 0.4);
  Event b = a;
  for (std::uint64_t idx = 0; idx < space.outcome_count(); ++idx) {
    if (rand_unit(rng) < 0.3) b.insert(idx);
  }
  auto j = random_coords(rng, dims);
  auto k = j;
  for (int c = 0; c < dims; ++c) {  // grow J into K
    bool in_j = false;
    for (int x : j) in_j = in_j || x == c;
    if (!in_j && (rng() & 1u)) k.push_back(c);
  }
  if (!closure(a, j).is_subset_of(closure(b, j))) return false;
  return closure(a, j).is_subset_of(closure(a, k));
}

bool check_cap_cup(Rng& rng) {
  const int alphabet = rand_int(rng, 2, 3);
  const int dims = rand_int(rng, 1, 4);
  FiniteEventSpace space(alphabet, dims);
  const int r = rand_int(rng, 2, 3);
  std::vector<Event> events;
  for (int i = 0; i < r; ++i) events.push_back(random_event(rng, space, rand_unit(rng)));
  auto j = random_coords(rng, dims);

  Event inter = events[0];
  Event uni = events[0];
  Event inter_cl = closure(events[0], j);
  Event uni_cl = closure(events[0], j);
  for (int i = 1; i < r; ++i) {
    inter &= events[i];
    uni |= events[i];
    inter_cl &= closure(events[i], j);
    uni_cl |= closure(events[i], j);
  }
  if (!(closure(inter, j) == inter_cl)) return false;
  return uni_cl.is_subset_of(closure(uni, j));
}

bool check_box_in_nested(Rng& rng) {
  const int alphabet = rand_int(rng, 2, 3);
  const int dims = rand_int(rng, 2, 4);
  FiniteEventSpace space(alphabet, dims);
  const int b = rand_int(rng, 2, 3);
  std::vector<Event> events;
  for (int i = 0; i < b; ++i) events.push_back(random_event(rng, space, 0.3 + 0.5 * rand_unit(rng)));
  return bkr_box(events).is_subset_of(left_nested_box(events));
}

struct BetInstance {
  FiniteEventSpace space;
  BetMatrix matrix;
  std::vector<std::vector<int>> win_sets;
  std::vector<int> wins_required;
  std::vector<double> win_probs;  // per-bet single-draw win probability
};

// Random bet system on a shared alphabet: symbol s encodes, bit by bit, which
// bets win on that draw. Coordinate distributions are identical across draws
// so that each bet wins any wagered draw with a fixed probability.
BetInstance random_bet_instance(Rng& rng) {
  const int b = rand_int(rng, 2, 3);
  const int d = rand_int(rng, 2, b == 3 ? 3 : 4);
  const int alphabet = 1 << b;

  std::vector<double> symbol_weights(alphabet);
  double total = 0.0;
  for (double& w : symbol_weights) {
    w = 0.05 + rand_unit(rng);
    total += w;
  }
  for (double& w : symbol_weights) w /= total;
  double s = 0.0;
  for (int k = 0; k + 1 < alphabet; ++k) s += symbol_weights[k];
  symbol_weights.back() = 1.0 - s;

  std::vector<std::vector<double>> dists(d, symbol_weights);
  FiniteEventSpace space{std::move(dists)};

  BetMatrix matrix;
  matrix.bets = b;
  matrix.draws = d;
  matrix.on.assign(static_cast<std::size_t>(b) * d, 0);
  for (int i = 0; i < b; ++i) {
    int row = 0;
    for (int j = 0; j < d; ++j) {
      const bool lay = rand_unit(rng) < 0.7;
      matrix.on[static_cast<std::size_t>(i) * d + j] = lay ? 1 : 0;
      row += lay ? 1 : 0;
    }
    if (row == 0) {  // keep every bet wagered at least once
      const int j = rand_int(rng, 0, d - 1);
      matrix.on[static_cast<std::size_t>(i) * d + j] = 1;
    }
  }

  std::vector<std::vector<int>> win_sets(b);
  std::vector<double> win_probs(b, 0.0);
  for (int i = 0; i < b; ++i) {
    for (int sym = 0; sym < alphabet; ++sym) {
      if (sym & (1 << i)) {
        win_sets[i].push_back(sym);
        win_probs[i] += symbol_weights[sym];
      }
    }
  }

  std::vector<int> wins_required(b);
  for (int i = 0; i < b; ++i) wins_required[i] = rand_int(rng, 0, matrix.row_sum(i));

  return BetInstance{std::move(space), std::move(matrix), std::move(win_sets),
                     std::move(wins_required), std::move(win_probs)};
}

bool check_contained(Rng& rng) {
  BetInstance inst = random_bet_instance(rng);
  WinEvents we = win_events_from_bets(inst.space, inst.matrix, inst.win_sets, inst.wins_required);
  Event lhs = we.at_most_one;
  for (const Event& w : we.wins) lhs &= w;
  return lhs.is_subset_of(bkr_box(we.wins));
}

bool check_prob_inequality(Rng& rng) {
  const int alphabet = rand_int(rng, 2, 4);
  const int dims = rand_int(rng, 2, 4);
  FiniteEventSpace space = random_nonuniform_space(rng, alphabet, dims);
  const int b = rand_int(rng, 2, 3);
  std::vector<Event> events;
  double product = 1.0;
  for (int i = 0; i < b; ++i) {
    events.push_back(random_event(rng, space, 0.3 + 0.6 * rand_unit(rng)));
    product *= event_prob(space, events.back());
  }
  return event_prob(space, bkr_box(events)) <= product + 1e-12;
}

bool check_no_dependent_wins_bound(Rng& rng) {
  BetInstance inst = random_bet_instance(rng);
  WinEvents we = win_events_from_bets(inst.space, inst.matrix, inst.win_sets, inst.wins_required);

  Event lhs = we.at_most_one;
  double product = 1.0;
  for (int i = 0; i < inst.matrix.bets; ++i) {
    lhs &= we.wins[i];
    const double pw = event_prob(inst.space, we.wins[i]);
    const betamath::TailQuery q{static_cast<double>(inst.matrix.row_sum(i)),
                                inst.wins_required[i], inst.win_probs[i]};
    const double tail = betamath::tail_prob(q);
    if (std::fabs(pw - tail) > 1e-10 * std::max(1.0, tail)) return false;
    product *= pw;
  }
  return event_prob(inst.space, lhs) <= product + 1e-12;
}

}  // namespace

bool VerificationReport::all_passed() const {
  return fixture_ok && total_failures() == 0;
}

int VerificationReport::total_failures() const {
  int n = 0;
  for (const LawCheck& law : laws) n += law.failures;
  return n;
}

bool run_fixture_checks() {
  FiniteEventSpace space(2, 3);
  const auto starts_with = [&](int first) {
    return event_where(space, [&](const std::vector<int>& o) { return o[0] == first; });
  };
  Event a = starts_with(0) | event_where(space, [](const std::vector<int>& o) {
              return o[0] == 1 && o[1] == 0;
            });
  Event b = starts_with(0) | event_where(space, [](const std::vector<int>& o) {
              return o[0] == 1 && o[1] == 1;
            });
  Event c = event_where(space, [](const std::vector<int>& o) { return o[1] == 0 && o[2] == 1; });

  if (a.size() != 6 || b.size() != 6) return false;

  const Event ab = bkr_box({a, b});
  if (!(ab == starts_with(0))) return false;  // A <> B = (0,*,*)

  const Event ab_c = bkr_box({ab, c});
  if (!(ab_c == event_of(space, {{0, 0, 1}}))) return false;  // {(0,0,1)}

  const Event bc = bkr_box({b, c});
  if (!(bc == event_of(space, {{0, 0, 1}}))) return false;

  if (!bkr_box({a, bc}).empty()) return false;     // A <> (B <> C) = empty
  if (!bkr_box({a, b, c}).empty()) return false;   // A <> B <> C = empty
  if (!(left_nested_box({a, b, c}) == ab_c)) return false;

  // closures at J = empty: [A u B] = S^d while [A] = [B] = empty
  Event a_or_b = a | b;
  if (!(closure(a_or_b, {}) == full_event(space))) return false;
  if (!closure(a, {}).empty() || !closure(b, {}).empty()) return false;

  // two bets laid on both of two draws, one win required of each; symbols
  // encode (lose both, win 2nd, win 1st, win both)
  FiniteEventSpace pair_space(4, 2);
  BetMatrix matrix{2, 2, {1, 1, 1, 1}};
  WinEvents we = win_events_from_bets(pair_space, matrix, {{2, 3}, {1, 3}}, {1, 1});
  Event both = we.at_most_one & we.wins[0] & we.wins[1];
  if (!(both == event_of(pair_space, {{1, 2}, {2, 1}}))) return false;
  const Event w_box = bkr_box({we.wins[0], we.wins[1]});
  const Event expected = event_of(
      pair_space, {{1, 2}, {2, 1}, {1, 3}, {2, 3}, {3, 1}, {3, 2}, {3, 3}});
  return w_box == expected;
}

VerificationReport run_verification(std::uint64_t seed, int instances) {
  if (instances < 1) throw std::invalid_argument("instance count must be >= 1");
  VerificationReport report;
  report.seed = seed;
  report.instances_per_law = instances;
  report.fixture_ok = run_fixture_checks();

  struct Suite {
    const char* name;
    bool (*check)(Rng&);
  };
  const Suite suites[] = {
      {"closure composition [[A]_J]_K = [A]_{J&K}", &check_cyl_composition},
      {"closure monotonicity", &check_monotonicity},
      {"closure of intersections and unions", &check_cap_cup},
      {"box contained in left-nested fold", &check_box_in_nested},
      {"I & W_1..W_b contained in box(W_1..W_b)", &check_contained},
      {"P(box) <= product of P(A_i)", &check_prob_inequality},
      {"P(I & W_1..W_b) <= product D(n_i; w_i, p_i)", &check_no_dependent_wins_bound},
  };

  std::uint64_t law_index = 0;
  for (const Suite& suite : suites) {
    Rng rng(seed ^ (0x9e3779b97f4a7c15ull * ++law_index));
    LawCheck law{suite.name, instances, 0};
    for (int i = 0; i < instances; ++i) {
      if (!suite.check(rng)) ++law.failures;
    }
    report.laws.push_back(std::move(law));
  }
  return report;
}

}  // namespace luckcheck::bkr
