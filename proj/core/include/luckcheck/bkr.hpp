#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace luckcheck::bkr {

// Product space S^d with mutually independent coordinates, each with an
// explicit distribution over the alphabet {0, ..., |S|-1}. Outcomes are
// enumerated mixed-radix with coordinate 0 the fastest-varying digit.
class FiniteEventSpace {
 public:
  static constexpr std::uint64_t kMaxOutcomes = 10'000'000;

  // uniform distribution on every coordinate
  FiniteEventSpace(int alphabet_size, int dims);
  // per-coordinate distributions; each must sum to 1 within 1e-12
  explicit FiniteEventSpace(std::vector<std::vector<double>> coord_dists);

  int alphabet_size() const { return alphabet_; }
  int dims() const { return dims_; }
  std::uint64_t outcome_count() const { return count_; }
  const std::vector<double>& coord_dist(int j) const { return dists_[j]; }

  std::uint64_t encode(const std::vector<int>& outcome) const;
  std::vector<int> decode(std::uint64_t index) const;

 private:
  int alphabet_;
  int dims_;
  std::uint64_t count_;
  std::vector<std::vector<double>> dists_;
};

// An event: an explicit subset of S^d stored as a bitset over the enumerated
// outcomes. Immutable by convention once built; the set operations return
// fresh events.
class Event {
 public:
  Event(int alphabet_size, int dims, bool full = false);

  int alphabet_size() const { return alphabet_; }
  int dims() const { return dims_; }
  std::uint64_t outcome_count() const { return count_; }

  bool contains(std::uint64_t index) const;
  void insert(std::uint64_t index);
  void erase(std::uint64_t index);

  std::uint64_t size() const;  // number of member outcomes
  bool empty() const { return size() == 0; }
  bool is_subset_of(const Event& other) const;

  Event& operator&=(const Event& other);
  Event& operator|=(const Event& other);
  friend Event operator&(Event a, const Event& b) { return a &= b; }
  friend Event operator|(Event a, const Event& b) { return a |= b; }
  friend bool operator==(const Event& a, const Event& b);

  std::vector<std::uint64_t> members() const;

 private:
  int alphabet_;
  int dims_;
  std::uint64_t count_;
  std::vector<std::uint64_t> words_;
};

Event empty_event(const FiniteEventSpace& space);
Event full_event(const FiniteEventSpace& space);
Event event_of(const FiniteEventSpace& space, const std::vector<std::vector<int>>& outcomes);
Event event_where(const FiniteEventSpace& space,
                  const std::function<bool(const std::vector<int>&)>& predicate);

// Cyl(J, omega): outcomes that agree with `outcome` on every coordinate in
// `coords` (0-based). An empty J gives all of S^d.
Event cylinder(const FiniteEventSpace& space, const std::vector<int>& coords,
               const std::vector<int>& outcome);

// [A]_J: the outcomes of A certifiable from the coordinates in J alone,
// { omega in A : Cyl(J, omega) subset of A }.
Event closure(const Event& a, const std::vector<int>& coords);

// A_1 <> A_2 <> ... <> A_b: outcomes for which pairwise-disjoint coordinate
// sets J_1, ..., J_b exist with Cyl(J_i, omega) inside A_i for every i.
// Exhaustive search over assignments of coordinates to events.
Event bkr_box(const std::vector<Event>& events);

// The left-nested fold (((A_1 <> A_2) <> A_3) ... <> A_b. The box operation
// is not associative; this always contains bkr_box of the same events.
Event left_nested_box(const std::vector<Event>& events);

// Probability of A under the product measure of `space`.
double event_prob(const FiniteEventSpace& space, const Event& a);

// Which of the b bets ride on which of the d draws: a zero-one incidence
// matrix, row i = bet i.
struct BetMatrix {
  int bets = 0;
  int draws = 0;
  std::vector<std::uint8_t> on;  // row-major, bets x draws

  bool wagered(int bet, int draw) const { return on[static_cast<std::size_t>(bet) * draws + draw] != 0; }
  int row_sum(int bet) const;
};

struct WinEvents {
  std::vector<Event> wins;  // W_i: bet i wins at least wins_required[i] times
  Event at_most_one;        // I: every draw wins at most one wagered bet
};

// Materialize the win events of a bet system. win_sets[i] lists the alphabet
// symbols that count as a win for bet i; a draw the bet was not wagered on
// never counts.
WinEvents win_events_from_bets(const FiniteEventSpace& space, const BetMatrix& bets,
                               const std::vector<std::vector<int>>& win_sets,
                               const std::vector<int>& wins_required);

}  // namespace luckcheck::bkr
