#include "luckcheck/bkr.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace luckcheck::bkr {

namespace {

std::uint64_t checked_pow(int base, int exp, std::uint64_t limit) {
  std::uint64_t v = 1;
  for (int i = 0; i < exp; ++i) {
    if (v > limit / base) {
      throw std::invalid_argument("event space exceeds the enumeration guard");
    }
    v *= static_cast<std::uint64_t>(base);
  }
  return v;
}

std::uint32_t coords_to_mask(const std::vector<int>& coords, int dims) {
  std::uint32_t mask = 0;
  for (int c : coords) {
    if (c < 0 || c >= dims) throw std::out_of_range("coordinate index out of range");
    mask |= (1u << c);
  }
  return mask;
}

void check_same_shape(const Event& a, const Event& b) {
  if (a.alphabet_size() != b.alphabet_size() || a.dims() != b.dims()) {
    throw std::invalid_argument("events live in different spaces");
  }
}

// [A]_J for J given as a bit mask. Outcomes are grouped by their projection
// onto J; a member of A survives iff its whole fiber lies in A.
Event closure_mask(const Event& a, std::uint32_t mask) {
  const int s = a.alphabet_size();
  const int d = a.dims();
  const std::uint64_t total = a.outcome_count();

  std::uint64_t group_count = 1;
  for (int j = 0; j < d; ++j) {
    if (mask & (1u << j)) group_count *= static_cast<std::uint64_t>(s);
  }
  const std::uint64_t fiber = total / group_count;

  // key of an outcome = mixed-radix number over the J digits only
  const auto key_of = [&](std::uint64_t idx) {
    std::uint64_t key = 0;
    std::uint64_t keystride = 1;
    for (int j = 0; j < d; ++j) {
      const std::uint64_t digit = idx % s;
      idx /= s;
      if (mask & (1u << j)) {
        key += digit * keystride;
        keystride *= static_cast<std::uint64_t>(s);
      }
    }
    return key;
  };

  std::vector<std::uint32_t> tally(group_count, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    if (a.contains(idx)) ++tally[key_of(idx)];
  }
  Event out(s, d, false);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    if (tally[key_of(idx)] == fiber) out.insert(idx);
  }
  return out;
}

// memoized closures of one event, keyed by coordinate mask
class ClosureCache {
 public:
  explicit ClosureCache(const Event& e) : event_(e) {}
  const Event& get(std::uint32_t mask) {
    auto it = cache_.find(mask);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(mask, closure_mask(event_, mask)).first->second;
  }

 private:
  const Event& event_;
  std::unordered_map<std::uint32_t, Event> cache_;
};

void check_box_guard(const std::vector<Event>& events) {
  if (events.size() < 2) throw std::invalid_argument("box operation needs at least two events");
  const Event& first = events.front();
  for (const Event& e : events) check_same_shape(first, e);
  const int d = first.dims();
  if (d > 20) throw std::invalid_argument("box operation guard: dims must be <= 20");
  double assignments = std::pow(static_cast<double>(events.size()), d);
  if (assignments > 2e7) {
    throw std::invalid_argument("box operation guard: too many certifier assignments");
  }
}

// A <> B by direct enumeration of the splitting mask K:
//   A <> B = union over K of [A]_K intersect [B]_{complement of K}.
Event pair_box(const Event& a, const Event& b) {
  const int d = a.dims();
  const std::uint32_t full = (d == 32) ? ~0u : ((1u << d) - 1u);
  ClosureCache ca(a);
  ClosureCache cb(b);
  Event out(a.alphabet_size(), d, false);
  for (std::uint32_t k = 0;; ++k) {
    Event inter = ca.get(k);
    inter &= cb.get(full & ~k);
    out |= inter;
    if (k == full) break;
  }
  return out;
}

}  // namespace

FiniteEventSpace::FiniteEventSpace(int alphabet_size, int dims)
    : alphabet_(alphabet_size), dims_(dims) {
  if (alphabet_ < 1) throw std::invalid_argument("alphabet size must be >= 1");
  if (dims_ < 1) throw std::invalid_argument("dims must be >= 1");
  count_ = checked_pow(alphabet_, dims_, kMaxOutcomes);
  dists_.assign(dims_, std::vector<double>(alphabet_, 1.0 / alphabet_));
}

FiniteEventSpace::FiniteEventSpace(std::vector<std::vector<double>> coord_dists)
    : dists_(std::move(coord_dists)) {
  dims_ = static_cast<int>(dists_.size());
  if (dims_ < 1) throw std::invalid_argument("dims must be >= 1");
  alphabet_ = static_cast<int>(dists_[0].size());
  if (alphabet_ < 1) throw std::invalid_argument("alphabet size must be >= 1");
  for (const auto& dist : dists_) {
    if (static_cast<int>(dist.size()) != alphabet_) {
      throw std::invalid_argument("all coordinate distributions must share one alphabet");
    }
    double total = 0.0;
    for (double w : dist) {
      if (!(w >= 0.0)) throw std::invalid_argument("coordinate probabilities must be >= 0");
      total += w;
    }
    if (std::fabs(total - 1.0) > 1e-12) {
      throw std::invalid_argument("coordinate distribution must sum to 1 within 1e-12");
    }
  }
  count_ = checked_pow(alphabet_, dims_, kMaxOutcomes);
}

std::uint64_t FiniteEventSpace::encode(const std::vector<int>& outcome) const {
  if (static_cast<int>(outcome.size()) != dims_) {
    throw std::invalid_argument("outcome has the wrong number of coordinates");
  }
  std::uint64_t idx = 0;
  std::uint64_t stride = 1;
  for (int j = 0; j < dims_; ++j) {
    if (outcome[j] < 0 || outcome[j] >= alphabet_) {
      throw std::out_of_range("outcome symbol out of alphabet range");
    }
    idx += static_cast<std::uint64_t>(outcome[j]) * stride;
    stride *= static_cast<std::uint64_t>(alphabet_);
  }
  return idx;
}

std::vector<int> FiniteEventSpace::decode(std::uint64_t index) const {
  if (index >= count_) throw std::out_of_range("outcome index out of range");
  std::vector<int> outcome(dims_);
  for (int j = 0; j < dims_; ++j) {
    outcome[j] = static_cast<int>(index % alphabet_);
    index /= alphabet_;
  }
  return outcome;
}

Event::Event(int alphabet_size, int dims, bool full)
    : alphabet_(alphabet_size), dims_(dims) {
  count_ = checked_pow(alphabet_, dims_, FiniteEventSpace::kMaxOutcomes);
  words_.assign((count_ + 63) / 64, full ? ~0ull : 0ull);
  if (full && count_ % 64 != 0) {
    words_.back() = (1ull << (count_ % 64)) - 1ull;
  }
}

bool Event::contains(std::uint64_t index) const {
  return (words_[index >> 6] >> (index & 63)) & 1ull;
}

void Event::insert(std::uint64_t index) { words_[index >> 6] |= (1ull << (index & 63)); }

void Event::erase(std::uint64_t index) { words_[index >> 6] &= ~(1ull << (index & 63)); }

std::uint64_t Event::size() const {
  std::uint64_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::uint64_t>(std::popcount(w));
  return n;
}

bool Event::is_subset_of(const Event& other) const {
  check_same_shape(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

Event& Event::operator&=(const Event& other) {
  check_same_shape(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

Event& Event::operator|=(const Event& other) {
  check_same_shape(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

bool operator==(const Event& a, const Event& b) {
  check_same_shape(a, b);
  return a.words_ == b.words_;
}

std::vector<std::uint64_t> Event::members() const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t idx = 0; idx < count_; ++idx) {
    if (contains(idx)) out.push_back(idx);
  }
  return out;
}

Event empty_event(const FiniteEventSpace& space) {
  return Event(space.alphabet_size(), space.dims(), false);
}

Event full_event(const FiniteEventSpace& space) {
  return Event(space.alphabet_size(), space.dims(), true);
}

Event event_of(const FiniteEventSpace& space, const std::vector<std::vector<int>>& outcomes) {
  Event e = empty_event(space);
  for (const auto& o : outcomes) e.insert(space.encode(o));
  return e;
}

Event event_where(const FiniteEventSpace& space,
                  const std::function<bool(const std::vector<int>&)>& predicate) {
  Event e = empty_event(space);
  for (std::uint64_t idx = 0; idx < space.outcome_count(); ++idx) {
    if (predicate(space.decode(idx))) e.insert(idx);
  }
  return e;
}

Event cylinder(const FiniteEventSpace& space, const std::vector<int>& coords,
               const std::vector<int>& outcome) {
  if (static_cast<int>(outcome.size()) != space.dims()) {
    throw std::invalid_argument("outcome has the wrong number of coordinates");
  }
  const std::uint32_t mask = coords_to_mask(coords, space.dims());
  (void)space.encode(outcome);  // range-check the symbols
  Event e = empty_event(space);
  for (std::uint64_t idx = 0; idx < space.outcome_count(); ++idx) {
    std::uint64_t rest = idx;
    bool match = true;
    for (int j = 0; j < space.dims(); ++j) {
      const int digit = static_cast<int>(rest % space.alphabet_size());
      rest /= space.alphabet_size();
      if ((mask & (1u << j)) && digit != outcome[j]) {
        match = false;
        break;
      }
    }
    if (match) e.insert(idx);
  }
  return e;
}

Event closure(const Event& a, const std::vector<int>& coords) {
  return closure_mask(a, coords_to_mask(coords, a.dims()));
}

Event bkr_box(const std::vector<Event>& events) {
  check_box_guard(events);
  const int b = static_cast<int>(events.size());
  const int d = events.front().dims();

  // Enumerate assignments of every coordinate to one of the b events; the
  // assignment induces J_i = coordinates assigned to event i. Closures grow
  // with J, so certifying sets may be taken to partition all coordinates.
  std::vector<ClosureCache> caches;
  caches.reserve(events.size());
  for (const Event& e : events) caches.emplace_back(e);

  Event out(events.front().alphabet_size(), d, false);
  std::vector<int> assign(d, 0);
  for (;;) {
    std::vector<std::uint32_t> masks(b, 0);
    for (int j = 0; j < d; ++j) masks[assign[j]] |= (1u << j);

    Event inter = caches[0].get(masks[0]);
    for (int i = 1; i < b && !inter.empty(); ++i) inter &= caches[i].get(masks[i]);
    out |= inter;

    int j = 0;
    while (j < d && assign[j] == b - 1) assign[j++] = 0;
    if (j == d) break;
    ++assign[j];
  }
  return out;
}

Event left_nested_box(const std::vector<Event>& events) {
  check_box_guard(events);
  Event acc = pair_box(events[0], events[1]);
  for (std::size_t i = 2; i < events.size(); ++i) acc = pair_box(acc, events[i]);
  return acc;
}

double event_prob(const FiniteEventSpace& space, const Event& a) {
  if (a.alphabet_size() != space.alphabet_size() || a.dims() != space.dims()) {
    throw std::invalid_argument("event does not live in this space");
  }
  double total = 0.0;
  for (std::uint64_t idx = 0; idx < space.outcome_count(); ++idx) {
    if (!a.contains(idx)) continue;
    std::uint64_t rest = idx;
    double prob = 1.0;
    for (int j = 0; j < space.dims(); ++j) {
      prob *= space.coord_dist(j)[rest % space.alphabet_size()];
      rest /= space.alphabet_size();
    }
    total += prob;
  }
  return total;
}

int BetMatrix::row_sum(int bet) const {
  int n = 0;
  for (int j = 0; j < draws; ++j) n += wagered(bet, j) ? 1 : 0;
  return n;
}

WinEvents win_events_from_bets(const FiniteEventSpace& space, const BetMatrix& bets,
                               const std::vector<std::vector<int>>& win_sets,
                               const std::vector<int>& wins_required) {
  if (bets.draws != space.dims()) {
    throw std::invalid_argument("bet matrix draw count does not match the space");
  }
  if (static_cast<int>(win_sets.size()) != bets.bets ||
      static_cast<int>(wins_required.size()) != bets.bets) {
    throw std::invalid_argument("win_sets and wins_required must have one entry per bet");
  }
  if (static_cast<std::size_t>(bets.bets) * bets.draws != bets.on.size()) {
    throw std::invalid_argument("bet matrix storage does not match its shape");
  }

  // winning_symbol[i][s]: does symbol s count as a win for bet i
  std::vector<std::vector<bool>> winning_symbol(bets.bets,
                                                std::vector<bool>(space.alphabet_size(), false));
  for (int i = 0; i < bets.bets; ++i) {
    for (int s : win_sets[i]) {
      if (s < 0 || s >= space.alphabet_size()) {
        throw std::out_of_range("win set symbol out of alphabet range");
      }
      winning_symbol[i][s] = true;
    }
  }

  WinEvents out{std::vector<Event>(), empty_event(space)};
  for (int i = 0; i < bets.bets; ++i) out.wins.push_back(empty_event(space));

  std::vector<int> digits(space.dims());
  for (std::uint64_t idx = 0; idx < space.outcome_count(); ++idx) {
    std::uint64_t rest = idx;
    for (int j = 0; j < space.dims(); ++j) {
      digits[j] = static_cast<int>(rest % space.alphabet_size());
      rest /= space.alphabet_size();
    }
    bool at_most_one = true;
    for (int j = 0; j < space.dims() && at_most_one; ++j) {
      int winners = 0;
      for (int i = 0; i < bets.bets; ++i) {
        if (bets.wagered(i, j) && winning_symbol[i][digits[j]]) ++winners;
      }
      if (winners > 1) at_most_one = false;
    }
    if (at_most_one) out.at_most_one.insert(idx);

    for (int i = 0; i < bets.bets; ++i) {
      int count = 0;
      for (int j = 0; j < space.dims(); ++j) {
        if (bets.wagered(i, j) && winning_symbol[i][digits[j]]) ++count;
      }
      if (count >= wins_required[i]) out.wins[i].insert(idx);
    }
  }
  return out;
}

}  // namespace luckcheck::bkr
