#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "luckcheck/bkr.hpp"

namespace luckcheck::bkr {

struct LawCheck {
  std::string law;
  int instances = 0;
  int failures = 0;
};

struct VerificationReport {
  std::uint64_t seed = 0;
  int instances_per_law = 0;
  bool fixture_ok = false;       // the worked three-event example reproduces exactly
  std::vector<LawCheck> laws;

  bool all_passed() const;
  int total_failures() const;
};

// Fixed worked example on {0,1}^3: checks the box values of A, B, C including
// non-associativity, the empty-J closures, and the two-bet/two-draw win-event
// construction. Returns false on any mismatch.
bool run_fixture_checks();

// Randomized verification of the set laws and probability inequalities on
// small enumerable spaces (|S| <= 4, d <= 4, b <= 3), `instances` instances
// per law, deterministic per seed:
//   - closure composition  [[A]_J]_K = [A]_{J and K}
//   - closure monotonicity in the event and in the index set
//   - closure of intersections/unions
//   - box containment in the left-nested fold
//   - I and W_1 ... W_b contained in the box of the W_i
//   - P(box of A_i) <= product of P(A_i) on non-uniform product measures
//   - P(I and W_1 ... W_b) <= product P(W_i), with each P(W_i) matching the
//     binomial tail D(n_i; w_i, p_i) within 1e-10
VerificationReport run_verification(std::uint64_t seed, int instances);

}  // namespace luckcheck::bkr
