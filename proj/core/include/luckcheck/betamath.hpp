#pragma once

namespace luckcheck::betamath {

// A binomial tail query: the chance of at least w wins from n tickets that
// each win independently with probability p. The count n is real-valued; the
// tail is evaluated through the regularized incomplete Beta function,
//
//   D(n; w, p) = I_p(w, n - w + 1),
//
// which agrees with the binomial sum at integer n and interpolates between.
struct TailQuery {
  double n = 0.0;  // ticket count, >= 0 (>= w whenever w >= 1)
  int w = 0;       // win count, >= 0
  double p = 0.0;  // per-ticket win probability, strictly inside (0, 1)
};

// Regularized incomplete Beta function I_x(a, b) for 0 <= x <= 1, a, b > 0.
// Continued-fraction evaluation; the symmetry I_x(a,b) = 1 - I_{1-x}(b,a)
// selects whichever branch converges fastest.
double reg_beta(double x, double a, double b);

// log I_x(a, b), computed in log space throughout so that tails far below
// the smallest positive double (down to e.g. exp(-1e6)) stay finite.
double log_reg_beta(double x, double a, double b);

// D(n; w, p). Returns 1 when w == 0.
double tail_prob(const TailQuery& q);

// log D(n; w, p) without underflow.
double log_tail_prob(const TailQuery& q);

// d/dn log D(n; w, p): positive and strictly decreasing in n. Central finite
// differences with step h = max(1e-4 n, 1e-3), Richardson-extrapolated once.
// Requires n > w; returns 0 when w == 0 (D is identically 1).
double dlog_tail_dn(const TailQuery& q);

struct TicketCrossing {
  double tickets;  // smallest integer n with D(n; w, p) >= eps
  double raw;      // un-rounded bisection crossing, for reporting
};

// Smallest ticket count n >= w with D(n; w, p) >= eps, by monotone bisection
// to half-ticket width and then rounded up to the next whole ticket (rounding
// up preserves the lower-bound reading of the result).
TicketCrossing min_tickets_detail(int w, double p, double eps);
double min_tickets(int w, double p, double eps);

}  // namespace luckcheck::betamath
