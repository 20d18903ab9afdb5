#include "luckcheck/betamath.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace luckcheck::betamath {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLentzFloor = 1e-30;  // modulus floor for near-zero denominators
constexpr int kMaxCfIterations = 500;
constexpr double kCfTol = 1e-15;

void check_ab(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("reg_beta: shape parameters must be positive and finite");
  }
}

void check_x(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("reg_beta: x must lie in [0, 1]");
  }
}

// log Beta(a, b). lgamma(a) + lgamma(b) - lgamma(a+b) loses absolute accuracy
// when the arguments are very lopsided (the lgamma values are huge and nearly
// cancel), so when the smaller argument is an integer we use
//   log B(m, b) = lgamma(m) - sum_{k=0}^{m-1} log(b + k),
// and otherwise evaluate the lgamma difference in extended precision.
double log_beta(double a, double b) {
  if (a > b) std::swap(a, b);
  const double r = std::round(a);
  if (r >= 1.0 && r <= 4096.0 && std::fabs(a - r) <= 1e-12 * r) {
    const int m = static_cast<int>(r);
    double s = 0.0;
    for (int k = 0; k < m; ++k) s += std::log(b + k);
    return std::lgamma(r) - s;
  }
  const long double la = std::lgammal(static_cast<long double>(a));
  const long double lb = std::lgammal(static_cast<long double>(b));
  const long double lab = std::lgammal(static_cast<long double>(a) + static_cast<long double>(b));
  return static_cast<double>(la + lb - lab);
}

// Continued fraction for the incomplete Beta function (the factor that
// multiplies x^a (1-x)^b / (a B(a,b))), modified Lentz iteration.
double ibeta_cf(double x, double a, double b) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kLentzFloor) d = kLentzFloor;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxCfIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kLentzFloor) d = kLentzFloor;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kLentzFloor) c = kLentzFloor;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kLentzFloor) d = kLentzFloor;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kLentzFloor) c = kLentzFloor;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kCfTol) return h;
  }
  throw std::runtime_error("reg_beta: continued fraction did not converge in " +
                           std::to_string(kMaxCfIterations) + " iterations (a=" +
                           std::to_string(a) + ", b=" + std::to_string(b) + ")");
}

// log I_x(a, b) on the branch where the continued fraction converges
// (x <= (a+1)/(a+b+2)). Everything stays in log space.
double log_ibeta_lower(double x, double a, double b) {
  return a * std::log(x) + b * std::log1p(-x) - std::log(a) - log_beta(a, b) +
         std::log(ibeta_cf(x, a, b));
}

bool lower_branch(double x, double a, double b) {
  return x <= (a + 1.0) / (a + b + 2.0);
}

void check_query(const TailQuery& q) {
  if (!(q.p > 0.0 && q.p < 1.0)) {
    throw std::invalid_argument("tail query: p must lie strictly inside (0, 1)");
  }
  if (q.w < 0) throw std::invalid_argument("tail query: w must be >= 0");
  if (!(q.n >= 0.0) || !std::isfinite(q.n)) {
    throw std::invalid_argument("tail query: n must be finite and >= 0");
  }
  if (q.w >= 1 && q.n < q.w) {
    throw std::domain_error("tail query: n must be >= w when w >= 1");
  }
}

}  // namespace

double reg_beta(double x, double a, double b) {
  check_ab(a, b);
  check_x(x);
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  if (lower_branch(x, a, b)) return std::exp(log_ibeta_lower(x, a, b));
  return -std::expm1(log_ibeta_lower(1.0 - x, b, a));
}

double log_reg_beta(double x, double a, double b) {
  check_ab(a, b);
  check_x(x);
  if (x == 0.0) return -kInf;
  if (x == 1.0) return 0.0;
  if (lower_branch(x, a, b)) return log_ibeta_lower(x, a, b);
  const double log_complement = log_ibeta_lower(1.0 - x, b, a);
  if (log_complement >= 0.0) return -kInf;  // complement is 1 to double precision
  return std::log1p(-std::exp(log_complement));
}

double tail_prob(const TailQuery& q) {
  check_query(q);
  if (q.w == 0) return 1.0;
  if (q.n == q.w) return std::pow(q.p, q.w);
  return reg_beta(q.p, static_cast<double>(q.w), q.n - q.w + 1.0);
}

double log_tail_prob(const TailQuery& q) {
  check_query(q);
  if (q.w == 0) return 0.0;
  if (q.n == q.w) return q.w * std::log(q.p);  // D(w; w, p) = p^w exactly
  return log_reg_beta(q.p, static_cast<double>(q.w), q.n - q.w + 1.0);
}

double dlog_tail_dn(const TailQuery& q) {
  if (q.w == 0) {
    check_query(q);
    return 0.0;
  }
  check_query(q);
  if (q.n <= q.w) {
    throw std::domain_error("dlog_tail_dn: requires n > w");
  }
  double h = std::max(1e-4 * q.n, 1e-3);
  // keep the full stencil inside (w, inf)
  if (q.n - h <= q.w) h = 0.25 * (q.n - q.w);
  const auto f = [&](double n) { return log_tail_prob({n, q.w, q.p}); };
  const double g_full = (f(q.n + h) - f(q.n - h)) / (2.0 * h);
  const double g_half = (f(q.n + 0.5 * h) - f(q.n - 0.5 * h)) / h;
  return (4.0 * g_half - g_full) / 3.0;
}

TicketCrossing min_tickets_detail(int w, double p, double eps) {
  if (w < 1) throw std::invalid_argument("min_tickets: w must be >= 1");
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("min_tickets: p must lie strictly inside (0, 1)");
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("min_tickets: eps must lie strictly inside (0, 1)");
  }
  const double log_eps = std::log(eps);
  if (w * std::log(p) >= log_eps) {
    // p^w >= eps already: the vertex is feasible
    return {static_cast<double>(w), static_cast<double>(w)};
  }
  double lo = w;  // D(lo) < eps
  double hi = std::max(2.0 * w, w + 1.0);
  while (log_tail_prob({hi, w, p}) < log_eps) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e18) throw std::runtime_error("min_tickets: no crossing below 1e18 tickets");
  }
  while (hi - lo > 0.5) {
    const double mid = 0.5 * (lo + hi);
    if (log_tail_prob({mid, w, p}) < log_eps) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double rounded = std::ceil(lo);
  if (log_tail_prob({rounded, w, p}) < log_eps) rounded += 1.0;
  return {rounded, 0.5 * (lo + hi)};
}

double min_tickets(int w, double p, double eps) {
  return min_tickets_detail(w, p, eps).tickets;
}

}  // namespace luckcheck::betamath
