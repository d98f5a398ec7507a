#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "furst/arith.hpp"
#include "furst/errors.hpp"
#include "furst/structured.hpp"

namespace furst::qnorm {

// The family parameter. The norm, metric, and topology results require q > 1.
struct QParam {
  double q;
  explicit QParam(double q_) : q(q_) {
    if (!(q_ > 1.0)) throw domain_error("QParam: requires q > 1");
  }
};

// A norm value with a nonnegative truncation bound; the bound is 0 for
// literal integers, whose divisor sum is finite and evaluated exactly.
struct NormValue {
  double value = 0.0;
  double tail_bound = 0.0;
};

// The arithmetic progression a + b*Z, the basic open set of the topology.
struct Progression {
  std::int64_t a = 0;
  std::int64_t b = 1;
};

// sup_n ||n||_q = ||1||_q = sum_{k>=2} q^{-k} = 1/(q(q-1)).
inline double diameter(QParam q) { return 1.0 / (q.q * (q.q - 1.0)); }

// q^{-k} by binary exponentiation; exact for q = 2, within an ulp otherwise.
inline double inv_power(double q, std::int64_t k) {
  double base = 1.0 / q;
  double r = 1.0;
  while (k > 0) {
    if (k & 1) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

// ||n||_q = sum over k not dividing n of q^{-k}
//         = 1/(q(q-1)) - sum_{k >= 2, k | n} q^{-k}   for n != 0,
// and ||0||_q = 0 (every k divides 0). Divisor sets are sign-invariant, so
// ||n||_q = ||-n||_q. The finite divisor sum makes the value exact in
// binary64 up to rounding; tail_bound = 0.
inline NormValue qnorm(const arith::PrimeTable& table, std::int64_t n, QParam q) {
  if (n == 0) return {0.0, 0.0};
  double s = 0.0;
  for (std::int64_t k : arith::divisors(table, n)) {
    if (k == 1) continue;
    double t = inv_power(q.q, k);
    if (t == 0.0) break;  // q^{-k} decreasing in k: all later terms underflow too
    s += t;
  }
  return {diameter(q) - s, 0.0};
}

// Norm of a symbolically represented integer. Truncates the divisor sum at
// K = ceil(log_q(1/(tol (q-1)))), so the discarded geometric tail
// sum_{k > K} q^{-k} = q^{-K}/(q-1) is at most tol. Divisibility is decided
// by the structured predicates; the value is never materialized.
inline NormValue qnorm_structured(const arith::PrimeTable& table,
                                  const structured::StructuredInteger& x,
                                  QParam q, double tol) {
  if (!(tol > 0.0)) throw domain_error("qnorm_structured: tol must be positive");
  if (x.kind == structured::Kind::Plain && x.arg == 0) return {0.0, 0.0};
  double k_real = std::ceil(std::log(1.0 / (tol * (q.q - 1.0))) / std::log(q.q));
  if (k_real > 1e9) throw capacity_error("qnorm_structured: truncation index too large");
  std::int64_t cutoff = std::max<std::int64_t>(2, static_cast<std::int64_t>(k_real));
  double s = 0.0;
  for (std::int64_t k = 2; k <= cutoff; ++k)
    if (structured::divides(table, k, x)) s += inv_power(q.q, k);
  double tail = inv_power(q.q, cutoff) / (q.q - 1.0);
  return {diameter(q) - s, tail};
}

// d_q(m, n) = ||m - n||_q: symmetric, zero iff m = n, triangle inequality
// from subadditivity of the norm.
inline NormValue metric(const arith::PrimeTable& table, std::int64_t m,
                        std::int64_t n, QParam q) {
  return qnorm(table, m - n, q);
}

// Every n with q^{-n} strictly above the certified norm value must divide the
// source integer (||a||_q < q^{-n} forces n | a). Sound, not complete: the
// implication is one-directional. Since q^{-n} is decreasing, the result is
// an initial segment {1, ..., m}; for a norm of 0 (source 0) every n
// qualifies, so the scan is capped.
inline std::vector<std::int64_t> forced_divisors(NormValue v, QParam q,
                                                 std::int64_t cap = 64) {
  std::vector<std::int64_t> out;
  double bound = v.value + v.tail_bound;
  for (std::int64_t n = 1; n <= cap; ++n) {
    if (!(inv_power(q.q, n) > bound)) break;
    out.push_back(n);
  }
  return out;
}

// Radius r = q^{-b} making the open ball a subset of the progression:
// B_q(a, q^{-b}) is contained in a + b*Z for every center a.
inline double progression_radius(std::int64_t b, QParam q) {
  if (b < 1) throw domain_error("progression_radius: b must be >= 1");
  return inv_power(q.q, b);
}

// Modulus b = N! for the minimal N >= 0 with 1/((q-1) q^N) < r, making the
// progression a subset of the ball: a + b*Z is contained in B_q(a, r) for
// every a. (Divisibility by every k <= N is what N! buys.)
inline std::int64_t ball_cover_modulus(double r, QParam q) {
  if (!(r > 0.0)) throw domain_error("ball_cover_modulus: r must be positive");
  std::int64_t n = 0;
  double bound = 1.0 / (q.q - 1.0);  // 1/((q-1) q^n) at n = 0
  while (!(bound < r)) {
    ++n;
    bound /= q.q;
    if (n > 20) throw capacity_error("ball_cover_modulus: N! overflows 64 bits");
  }
  std::int64_t b = 1;
  for (std::int64_t i = 2; i <= n; ++i) b *= i;  // 20! fits in 64 bits
  return b;
}

}  // namespace furst::qnorm
