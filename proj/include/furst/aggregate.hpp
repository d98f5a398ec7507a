#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "furst/arith.hpp"
#include "furst/errors.hpp"
#include "furst/qnorm.hpp"
#include "furst/sieve.hpp"

namespace furst::aggregate {

enum class AggregateKind { XI, INTEGRAL };

// XI values lie in [0, 1]; INTEGRAL values in [0, ln 2].
struct AggregateNorm {
  AggregateKind kind;
  double value = 0.0;
  double tail_bound = 0.0;
};

namespace detail {

// Error budget for one cached zeta(k) - 1 term: Euler-Maclaurin evaluation
// below k = 12, direct summation at or above.
inline double zeta_term_slack(std::int64_t k) { return k <= 11 ? 1.2e-13 : 1e-15; }

inline double integral_weight(std::int64_t k) {
  return (2.0 / static_cast<double>(k - 1)) * std::exp2(-static_cast<double>(k));
}

}  // namespace detail

// Sum of the q-norms of n over integer q >= 2, by the divisor closed form:
// xi(n) = d(n) - sum_{k>=2, k|n} zeta(k) = 1 - sum_{k>=2, k|n} (zeta(k) - 1).
// xi(0) = 0: every k divides 0 and the non-divisor sum is empty.
inline AggregateNorm xi(const arith::PrimeTable& table, std::int64_t n) {
  if (n == 0) return {AggregateKind::XI, 0.0, 0.0};
  double acc = 0.0;
  double tail = 0.0;
  for (std::int64_t k : arith::divisors(table, n)) {
    if (k < 2) continue;
    if (k <= 64) {
      acc += arith::zeta_minus_one(static_cast<int>(k));
      tail += detail::zeta_term_slack(k);
    } else {
      // zeta(k) - 1 = 2^{-k} + O(3^{-k}); the correction is unrepresentable
      // next to 1 and lands in the tail bound.
      acc += std::exp2(-static_cast<double>(k));
      tail += 2.0 * std::pow(3.0, -static_cast<double>(k));
    }
  }
  return {AggregateKind::XI, 1.0 - acc, tail};
}

// Defining series truncated at q = terms: sum_{q=2..terms} ||n||_q. Kept as
// the independent route to xi; the omitted tail is below
// sum_{q>terms} 1/(q(q-1)) = 1/terms.
inline AggregateNorm xi_truncated(const arith::PrimeTable& table, std::int64_t n,
                                  std::int64_t terms) {
  if (terms < 2) throw domain_error("xi_truncated: terms must be >= 2");
  if (n == 0) return {AggregateKind::XI, 0.0, 0.0};
  double q_max = static_cast<double>(terms);

  // sum_{q=2..terms} 1/(q(q-1)) telescopes to 1 - 1/terms.
  double acc = 1.0 - 1.0 / q_max;
  double scraps = 0.0;
  for (std::int64_t k : arith::divisors(table, n)) {
    if (k < 2) continue;
    double mk = -static_cast<double>(k);
    double sum = 0.0;
    for (std::int64_t q = 2; q <= terms; ++q) {
      double term = std::pow(static_cast<double>(q), mk);
      if (term < 1e-18) {
        // remaining q-sum is below the integral bound q^{1-k}/(k-1)
        scraps += term * static_cast<double>(q) / (static_cast<double>(k) - 1.0);
        break;
      }
      sum += term;
    }
    acc -= sum;
  }
  return {AggregateKind::XI, acc, 1.0 / q_max + scraps};
}

// Moebius inversion of the divisor identity: zeta(n) recovered as
// sum_{k|n} mu(k) (d(n/k) - xi(n/k)). Agrees with the direct evaluation.
inline double zeta_from_inversion(const arith::PrimeTable& table, std::int64_t n) {
  if (n < 2) throw domain_error("zeta_from_inversion: requires n >= 2");
  double acc = 0.0;
  for (std::int64_t k : arith::divisors(table, n)) {
    int mu = arith::moebius(table, k);
    if (mu == 0) continue;
    std::int64_t m = n / k;
    double d = static_cast<double>(arith::divisor_count(table, m));
    acc += static_cast<double>(mu) * (d - xi(table, m).value);
  }
  return acc;
}

// Integral of the q-norm of n over real q in [2, inf):
// I(n) = ln 2 - sum_{k>=2, k|n} (2/(k-1)) 2^{-k}; I(0) = 0 because every k
// divides 0 and the complementary non-divisor form is an empty sum.
inline AggregateNorm integral_norm(const arith::PrimeTable& table, std::int64_t n) {
  if (n == 0) return {AggregateKind::INTEGRAL, 0.0, 0.0};
  double acc = 0.0;
  std::int64_t used = 0;
  for (std::int64_t k : arith::divisors(table, n)) {
    if (k < 2) continue;
    acc += detail::integral_weight(k);
    ++used;
  }
  double eps = std::numeric_limits<double>::epsilon();
  return {AggregateKind::INTEGRAL, std::log(2.0) - acc,
          4.0 * eps * static_cast<double>(used + 1)};
}

inline double d_xi(const arith::PrimeTable& table, std::int64_t m, std::int64_t n) {
  return xi(table, m - n).value;
}

inline double d_I(const arith::PrimeTable& table, std::int64_t m, std::int64_t n) {
  return integral_norm(table, m - n).value;
}

// B = 2 + zeta(11/10) - 2^{-11/10} - 3^{-11/10} - 4^{-11/10}: the upper
// constant in d_2 <= d_xi <= B d_2 (the lower constant is 1).
inline double equivalence_constant_B() {
  double s = 1.1;
  return 2.0 + arith::zeta(s).value - std::pow(2.0, -s) - std::pow(3.0, -s) -
         std::pow(4.0, -s);
}

namespace detail {

inline double kahan_mean(const std::vector<double>& values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    double y = v - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum / static_cast<double>(values.size());
}

}  // namespace detail

// (1/N) sum_{n<=N} xi(n) via the batch divisor sieve; approaches the
// Euler-Mascheroni constant.
inline double xi_mean(std::int64_t n) {
  auto weight = [](std::int64_t k) {
    return k <= 64 ? arith::zeta_minus_one(static_cast<int>(k))
                   : std::exp2(-static_cast<double>(k));
  };
  return detail::kahan_mean(sieve::sieve_divisor_weights(weight, 1.0, n));
}

// (1/N) sum_{n<=N} I(n) via the batch divisor sieve; approaches ln 4 - 1.
inline double integral_mean(std::int64_t n) {
  return detail::kahan_mean(
      sieve::sieve_divisor_weights(detail::integral_weight, std::log(2.0), n));
}

}  // namespace furst::aggregate
