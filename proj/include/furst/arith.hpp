#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "furst/errors.hpp"

namespace furst::arith {

// Partial sum of a series together with a rigorous truncation bound.
// For a series with nonnegative terms the true value lies in
// [value, value + tail_bound]; in general |true - value| <= tail_bound.
struct SeriesEval {
  double value = 0.0;
  double tail_bound = 0.0;
  std::int64_t terms_used = 0;
};

// Smallest-prime-factor table for 2..limit, built once and shared.
// spf(n) is prime, divides n, and is either <= sqrt(n) or n itself.
class PrimeTable {
 public:
  explicit PrimeTable(std::int64_t limit) : limit_(limit) {
    if (limit < 2) throw domain_error("PrimeTable: limit must be >= 2");
    if (limit > kMaxLimit) throw capacity_error("PrimeTable: limit too large");
    spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
    for (std::int64_t p = 2; p <= limit; ++p) {
      if (spf_[p] != 0) continue;
      for (std::int64_t m = p; m <= limit; m += p)
        if (spf_[m] == 0) spf_[m] = static_cast<std::int32_t>(p);
    }
  }

  std::int64_t limit() const { return limit_; }

  std::int32_t spf(std::int64_t n) const {
    check_range(n);
    return spf_[n];
  }

  bool is_prime(std::int64_t n) const {
    if (n < 2) return false;
    check_range(n);
    return spf_[n] == n;
  }

  std::vector<std::int64_t> primes_up_to(std::int64_t bound) const {
    if (bound > limit_) throw capacity_error("primes_up_to: bound beyond table limit");
    std::vector<std::int64_t> out;
    for (std::int64_t n = 2; n <= bound; ++n)
      if (spf_[n] == n) out.push_back(n);
    return out;
  }

  // 1-based: nth_prime(1) = 2.
  std::int64_t nth_prime(std::int64_t n) const {
    if (n < 1) throw domain_error("nth_prime: index must be >= 1");
    std::int64_t seen = 0;
    for (std::int64_t m = 2; m <= limit_; ++m)
      if (spf_[m] == m && ++seen == n) return m;
    throw capacity_error("nth_prime: index beyond table limit");
  }

 private:
  static constexpr std::int64_t kMaxLimit = INT32_MAX;

  void check_range(std::int64_t n) const {
    if (n < 2 || n > limit_)
      throw capacity_error("PrimeTable: value " + std::to_string(n) + " outside [2, limit]");
  }

  std::int64_t limit_;
  std::vector<std::int32_t> spf_;
};

// Prime factorization with ascending primes; product reconstructs the input.
struct Factorization {
  std::vector<std::pair<std::int64_t, int>> factors;

  std::int64_t reconstruct() const {
    std::int64_t v = 1;
    for (auto [p, e] : factors)
      for (int i = 0; i < e; ++i)
        if (__builtin_mul_overflow(v, p, &v))
          throw capacity_error("Factorization: product overflows 64 bits");
    return v;
  }
};

inline Factorization factorize(const PrimeTable& table, std::int64_t n) {
  if (n == 0) throw domain_error("factorize: n must be nonzero");
  std::int64_t m = n < 0 ? -n : n;
  if (m > table.limit()) throw capacity_error("factorize: |n| beyond table limit");
  Factorization f;
  while (m > 1) {
    std::int64_t p = table.spf(m);
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    f.factors.emplace_back(p, e);
  }
  return f;
}

// Positive divisors of |n|, ascending. n = 0 is rejected: every k divides 0.
inline std::vector<std::int64_t> divisors(const PrimeTable& table, std::int64_t n) {
  if (n == 0) throw domain_error("divisors: n = 0 has every positive divisor");
  Factorization f = factorize(table, n);
  std::vector<std::int64_t> out{1};
  for (auto [p, e] : f.factors) {
    std::size_t base = out.size();
    std::int64_t pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::int64_t divisor_count(const PrimeTable& table, std::int64_t n) {
  if (n == 0) throw domain_error("divisor_count: n = 0 has every positive divisor");
  std::int64_t d = 1;
  for (auto [p, e] : factorize(table, n).factors) d *= e + 1;
  return d;
}

// moebius(n): 0 when a square divides n, else (-1)^(number of prime factors).
inline int moebius(const PrimeTable& table, std::int64_t n) {
  if (n < 1) throw domain_error("moebius: n must be >= 1");
  if (n == 1) return 1;
  int sign = 1;
  for (auto [p, e] : factorize(table, n).factors) {
    (void)p;
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

// zeta(s) for real s > 1 via Euler-Maclaurin: N explicit terms, integral and
// half-term corrections, Bernoulli corrections B_2..B_18. For real s the
// remainder after stopping has the sign of the first omitted correction and is
// no larger in magnitude, which yields the SeriesEval bracket.
inline SeriesEval zeta(double s, double tol = 1e-13) {
  if (!(s > 1.0)) throw domain_error("zeta: requires s > 1");
  if (!(tol > 0.0)) throw domain_error("zeta: tol must be positive");
  constexpr int kN = 64;
  double sum = 0.0;
  for (int k = kN; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
  double est = sum + std::pow(static_cast<double>(kN), 1.0 - s) / (s - 1.0) -
               0.5 * std::pow(static_cast<double>(kN), -s);

  // B_{2j} for j = 1..9.
  constexpr std::array<double, 9> kB = {
      1.0 / 6.0,    -1.0 / 30.0,     1.0 / 42.0, -1.0 / 30.0,      5.0 / 66.0,
      -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0};
  double poch = s;                                     // (s)(s+1)...(s+2j-2), j = 1
  double fact = 2.0;                                   // (2j)!
  double npow = std::pow(static_cast<double>(kN), -s - 1.0);  // N^{-s-2j+1}
  double omitted = 0.0;
  std::int64_t used = kN;
  for (int j = 1; j <= 9; ++j) {
    double term = kB[j - 1] / fact * poch * npow;
    if (std::abs(term) < tol * 0.25 || j == 9) {
      omitted = term;
      break;
    }
    est += term;
    ++used;
    double a = s + 2 * j - 1;
    poch *= a * (a + 1.0);
    fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    npow /= static_cast<double>(kN) * kN;
  }
  double slack = 16.0 * std::numeric_limits<double>::epsilon() * std::abs(est);
  double lo = std::min(est, est + omitted) - slack;
  return {lo, std::abs(omitted) + 2.0 * slack, used};
}

// zeta(k) - 1 for integer k >= 2, full binary64 precision even where
// zeta(k) itself rounds to 1. Cached for k <= 64; beyond that
// zeta(k) - 1 = 2^{-k}(1 + O((2/3)^k)) and the 2^{-k} leading term is used,
// the rest being far below any tolerance in this artifact.
inline double zeta_minus_one(int k) {
  if (k < 2) throw domain_error("zeta_minus_one: requires k >= 2");
  static const std::array<double, 65> cache = [] {
    std::array<double, 65> c{};
    for (int i = 2; i <= 11; ++i) c[i] = zeta(static_cast<double>(i)).value - 1.0;
    for (int i = 12; i <= 64; ++i) {
      double sum = 0.0;  // direct sum of n^{-i} from the smallest term up
      for (int n = 40; n >= 2; --n) sum += std::pow(static_cast<double>(n), -static_cast<double>(i));
      c[i] = sum;
    }
    return c;
  }();
  if (k <= 64) return cache[k];
  return std::exp2(-static_cast<double>(k));
}

// Li(s, z) = sum z^n / n^s for |z| < 1, s >= 1, with the geometric tail bound
// |z|^{N+1} / ((1 - |z|) (N+1)^s). At s = 1 this equals ln(1/(1-z)).
inline SeriesEval polylog(double s, double z, double tol = 1e-13) {
  if (!(s >= 1.0)) throw domain_error("polylog: requires s >= 1");
  if (!(std::abs(z) < 1.0)) throw domain_error("polylog: requires |z| < 1");
  if (!(tol > 0.0)) throw domain_error("polylog: tol must be positive");
  if (z == 0.0) return {0.0, 0.0, 0};

  const double az = std::abs(z);
  auto tail = [&](std::int64_t n) {
    return std::pow(az, static_cast<double>(n + 1)) /
           ((1.0 - az) * std::pow(static_cast<double>(n + 1), s));
  };
  std::int64_t n_terms = 1;
  constexpr std::int64_t kMaxTerms = 1 << 22;
  while (tail(n_terms) > tol && n_terms < kMaxTerms) ++n_terms;

  double sum = 0.0;
  double zn = 1.0;
  for (std::int64_t n = 1; n <= n_terms; ++n) {
    zn *= z;
    sum += zn / std::pow(static_cast<double>(n), s);
  }
  double slack = 8.0 * std::numeric_limits<double>::epsilon() * (az / (1.0 - az));
  return {sum, tail(n_terms) + slack, n_terms};
}

// Legendre: v_p(n!) = sum_{i>=1} floor(n / p^i); k | n! iff every prime power
// p^e || k satisfies e <= v_p(n!).
inline bool divides_factorial(const PrimeTable& table, std::int64_t k, std::int64_t n) {
  if (k < 1 || n < 1) throw domain_error("divides_factorial: requires k, n >= 1");
  if (k == 1) return true;
  for (auto [p, e] : factorize(table, k).factors) {
    std::int64_t v = 0;
    for (std::int64_t q = n / p; q > 0; q /= p) v += q;
    if (v < e) return false;
  }
  return true;
}

// k | p_n# iff k is squarefree and every prime factor of k is <= p_n.
inline bool divides_primorial(const PrimeTable& table, std::int64_t k, std::int64_t n) {
  if (k < 1 || n < 1) throw domain_error("divides_primorial: requires k, n >= 1");
  if (k == 1) return true;
  std::int64_t pn = table.nth_prime(n);
  for (auto [p, e] : factorize(table, k).factors) {
    if (e > 1 || p > pn) return false;
  }
  return true;
}

// k | lcm(1..n) iff every prime power p^e || k satisfies p^e <= n.
inline bool divides_lcm(const PrimeTable& table, std::int64_t k, std::int64_t n) {
  if (k < 1 || n < 1) throw domain_error("divides_lcm: requires k, n >= 1");
  if (k == 1) return true;
  for (auto [p, e] : factorize(table, k).factors) {
    std::int64_t pe = 1;
    for (int i = 0; i < e; ++i) {
      if (__builtin_mul_overflow(pe, p, &pe)) return false;
      if (pe > n) return false;
    }
  }
  return true;
}

}  // namespace furst::arith
