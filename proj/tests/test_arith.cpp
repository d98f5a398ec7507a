#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "furst/arith.hpp"

namespace {

using furst::arith::PrimeTable;
using furst::arith::SeriesEval;

const PrimeTable& table() {
  static PrimeTable t(2'000'000);
  return t;
}

// Oracle: divisors by trial division, no factorization involved.
std::vector<std::int64_t> divisors_brute(std::int64_t n) {
  std::int64_t m = n < 0 ? -n : n;
  std::vector<std::int64_t> out;
  for (std::int64_t k = 1; k <= m; ++k)
    if (m % k == 0) out.push_back(k);
  return out;
}

// Oracle: moebius from trial-division factorization.
int moebius_brute(std::int64_t n) {
  int count = 0;
  std::int64_t m = n;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    m /= p;
    if (m % p == 0) return 0;
    ++count;
  }
  if (m > 1) ++count;
  return count % 2 == 0 ? 1 : -1;
}

// Oracle: direct summation of n^{-s} with integral bracketing of the tail,
// midpoint correction, half-width as the bound. Usable for s >= 1.5 at
// moderate tolerance; the shipped zeta must agree within combined bounds.
SeriesEval zeta_direct_midpoint(double s, std::int64_t n_terms) {
  double sum = 0.0;
  for (std::int64_t k = n_terms; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
  double hi = std::pow(static_cast<double>(n_terms), 1.0 - s) / (s - 1.0);
  double lo = std::pow(static_cast<double>(n_terms + 1), 1.0 - s) / (s - 1.0);
  return {sum + 0.5 * (lo + hi), 0.5 * (hi - lo), n_terms};
}

// Oracle: n! mod k by modular reduction, no factorization involved.
std::int64_t factorial_mod(std::int64_t n, std::int64_t k) {
  std::int64_t r = 1 % k;
  for (std::int64_t i = 2; i <= n; ++i) r = static_cast<std::int64_t>((__int128)r * i % k);
  return r;
}

}  // namespace

TEST_CASE("divisors and divisor_count match trial division", "[arith]") {
  for (std::int64_t n : {1, 2, 7, 12, 30, 360, 1024, 9973, 83160}) {
    CAPTURE(n);
    REQUIRE(furst::arith::divisors(table(), n) == divisors_brute(n));
    REQUIRE(furst::arith::divisor_count(table(), n) ==
            static_cast<std::int64_t>(divisors_brute(n).size()));
  }
  REQUIRE(furst::arith::divisors(table(), 12) ==
          std::vector<std::int64_t>{1, 2, 3, 4, 6, 12});
  REQUIRE(furst::arith::divisors(table(), 1) == std::vector<std::int64_t>{1});
  REQUIRE(furst::arith::divisors(table(), -7) == std::vector<std::int64_t>{1, 7});
  REQUIRE(furst::arith::divisor_count(table(), 1) == 1);
  REQUIRE(furst::arith::divisor_count(table(), 97) == 2);
  REQUIRE(furst::arith::divisor_count(table(), 12) == 6);
  REQUIRE_THROWS_AS(furst::arith::divisors(table(), 0), furst::domain_error);
  REQUIRE_THROWS_AS(furst::arith::divisors(table(), 3'000'000), furst::capacity_error);
}

TEST_CASE("prime table invariants and prime listing", "[arith]") {
  const auto& t = table();
  for (std::int64_t n = 2; n <= 20'000; ++n) {
    std::int64_t p = t.spf(n);
    REQUIRE(t.is_prime(p));
    REQUIRE(n % p == 0);
    REQUIRE((p * p <= n || p == n));
  }
  REQUIRE(t.nth_prime(1) == 2);
  REQUIRE(t.nth_prime(4) == 7);
  REQUIRE(t.nth_prime(11) == 31);
  auto primes = t.primes_up_to(100);
  REQUIRE(primes.size() == 25);
  REQUIRE(primes.front() == 2);
  REQUIRE(primes.back() == 97);
  REQUIRE_THROWS_AS(t.nth_prime(10'000'000), furst::capacity_error);
}

TEST_CASE("factorization reconstructs and sorts ascending", "[arith]") {
  for (std::int64_t n = 1; n <= 5'000; ++n) {
    auto f = furst::arith::factorize(table(), n);
    REQUIRE(f.reconstruct() == n);
    REQUIRE(std::is_sorted(f.factors.begin(), f.factors.end(),
                           [](auto a, auto b) { return a.first < b.first; }));
  }
}

TEST_CASE("moebius three-case definition and divisor-sum property", "[arith]") {
  REQUIRE(furst::arith::moebius(table(), 1) == 1);
  REQUIRE(furst::arith::moebius(table(), 12) == 0);
  REQUIRE(furst::arith::moebius(table(), 30) == -1);
  for (std::int64_t n = 1; n <= 2'000; ++n)
    REQUIRE(furst::arith::moebius(table(), n) == moebius_brute(n));
  // sum over divisors of moebius is the unit indicator
  for (std::int64_t n = 1; n <= 10'000; ++n) {
    std::int64_t s = 0;
    for (std::int64_t k : furst::arith::divisors(table(), n))
      s += furst::arith::moebius(table(), k);
    REQUIRE(s == (n == 1 ? 1 : 0));
  }
  REQUIRE_THROWS_AS(furst::arith::moebius(table(), 0), furst::domain_error);
}

TEST_CASE("zeta agrees with the direct-sum midpoint oracle", "[arith]") {
  for (double s : {1.5, 2.0, 3.0, 4.0, 8.0}) {
    CAPTURE(s);
    SeriesEval ours = furst::arith::zeta(s);
    SeriesEval oracle = zeta_direct_midpoint(s, 200'000);
    REQUIRE(std::abs(ours.value - oracle.value) <=
            ours.tail_bound + oracle.tail_bound + 1e-14);
  }
}

TEST_CASE("zeta reference values and tail bounds", "[arith]") {
  // References computed to 30 significant digits with independent
  // arbitrary-precision software.
  struct Ref {
    double s;
    double value;
  };
  for (auto [s, v] : {Ref{2.0, 1.64493406684822643647},
                      Ref{3.0, 1.20205690315959428540},
                      Ref{4.0, 1.08232323371113819152},
                      Ref{6.0, 1.01734306198444913971},
                      Ref{12.0, 1.00024608655330804830},
                      Ref{1.1, 10.5844484649508098264}}) {
    CAPTURE(s);
    SeriesEval z = furst::arith::zeta(s);
    REQUIRE(z.value == Catch::Approx(v).epsilon(1e-14));
    REQUIRE(z.tail_bound >= 0.0);
    REQUIRE(v >= z.value - 1e-14);
    REQUIRE(v <= z.value + z.tail_bound + 1e-14);
  }
  REQUIRE(furst::arith::zeta(1.1).tail_bound < 1e-12);
  REQUIRE_THROWS_AS(furst::arith::zeta(1.0), furst::domain_error);
  REQUIRE_THROWS_AS(furst::arith::zeta(0.5), furst::domain_error);
}

TEST_CASE("zeta decreases along an s grid", "[arith]") {
  double prev = std::numeric_limits<double>::infinity();
  for (double s : {1.1, 1.5, 2.0, 3.0, 4.0, 8.0}) {
    double v = furst::arith::zeta(s).value;
    REQUIRE(v < prev);
    prev = v;
  }
}

TEST_CASE("zeta_minus_one is accurate into the sub-ulp-of-1 range", "[arith]") {
  REQUIRE(furst::arith::zeta_minus_one(2) ==
          Catch::Approx(0.64493406684822643647).epsilon(1e-13));
  REQUIRE(furst::arith::zeta_minus_one(12) ==
          Catch::Approx(0.00024608655330804830).epsilon(1e-13));
  // direct check at k = 20: 2^-20 + 3^-20 + 4^-20 dominates
  double direct = 0.0;
  for (int n = 40; n >= 2; --n) direct += std::pow(n, -20.0);
  REQUIRE(furst::arith::zeta_minus_one(20) == Catch::Approx(direct).epsilon(1e-15));
  REQUIRE(furst::arith::zeta_minus_one(100) == Catch::Approx(std::exp2(-100.0)).epsilon(1e-9));
  // identity: sum over k >= 2 of (zeta(k) - 1) telescopes to exactly 1
  double sum = 0.0;
  for (int k = 200; k >= 2; --k) sum += furst::arith::zeta_minus_one(k);
  REQUIRE(sum == Catch::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("polylog partial sums and closed-form anchors", "[arith]") {
  using furst::arith::polylog;
  REQUIRE(polylog(1.0, 0.5, 1e-15).value ==
          Catch::Approx(std::numbers::ln2).epsilon(1e-13));
  REQUIRE(polylog(2.0, 0.0).value == 0.0);
  // Li(2, 1/2), Li(2, 1/3): 30-digit references
  REQUIRE(polylog(2.0, 0.5, 1e-15).value ==
          Catch::Approx(0.58224052646501250590).epsilon(1e-13));
  REQUIRE(polylog(2.0, 1.0 / 3.0, 1e-15).value ==
          Catch::Approx(0.36621322997706348762).epsilon(1e-13));
  // s = 1 agrees with ln(1/(1-z)) on a grid, including negative z
  for (double z : {-0.9, -0.5, -0.1, 0.1, 0.5, 0.75, 0.9}) {
    CAPTURE(z);
    SeriesEval li = polylog(1.0, z);
    REQUIRE(li.value == Catch::Approx(std::log(1.0 / (1.0 - z))).margin(li.tail_bound + 1e-13));
  }
  // tail bound honest: doubling terms moves the value by less than the bound
  SeriesEval coarse = polylog(2.0, 0.5, 1e-6);
  SeriesEval fine = polylog(2.0, 0.5, 1e-15);
  REQUIRE(std::abs(coarse.value - fine.value) <= coarse.tail_bound);
  REQUIRE_THROWS_AS(polylog(0.5, 0.5), furst::domain_error);
  REQUIRE_THROWS_AS(polylog(2.0, 1.0), furst::domain_error);
  REQUIRE_THROWS_AS(polylog(2.0, -1.5), furst::domain_error);
}

TEST_CASE("divides_factorial matches the modular-reduction oracle", "[arith]") {
  for (std::int64_t n = 1; n <= 20; ++n)
    for (std::int64_t k = 1; k <= 1'000'000; k += (k < 100 ? 1 : 97))
      if (furst::arith::divides_factorial(table(), k, n) != (factorial_mod(n, k) == 0)) {
        CAPTURE(n, k);
        REQUIRE(false);
      }
  // dense strip where the oracle is cheap
  for (std::int64_t n = 1; n <= 12; ++n)
    for (std::int64_t k = 1; k <= 5'000; ++k) {
      CAPTURE(n, k);
      REQUIRE(furst::arith::divides_factorial(table(), k, n) == (factorial_mod(n, k) == 0));
    }
  REQUIRE(furst::arith::divides_factorial(table(), 10, 5));
  REQUIRE_FALSE(furst::arith::divides_factorial(table(), 7, 5));
  REQUIRE(furst::arith::divides_factorial(table(), 16, 6));
}

TEST_CASE("divides_primorial and divides_lcm match direct construction", "[arith]") {
  // direct products fit in 64 bits for n <= 12
  std::int64_t primorial = 1;
  std::vector<std::int64_t> primorials;  // primorials[n-1] = p_n#
  for (std::int64_t i = 1; i <= 12; ++i) {
    primorial *= table().nth_prime(i);
    primorials.push_back(primorial);
  }
  auto lcm_direct = [](std::int64_t n) {
    std::int64_t l = 1;
    for (std::int64_t i = 2; i <= n; ++i) l = std::lcm(l, i);
    return l;
  };
  for (std::int64_t n = 1; n <= 12; ++n) {
    std::int64_t l = lcm_direct(n);
    for (std::int64_t k = 1; k <= 3'000; ++k) {
      CAPTURE(n, k);
      REQUIRE(furst::arith::divides_primorial(table(), k, n) == (primorials[n - 1] % k == 0));
      REQUIRE(furst::arith::divides_lcm(table(), k, n) == (l % k == 0));
    }
  }
  REQUIRE(furst::arith::divides_primorial(table(), 6, 3));
  REQUIRE_FALSE(furst::arith::divides_primorial(table(), 4, 3));
  REQUIRE_FALSE(furst::arith::divides_primorial(table(), 7, 3));
  REQUIRE(furst::arith::divides_lcm(table(), 8, 10));
  REQUIRE_FALSE(furst::arith::divides_lcm(table(), 16, 10));
  REQUIRE(furst::arith::divides_lcm(table(), 9, 10));
}
