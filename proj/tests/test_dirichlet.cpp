#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include "furst/aggregate.hpp"
#include "furst/dirichlet.hpp"
#include "furst/means.hpp"
#include "furst/qnorm.hpp"

namespace {

using furst::arith::PrimeTable;
using furst::qnorm::QParam;

const PrimeTable& table() {
  static PrimeTable t(2'000'000);
  return t;
}

// Oracle: the Q_q(s) partial sum term by term from single-norm evaluations,
// bypassing the sieve batch entirely.
double q_series_brute(double qv, double s, std::int64_t n) {
  double acc = 0.0;
  for (std::int64_t m = n; m >= 1; --m)
    acc += furst::qnorm::qnorm(table(), m, QParam{qv}).value *
           std::pow(static_cast<double>(m), -s);
  return acc;
}

// Oracle: gamma_q by its definition sum_{i|n} mu(i) ||n/i||_q.
double gamma_inversion_brute(std::int64_t n, double qv) {
  double acc = 0.0;
  for (std::int64_t i : furst::arith::divisors(table(), n)) {
    int mu = furst::arith::moebius(table(), i);
    if (mu == 0) continue;
    acc += static_cast<double>(mu) *
           furst::qnorm::qnorm(table(), n / i, QParam{qv}).value;
  }
  return acc;
}

// Oracle: Xi partial sum from per-element xi values.
double xi_series_brute(double s, std::int64_t n) {
  double acc = 0.0;
  for (std::int64_t m = n; m >= 1; --m)
    acc += furst::aggregate::xi(table(), m).value *
           std::pow(static_cast<double>(m), -s);
  return acc;
}

// 30-digit references rounded to binary64.
constexpr double kQ22 = 0.68718678976628100146;
constexpr double kQ32 = 0.22007041570431734576;
constexpr double kOneMinusLi2Half = 0.41775947353498749410;
constexpr double kXiAt2 = 1.33064594698971158624;
constexpr double kXiAt3 = 1.09411336606823510949;
constexpr double kXiAt20 = 1.00000033884636712929;

}  // namespace

TEST_CASE("closed generating function matches references and the n=1 limit",
          "[dirichlet]") {
  CHECK(std::abs(furst::dirichlet::Q_closed(QParam{2.0}, 2.0) - kQ22) < 1e-12);
  CHECK(std::abs(furst::dirichlet::Q_closed(QParam{3.0}, 2.0) - kQ32) < 1e-12);
  // Large s: the series is dominated by its first term ||1||_q = diameter.
  CHECK(std::abs(furst::dirichlet::Q_closed(QParam{2.0}, 20.0) - 0.5) < 1e-5);
  CHECK(std::abs(furst::dirichlet::Q_closed(QParam{2.0}, 30.0) - 0.5) < 1e-8);
  CHECK_THROWS_AS(furst::dirichlet::Q_closed(QParam{2.0}, 1.0),
                  furst::domain_error);
}

TEST_CASE("partial sums reproduce the closed form within their tails",
          "[dirichlet]") {
  // First term alone.
  auto first = furst::dirichlet::Q_partial(QParam{2.0}, 2.0, 1);
  CHECK(first.value == 0.5);

  // Sieve route vs direct per-element route.
  for (double qv : {2.0, 3.0}) {
    auto p = furst::dirichlet::Q_partial(QParam{qv}, 2.0, 2000);
    CAPTURE(qv);
    CHECK(std::abs(p.value - q_series_brute(qv, 2.0, 2000)) < 1e-12);
  }

  for (double qv : {2.0, 3.0})
    for (double s : {1.5, 2.0, 3.0}) {
      auto p = furst::dirichlet::Q_partial(QParam{qv}, s, 100'000);
      double closed = furst::dirichlet::Q_closed(QParam{qv}, s);
      CAPTURE(qv, s, p.value, closed, p.tail_bound);
      CHECK(std::abs(p.value - closed) <= p.tail_bound + 1e-9);
      // The tail bound is not vacuous: it shrinks below the diameter.
      CHECK(p.tail_bound < 0.01);
    }
}

TEST_CASE("coefficient closed forms equal their inversion definition",
          "[dirichlet]") {
  CHECK(furst::dirichlet::gamma_q(1, QParam{2.0}) == 0.5);
  CHECK(furst::dirichlet::gamma_q(3, QParam{2.0}) == -0.125);
  CHECK(furst::dirichlet::gamma_q(12, QParam{2.0}) == -std::exp2(-12.0));
  CHECK(furst::dirichlet::gamma_q(1, QParam{3.0}) ==
        Catch::Approx(1.0 / 6.0).margin(1e-16));

  for (double qv : {2.0, 3.0}) {
    std::int64_t worst_n = 0;
    double worst = 0.0;
    for (std::int64_t n = 1; n <= 1000; ++n) {
      double diff = std::abs(furst::dirichlet::gamma_q(n, QParam{qv}) -
                             gamma_inversion_brute(n, qv));
      if (diff > worst) {
        worst = diff;
        worst_n = n;
      }
    }
    CAPTURE(qv, worst_n);
    CHECK(worst < 1e-12);
  }

  CHECK_THROWS_AS(furst::dirichlet::gamma_q(0, QParam{2.0}),
                  furst::domain_error);
}

TEST_CASE("coefficient series hits the polylog closed form and the mean limit",
          "[dirichlet]") {
  auto g21 = furst::dirichlet::gamma_series(QParam{2.0}, 1.0, 100);
  CHECK(std::abs(g21.value - (1.0 - std::log(2.0))) < 1e-12);

  for (double qv : {2.0, 3.0, 5.0}) {
    auto g = furst::dirichlet::gamma_series(QParam{qv}, 1.0, 100);
    CAPTURE(qv);
    CHECK(std::abs(g.value - furst::means::mean_limit(QParam{qv})) < 1e-12);
  }

  auto g22 = furst::dirichlet::gamma_series(QParam{2.0}, 2.0, 100);
  CHECK(std::abs(g22.value - kOneMinusLi2Half) < 1e-12);

  // Single-term sum is the first coefficient.
  for (double qv : {2.0, 3.0, 10.0})
    for (double s : {1.0, 2.0}) {
      auto g = furst::dirichlet::gamma_series(QParam{qv}, s, 1);
      CAPTURE(qv, s);
      CHECK(g.value == furst::dirichlet::gamma_q(1, QParam{qv}));
      CHECK(g.tail_bound >= 0.0);
    }

  CHECK_THROWS_AS(furst::dirichlet::gamma_series(QParam{2.0}, 0.5, 10),
                  furst::domain_error);
}

TEST_CASE("xi generating function: closed form vs batch partial sums",
          "[dirichlet]") {
  CHECK(std::abs(furst::dirichlet::Xi_closed(2.0) - kXiAt2) < 1e-12);
  CHECK(std::abs(furst::dirichlet::Xi_closed(3.0) - kXiAt3) < 1e-12);
  CHECK(std::abs(furst::dirichlet::Xi_closed(20.0) - kXiAt20) < 1e-13);
  CHECK(std::abs(furst::dirichlet::Xi_closed(20.0) - 1.0) < 1e-5);

  auto single = furst::dirichlet::Xi_partial(2.0, 1);
  CHECK(single.value == 1.0);

  // Batch kernel vs per-element xi.
  auto p500 = furst::dirichlet::Xi_partial(2.0, 500);
  CHECK(std::abs(p500.value - xi_series_brute(2.0, 500)) < 1e-12);

  for (double s : {2.0, 3.0}) {
    auto p = furst::dirichlet::Xi_partial(s, 100'000);
    double closed = furst::dirichlet::Xi_closed(s);
    CAPTURE(s, p.value, closed, p.tail_bound);
    CHECK(std::abs(p.value - closed) <= p.tail_bound + 1e-9);
  }

  auto p10k = furst::dirichlet::Xi_partial(3.0, 10'000);
  CHECK(std::abs(p10k.value - furst::dirichlet::Xi_closed(3.0)) <=
        p10k.tail_bound + 1e-9);
}

TEST_CASE("divisor-count Dirichlet square identity verifies where the tail exists",
          "[dirichlet]") {
  auto r3 = furst::dirichlet::dirichlet_square_check(100'000, 3.0);
  REQUIRE(r3.has_value());
  CHECK(*r3);
  auto r4 = furst::dirichlet::dirichlet_square_check(100'000, 4.0);
  REQUIRE(r4.has_value());
  CHECK(*r4);
  auto loose = furst::dirichlet::dirichlet_square_check(10, 3.0);
  REQUIRE(loose.has_value());
  CHECK(*loose);

  // The divisor bound d(n) <= n gives no convergent tail at s <= 2.
  CHECK_FALSE(furst::dirichlet::dirichlet_square_check(1000, 2.0).has_value());
  CHECK_FALSE(furst::dirichlet::dirichlet_square_check(1000, 1.5).has_value());
  CHECK_THROWS_AS(furst::dirichlet::dirichlet_square_check(1000, 1.0),
                  furst::domain_error);

  // The comparison is two-sided, not vacuous: the partial sum sits strictly
  // below zeta(s)^2 and within the stated tail of it.
  std::vector<std::int64_t> counts(10'000, 0);
  for (std::int64_t i = 1; i <= 10'000; ++i)
    for (std::int64_t j = i; j <= 10'000; j += i) ++counts[j - 1];
  double partial = 0.0;
  for (std::int64_t j = 10'000; j >= 1; --j)
    partial += static_cast<double>(counts[j - 1]) /
               (static_cast<double>(j) * static_cast<double>(j) *
                static_cast<double>(j));
  double z3 = furst::arith::zeta(3.0).value;
  double gap = z3 * z3 - partial;
  CHECK(gap > 0.0);
  CHECK(gap < std::pow(10'000.0, -1.0));
}
