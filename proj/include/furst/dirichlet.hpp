#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "furst/arith.hpp"
#include "furst/errors.hpp"
#include "furst/qnorm.hpp"
#include "furst/sieve.hpp"

namespace furst::dirichlet {

// Argument bundle for the generating functions: s > 1 for every closed form,
// s = 1 permitted only by gamma_series.
struct DirichletParams {
  double s = 2.0;
  double q = 2.0;
};

namespace detail {

inline void require_s_above_1(double s, const char* who) {
  if (!(s > 1.0)) throw domain_error(std::string(who) + ": requires s > 1");
}

inline double kahan_sum(const std::vector<double>& values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    double y = v - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace detail

// Q_q(s) = sum_{n>=1} ||n||_q / n^s = zeta(s) (1/(q-1) - Li(s, 1/q)).
inline double Q_closed(qnorm::QParam q, double s) {
  detail::require_s_above_1(s, "Q_closed");
  return arith::zeta(s).value *
         (1.0 / (q.q - 1.0) - arith::polylog(s, 1.0 / q.q).value);
}

// Defining partial sum over a sieve batch. The norm factor is at most the
// diameter, so the tail is bounded by (1/(q(q-1))) N^{1-s}/(s-1).
inline arith::SeriesEval Q_partial(qnorm::QParam q, double s, std::int64_t n) {
  detail::require_s_above_1(s, "Q_partial");
  if (n < 1) throw domain_error("Q_partial: n must be >= 1");
  sieve::SieveTable t = sieve::sieve_qnorms(q, n);
  std::vector<double> terms(t.values.size());
  for (std::size_t i = 0; i < terms.size(); ++i)
    terms[i] = t.values[i] * std::pow(static_cast<double>(i + 1), -s);
  double nd = static_cast<double>(n);
  double tail = qnorm::diameter(q) * std::pow(nd, 1.0 - s) / (s - 1.0);
  return {detail::kahan_sum(terms), tail, n};
}

// Moebius-inverted coefficients of Q_q: gamma_q(1) = 1/(q-1) - 1/q and
// gamma_q(n) = -q^{-n} for n > 1.
inline double gamma_q(std::int64_t n, qnorm::QParam q) {
  if (n < 1) throw domain_error("gamma_q: n must be >= 1");
  if (n == 1) return 1.0 / (q.q - 1.0) - 1.0 / q.q;
  return -qnorm::inv_power(q.q, n);
}

// Partial sum of sum_{n>=1} gamma_q(n)/n^s = 1/(q-1) - Li(s, 1/q). The n > 1
// coefficients form a geometric series, so the tail after N terms is below
// q^{-N}/((q-1) N^s). At s = 1 the value is the limit of the norm means.
inline arith::SeriesEval gamma_series(qnorm::QParam q, double s, std::int64_t n) {
  if (!(s >= 1.0)) throw domain_error("gamma_series: requires s >= 1");
  if (n < 1) throw domain_error("gamma_series: n must be >= 1");
  double sum = gamma_q(1, q);
  double qk = 1.0 / q.q;
  for (std::int64_t m = 2; m <= n; ++m) {
    qk /= q.q;
    if (qk == 0.0) break;
    sum -= qk / std::pow(static_cast<double>(m), s);
  }
  double nd = static_cast<double>(n);
  double tail =
      qnorm::inv_power(q.q, n) / ((q.q - 1.0) * std::pow(nd, s));
  return {sum, tail, n};
}

// Xi(s) = sum_{n>=1} xi(n)/n^s = zeta(s)(1 - sum_{n>=2} (zeta(n)-1) n^{-s}).
// The inner series decays like 2^{-n}: 64 terms exhaust binary64.
inline double Xi_closed(double s) {
  detail::require_s_above_1(s, "Xi_closed");
  double inner = 0.0;
  for (int n = 64; n >= 2; --n)
    inner += arith::zeta_minus_one(n) * std::pow(static_cast<double>(n), -s);
  return arith::zeta(s).value * (1.0 - inner);
}

// Defining partial sum via the batch xi kernel; 0 <= xi(n) <= 1 bounds the
// tail by N^{1-s}/(s-1).
inline arith::SeriesEval Xi_partial(double s, std::int64_t n) {
  detail::require_s_above_1(s, "Xi_partial");
  if (n < 1) throw domain_error("Xi_partial: n must be >= 1");
  auto weight = [](std::int64_t k) {
    return k <= 64 ? arith::zeta_minus_one(static_cast<int>(k))
                   : std::exp2(-static_cast<double>(k));
  };
  std::vector<double> xs = sieve::sieve_divisor_weights(weight, 1.0, n);
  for (std::size_t i = 0; i < xs.size(); ++i)
    xs[i] *= std::pow(static_cast<double>(i + 1), -s);
  double tail = std::pow(static_cast<double>(n), 1.0 - s) / (s - 1.0);
  return {detail::kahan_sum(xs), tail, n};
}

// Checks zeta(s)^2 = sum d(n)/n^s on a partial sum. The divisor bound
// d(n) <= n gives a usable tail N^{2-s}/(s-2) only for s > 2; below that the
// check cannot run and the result is empty.
inline std::optional<bool> dirichlet_square_check(std::int64_t n, double s) {
  detail::require_s_above_1(s, "dirichlet_square_check");
  if (n < 1) throw domain_error("dirichlet_square_check: n must be >= 1");
  if (s <= 2.0) return std::nullopt;

  std::vector<std::int64_t> counts(static_cast<std::size_t>(n), 0);
  for (std::int64_t i = 1; i <= n; ++i)
    for (std::int64_t j = i; j <= n; j += i) ++counts[static_cast<std::size_t>(j - 1)];
  std::vector<double> terms(counts.size());
  for (std::size_t i = 0; i < terms.size(); ++i)
    terms[i] = static_cast<double>(counts[i]) *
               std::pow(static_cast<double>(i + 1), -s);
  double partial = detail::kahan_sum(terms);
  double tail = std::pow(static_cast<double>(n), 2.0 - s) / (s - 2.0);

  arith::SeriesEval z = arith::zeta(s);
  double square = z.value * z.value;
  double square_tol = 2.0 * std::abs(z.value) * z.tail_bound + 1e-12;
  return square >= partial - square_tol && square <= partial + tail + square_tol;
}

}  // namespace furst::dirichlet
