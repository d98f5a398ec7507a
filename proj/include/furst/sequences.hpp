#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "furst/arith.hpp"
#include "furst/errors.hpp"
#include "furst/qnorm.hpp"
#include "furst/structured.hpp"

namespace furst::sequences {

enum class Family { Primes, Factorials, Primorials, LcmTowers };

inline structured::StructuredInteger family_term(Family family, std::int64_t n) {
  switch (family) {
    case Family::Primes: return structured::StructuredInteger::prime_index(n);
    case Family::Factorials: return structured::StructuredInteger::factorial(n);
    case Family::Primorials: return structured::StructuredInteger::primorial(n);
    case Family::LcmTowers: return structured::StructuredInteger::lcm(n);
  }
  throw internal_error("family_term: unhandled family");
}

// Per-term norms of the first count terms, truncation tail at most tol each.
inline std::vector<qnorm::NormValue> norm_trace(const arith::PrimeTable& table,
                                                Family family, qnorm::QParam q,
                                                std::int64_t count, double tol) {
  if (count < 1) throw domain_error("norm_trace: count must be >= 1");
  std::vector<qnorm::NormValue> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t n = 1; n <= count; ++n)
    out.push_back(qnorm::qnorm_structured(table, family_term(family, n), q, tol));
  return out;
}

// A finite window can certify a divisibility/non-divisibility pattern only up
// to its end: first_good_index is the smallest 1-based index from which the
// predicate holds through the window, or empty when even the last term fails.
enum class Verdict { CONVERGES_TO_ZERO, PRIME_FACTOR_INCREASING, UNDECIDED };

struct Certificate {
  std::int64_t key = 0;
  std::optional<std::int64_t> first_good_index;
};

struct ConvergenceReport {
  std::int64_t window_length = 0;
  std::vector<Certificate> certificates;
  Verdict verdict = Verdict::UNDECIDED;
};

namespace detail {

// Smallest index i with pred(j) true for all j in [i, len], as 1-based
// indices; empty when pred(len) is false.
template <typename Pred>
std::optional<std::int64_t> stable_suffix_start(std::int64_t len, Pred&& pred) {
  std::optional<std::int64_t> start;
  for (std::int64_t i = len; i >= 1; --i) {
    if (!pred(i)) break;
    start = i;
  }
  return start;
}

}  // namespace detail

// Prime factor increasing: every prime p <= prime_bound eventually stops
// dividing the terms. Certified per prime by the first index after which no
// window term is divisible by p.
inline ConvergenceReport prime_factor_increasing_report(
    const arith::PrimeTable& table,
    const std::vector<structured::StructuredInteger>& window,
    std::int64_t prime_bound) {
  if (window.empty()) throw domain_error("prime_factor_increasing_report: empty window");
  ConvergenceReport report;
  report.window_length = static_cast<std::int64_t>(window.size());
  bool all = true;
  for (std::int64_t p : table.primes_up_to(prime_bound)) {
    auto idx = detail::stable_suffix_start(report.window_length, [&](std::int64_t i) {
      return !structured::divides(table, p, window[static_cast<std::size_t>(i - 1)]);
    });
    all = all && idx.has_value();
    report.certificates.push_back({p, idx});
  }
  report.verdict = all ? Verdict::PRIME_FACTOR_INCREASING : Verdict::UNDECIDED;
  return report;
}

// Norm convergence to zero: every modulus k <= k_bound eventually divides all
// terms. nu(k) is the first index after which all window terms are divisible.
inline ConvergenceReport divisibility_convergence_report(
    const arith::PrimeTable& table,
    const std::vector<structured::StructuredInteger>& window, std::int64_t k_bound) {
  if (window.empty()) throw domain_error("divisibility_convergence_report: empty window");
  ConvergenceReport report;
  report.window_length = static_cast<std::int64_t>(window.size());
  bool all = true;
  for (std::int64_t k = 1; k <= k_bound; ++k) {
    auto idx = detail::stable_suffix_start(report.window_length, [&](std::int64_t i) {
      return structured::divides(table, k, window[static_cast<std::size_t>(i - 1)]);
    });
    all = all && idx.has_value();
    report.certificates.push_back({k, idx});
  }
  report.verdict = all ? Verdict::CONVERGES_TO_ZERO : Verdict::UNDECIDED;
  return report;
}

// For a window converging to zero in norm, the shifted window (a_n + 1) must
// approach the diameter: k | a_n kills every k-term in the norm of a_n, and
// k | a_n + 1 requires a_n = k - 1 (mod k), so the shifted norms lose their
// subtracted terms one modulus at a time. Returns both norm traces.
struct ShiftTraces {
  std::vector<qnorm::NormValue> base;
  std::vector<qnorm::NormValue> shifted;
};

inline ShiftTraces furstenberg_shift_check(
    const arith::PrimeTable& table,
    const std::vector<structured::StructuredInteger>& window, qnorm::QParam q,
    double tol) {
  if (window.empty()) throw domain_error("furstenberg_shift_check: empty window");
  if (!(tol > 0.0)) throw domain_error("furstenberg_shift_check: tol must be positive");
  double k_real = std::ceil(std::log(1.0 / (tol * (q.q - 1.0))) / std::log(q.q));
  if (k_real > 1e9) throw capacity_error("furstenberg_shift_check: truncation too large");
  std::int64_t cutoff = std::max<std::int64_t>(2, static_cast<std::int64_t>(k_real));
  double diam = qnorm::diameter(q);

  ShiftTraces traces;
  for (const auto& x : window) {
    traces.base.push_back(qnorm::qnorm_structured(table, x, q, tol));
    double s = 0.0;
    for (std::int64_t k = 2; k <= cutoff; ++k) {
      // k | x + 1 iff x mod k == k - 1
      if (structured::mod_value(table, x, k) == k - 1) s += qnorm::inv_power(q.q, k);
    }
    double tail = qnorm::inv_power(q.q, cutoff) / (q.q - 1.0);
    traces.shifted.push_back({diam - s, tail});
  }
  return traces;
}

// Smallest prime p <= search_bound with p = a (mod b); empty when none is
// found. Dirichlet guarantees hits for gcd(a, b) = 1 once the bound is large.
inline std::optional<std::int64_t> find_prime_in_progression(
    const arith::PrimeTable& table, std::int64_t a, std::int64_t b,
    std::int64_t search_bound) {
  if (b < 1) throw domain_error("find_prime_in_progression: b must be >= 1");
  std::int64_t residue = ((a % b) + b) % b;
  for (std::int64_t p : table.primes_up_to(search_bound))
    if (p % b == residue) return p;
  return std::nullopt;
}

// Primes p = 3 (mod 4) have 4 not dividing p - 1, so the forced-divisor
// lemma caps how small ||p - 1||_q can get: it must be >= q^{-4}.
inline bool mod4_obstruction_check(const arith::PrimeTable& table,
                                   std::int64_t prime_bound, qnorm::QParam q) {
  for (std::int64_t p : table.primes_up_to(prime_bound)) {
    if (p % 4 != 3) continue;
    if (!(qnorm::qnorm(table, p - 1, q).value >= qnorm::inv_power(q.q, 4))) return false;
  }
  return true;
}

}  // namespace furst::sequences
