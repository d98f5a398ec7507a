#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "furst/aggregate.hpp"
#include "furst/arith.hpp"
#include "furst/dirichlet.hpp"
#include "furst/errors.hpp"
#include "furst/means.hpp"
#include "furst/qnorm.hpp"
#include "furst/sequences.hpp"
#include "furst/sieve.hpp"
#include "furst/structured.hpp"

namespace furst::verify {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace detail {

inline std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

inline Check bounded(const std::string& name, double observed, double limit) {
  return {name, std::abs(observed) <= limit,
          "|" + num(observed) + "| vs limit " + num(limit)};
}

inline Check counted(const std::string& name, std::int64_t violations,
                     const std::string& window) {
  return {name, violations == 0,
          std::to_string(violations) + " violations on " + window};
}

}  // namespace detail

inline std::vector<Check> metric_suite(const arith::PrimeTable& table) {
  std::vector<Check> out;
  qnorm::QParam q2{2.0};

  {
    const double expect[] = {0.5, 0.25, 0.375, 0.1875, 0.46875, 0.109375, 0.4921875};
    double worst = 0.0;
    for (int n = 1; n <= 7; ++n)
      worst = std::max(worst,
                       std::abs(qnorm::qnorm(table, n, q2).value - expect[n - 1]));
    worst = std::max(worst, std::abs(qnorm::qnorm(table, 0, q2).value));
    worst = std::max(worst, std::abs(qnorm::metric(table, 7, 5, q2).value - 0.25));
    worst = std::max(worst, std::abs(qnorm::metric(table, 12, 11, q2).value - 0.5));
    out.push_back(detail::bounded("metric.closed_form_anchors", worst, 0.0));
  }

  {
    // Closed form vs the defining non-divisor series, truncated at k = 200.
    double worst = 0.0;
    for (double qv : {2.0, 3.0}) {
      qnorm::QParam q{qv};
      for (std::int64_t n = -60; n <= 60; ++n) {
        if (n == 0) continue;
        std::int64_t a = n < 0 ? -n : n;
        double series = 0.0;
        for (std::int64_t k = 200; k >= 2; --k)
          if (a % k != 0) series += qnorm::inv_power(qv, k);
        double tail = qnorm::inv_power(qv, 200) / (qv - 1.0);
        worst = std::max(worst,
                         std::abs(qnorm::qnorm(table, n, q).value - series) - tail);
      }
    }
    out.push_back({"metric.series_agreement", worst <= 1e-15,
                   "worst closed-vs-series gap beyond tail " + detail::num(worst)});
  }

  {
    std::int64_t violations = 0;
    for (std::int64_t m = -40; m <= 40; ++m)
      for (std::int64_t n = -40; n <= 40; ++n)
        if (qnorm::qnorm(table, m + n, q2).value >
            qnorm::qnorm(table, m, q2).value + qnorm::qnorm(table, n, q2).value +
                1e-15)
          ++violations;
    out.push_back(detail::counted("metric.triangle_inequality", violations,
                                  "[-40,40]^2 at q=2"));
  }

  {
    std::int64_t violations = 0;
    for (double qv : {2.0, 3.0}) {
      sieve::SieveTable t = sieve::sieve_qnorms(qnorm::QParam{qv}, 2000);
      for (std::int64_t a = 1; a <= 2000; ++a)
        for (std::int64_t n = 1; n <= 30; ++n)
          if (t.at(a) < qnorm::inv_power(qv, n) && a % n != 0) ++violations;
    }
    out.push_back(detail::counted("metric.forced_divisor_soundness", violations,
                                  "a<=2000, n<=30, q in {2,3}"));
  }

  {
    std::int64_t violations = 0;
    for (double qv : {2.0, 3.0}) {
      qnorm::QParam q{qv};
      sieve::SieveTable t = sieve::sieve_qnorms(q, 20'000);
      for (std::int64_t b = 1; b <= 12; ++b) {
        double r = qnorm::progression_radius(b, q);
        for (std::int64_t v = 1; v <= 20'000; ++v)
          if (t.at(v) < r && v % b != 0) ++violations;
      }
      for (double r : {0.3, 0.1}) {
        std::int64_t mod = qnorm::ball_cover_modulus(r, q);
        for (std::int64_t tmul = -100; tmul <= 100; ++tmul)
          if (!(qnorm::qnorm(table, mod * tmul, q).value < r)) ++violations;
      }
    }
    out.push_back(detail::counted("metric.topology_witnesses", violations,
                                  "progressions b<=12 |v|<=2e4; balls |t|<=100"));
  }

  return out;
}

inline std::vector<Check> sieve_suite(const arith::PrimeTable& table,
                                      std::int64_t n_scale) {
  std::vector<Check> out;

  {
    double worst = 0.0;
    std::int64_t n = std::min<std::int64_t>(10'000, n_scale);
    for (double qv : {1.5, 2.0, 3.0}) {
      qnorm::QParam q{qv};
      sieve::SieveTable t = sieve::sieve_qnorms(q, n);
      for (std::int64_t m = 1; m <= n; ++m)
        worst = std::max(worst, std::abs(t.at(m) - qnorm::qnorm(table, m, q).value));
    }
    out.push_back(detail::bounded("sieve.closed_form_agreement", worst, 1e-12));
  }

  {
    sieve::SieveTable t = sieve::sieve_qnorms(qnorm::QParam{2.0}, n_scale);
    std::int64_t violations = 0;
    for (double v : t.values)
      if (!(v >= 0.0 && v <= 0.5)) ++violations;
    out.push_back(detail::counted("sieve.value_bounds", violations,
                                  "n<=" + std::to_string(n_scale) + ", q=2"));
  }

  {
    // Generalized kernel vs direct divisor sums for an unrelated weight.
    auto weight = [](std::int64_t k) {
      return 1.0 / (static_cast<double>(k) * static_cast<double>(k));
    };
    std::vector<double> batch = sieve::sieve_divisor_weights(weight, 2.0, 500);
    double worst = 0.0;
    for (std::int64_t m = 1; m <= 500; ++m) {
      double direct = 2.0;
      for (std::int64_t k = 2; k <= m; ++k)
        if (m % k == 0) direct -= weight(k);
      worst = std::max(worst, std::abs(batch[static_cast<std::size_t>(m - 1)] - direct));
    }
    out.push_back(detail::bounded("sieve.generic_kernel_agreement", worst, 5e-14));
  }

  return out;
}

inline std::vector<Check> means_suite(std::int64_t n_scale) {
  std::vector<Check> out;
  double n = static_cast<double>(n_scale);

  sieve::SieveTable t2 = sieve::sieve_qnorms(qnorm::QParam{2.0}, n_scale);
  sieve::SieveTable t3 = sieve::sieve_qnorms(qnorm::QParam{3.0}, n_scale);

  out.push_back(detail::bounded(
      "means.limit_q2",
      means::mean_prefix(t2) - means::mean_limit(qnorm::QParam{2.0}), 2.0 / n));
  out.push_back(detail::bounded(
      "means.limit_q3",
      means::mean_prefix(t3) - means::mean_limit(qnorm::QParam{3.0}), 2.0 / n));

  {
    std::int64_t violations = 0;
    for (std::int64_t m = 2; m <= n_scale; ++m) {
      double v = t2.at(m);
      if (m % 2 == 1 && !(v > 1.0 / 3.0)) ++violations;
      if (m % 2 == 0 && !(v <= 0.25)) ++violations;
    }
    out.push_back(detail::counted("means.parity_gap", violations,
                                  "n in [2," + std::to_string(n_scale) + "], q=2"));
  }

  {
    auto bins = means::histogram(t2, 40);
    std::int64_t occupied = 0;
    for (std::size_t b = 21; b <= 25; ++b) occupied += bins[b].count;
    out.push_back(detail::counted("means.histogram_gap_bins", occupied,
                                  "bins covering (0.2625,0.325)"));
  }

  {
    double lambda = means::lambda_root(1e-12);
    double g = lambda / (lambda - 1.0) -
               (lambda + 1.0) * std::log(lambda / (lambda - 1.0));
    bool window = lambda >= 1.75 && lambda < 1.76;
    double identity = means::mean_limit(qnorm::QParam{lambda}) -
                      1.0 / (lambda * lambda - 1.0);
    bool ok = std::abs(g) < 1e-12 && window && std::abs(identity) < 1e-10;
    out.push_back({"means.lambda_root", ok,
                   "root " + detail::num(lambda) + ", residual " + detail::num(g)});
  }

  {
    auto p2 = means::gap_profile(qnorm::QParam{2.0});
    auto p15 = means::gap_profile(qnorm::QParam{1.5});
    auto p17 = means::gap_profile(qnorm::QParam{1.7});
    bool ok = p2.gap_exists && p2.mean_in_gap && p2.odd_lower == 1.0 / 3.0 &&
              p2.even_upper == 0.25 && !p15.gap_exists && p17.gap_exists &&
              !p17.mean_in_gap;
    out.push_back({"means.gap_profiles", ok, "q in {2, 1.5, 1.7}"});
  }

  return out;
}

inline std::vector<Check> sequences_suite(const arith::PrimeTable& table) {
  std::vector<Check> out;

  auto window_of = [](sequences::Family f, std::int64_t len) {
    std::vector<structured::StructuredInteger> w;
    for (std::int64_t i = 1; i <= len; ++i)
      w.push_back(sequences::family_term(f, i));
    return w;
  };

  for (auto [f, name] : {std::pair{sequences::Family::Factorials, "factorial"},
                         std::pair{sequences::Family::LcmTowers, "lcm"}}) {
    auto report =
        sequences::divisibility_convergence_report(table, window_of(f, 12), 12);
    bool ok = report.verdict == sequences::Verdict::CONVERGES_TO_ZERO;
    for (const auto& c : report.certificates)
      ok = ok && c.first_good_index.has_value() && *c.first_good_index <= c.key;
    out.push_back({std::string("sequences.") + name + "_certificates", ok,
                   "k<=12 with nu(k)<=k"});
  }

  {
    auto report = sequences::divisibility_convergence_report(
        table, window_of(sequences::Family::Primorials, 11), 4);
    bool ok = report.verdict == sequences::Verdict::UNDECIDED &&
              !report.certificates[3].first_good_index.has_value();
    out.push_back({"sequences.primorial_obstruction", ok, "k=4 never divides"});
  }

  out.push_back({"sequences.mod4_obstruction",
                 sequences::mod4_obstruction_check(table, 1000, qnorm::QParam{2.0}),
                 "primes p=3 mod 4, p<=1000, q=2"});

  {
    std::int64_t bound = std::min<std::int64_t>(1'000'000, table.limit());
    std::int64_t failures = 0;
    for (std::int64_t b = 1; b <= 50; ++b) {
      auto p = sequences::find_prime_in_progression(table, 1, b, bound);
      if (!p || *p % b != 1 % b || !table.is_prime(*p)) ++failures;
    }
    out.push_back(detail::counted("sequences.prime_progressions", failures,
                                  "b<=50, bound " + std::to_string(bound)));
  }

  {
    auto traces = sequences::furstenberg_shift_check(
        table, window_of(sequences::Family::Factorials, 15), qnorm::QParam{2.0},
        1e-12);
    double last = traces.shifted.back().value;
    bool ok = std::abs(0.5 - last) <= std::exp2(-15.0) + 1e-12;
    out.push_back({"sequences.shift_to_diameter", ok,
                   "||15!+1|| = " + detail::num(last)});
  }

  return out;
}

inline std::vector<Check> aggregate_suite(const arith::PrimeTable& table,
                                          std::int64_t n_scale) {
  std::vector<Check> out;

  {
    double worst = std::abs(aggregate::xi(table, 1).value - 1.0);
    worst = std::max(worst, std::abs(aggregate::xi(table, 0).value));
    worst = std::max(worst,
                     std::abs(aggregate::xi(table, 2).value - 0.35506593315177356));
    worst = std::max(worst,
                     std::abs(aggregate::xi(table, 4).value - 0.27274269944063537));
    worst = std::max(worst,
                     std::abs(aggregate::xi(table, 6).value - 0.13566596800773014));
    out.push_back(detail::bounded("aggregate.xi_anchors", worst, 1e-10));
  }

  {
    double worst = 0.0;
    for (std::int64_t p : table.primes_up_to(97)) {
      double z = p <= 64 ? 1.0 + arith::zeta_minus_one(static_cast<int>(p))
                         : 1.0 + std::exp2(-static_cast<double>(p));
      worst = std::max(worst, std::abs(aggregate::xi(table, p).value + z - 2.0));
    }
    out.push_back(detail::bounded("aggregate.prime_identity", worst, 1e-10));
  }

  {
    double worst = 0.0;
    for (std::int64_t n : {2, 6, 12})
      worst = std::max(worst,
                       std::abs(aggregate::zeta_from_inversion(table, n) -
                                arith::zeta(static_cast<double>(n)).value));
    out.push_back(detail::bounded("aggregate.moebius_inversion", worst, 1e-10));
  }

  {
    double B = aggregate::equivalence_constant_B();
    std::int64_t violations = 0;
    for (std::int64_t d = -400; d <= 400; ++d) {
      double d2 = qnorm::qnorm(table, d, qnorm::QParam{2.0}).value;
      double d4 = qnorm::qnorm(table, d, qnorm::QParam{4.0}).value;
      double dx = aggregate::xi(table, d).value;
      double di = aggregate::integral_norm(table, d).value;
      if (!(d2 <= dx + 1e-12 && dx <= B * d2 + 1e-12 && d4 <= di + 1e-12 &&
            di <= 2.0 * d2 + 1e-12))
        ++violations;
    }
    out.push_back(detail::counted("aggregate.metric_sandwiches", violations,
                                  "differences [-400,400], B=" + detail::num(B)));
  }

  {
    std::int64_t violations = 0;
    for (std::int64_t m = -9600; m <= 9600; m += 160)
      for (std::int64_t n = -9600; n <= 9600; n += 160) {
        double xs = aggregate::xi(table, m).value + aggregate::xi(table, n).value;
        double is = aggregate::integral_norm(table, m).value +
                    aggregate::integral_norm(table, n).value;
        if (aggregate::xi(table, m + n).value > xs + 1e-11 ||
            aggregate::integral_norm(table, m + n).value > is + 1e-11)
          ++violations;
      }
    out.push_back(detail::counted("aggregate.subadditivity", violations,
                                  "strided grid in [-9600,9600]^2"));
  }

  {
    double n = static_cast<double>(n_scale);
    double tol = std::max(1e-5, 10.0 / n);
    double gamma_gap = aggregate::xi_mean(n_scale) - 0.5772156649015329;
    double log4_gap = aggregate::integral_mean(n_scale) - 0.3862943611198906;
    bool ok = std::abs(gamma_gap) <= tol && std::abs(log4_gap) <= tol;
    out.push_back({"aggregate.mean_limits", ok,
                   "xi gap " + detail::num(gamma_gap) + ", integral gap " +
                       detail::num(log4_gap) + ", tol " + detail::num(tol)});
  }

  return out;
}

inline std::vector<Check> dirichlet_suite(const arith::PrimeTable& table,
                                          std::int64_t n_scale) {
  std::vector<Check> out;
  std::int64_t n = std::min<std::int64_t>(100'000, n_scale);

  {
    bool ok = true;
    std::string worst;
    for (double qv : {2.0, 3.0})
      for (double s : {1.5, 2.0, 3.0}) {
        auto p = dirichlet::Q_partial(qnorm::QParam{qv}, s, n);
        double gap = std::abs(p.value - dirichlet::Q_closed(qnorm::QParam{qv}, s));
        if (gap > p.tail_bound + 1e-9) {
          ok = false;
          worst = "q=" + detail::num(qv) + " s=" + detail::num(s) + " gap " +
                  detail::num(gap);
        }
      }
    out.push_back({"dirichlet.closed_vs_partial", ok,
                   ok ? "q in {2,3}, s in {1.5,2,3}, N=" + std::to_string(n)
                      : worst});
  }

  {
    double worst = 0.0;
    for (std::int64_t m = 1; m <= 200; ++m) {
      double inv = 0.0;
      for (std::int64_t i : arith::divisors(table, m)) {
        int mu = arith::moebius(table, i);
        if (mu == 0) continue;
        inv += static_cast<double>(mu) *
               qnorm::qnorm(table, m / i, qnorm::QParam{2.0}).value;
      }
      worst =
          std::max(worst, std::abs(dirichlet::gamma_q(m, qnorm::QParam{2.0}) - inv));
    }
    out.push_back(detail::bounded("dirichlet.gamma_inversion", worst, 1e-12));
  }

  {
    double worst = 0.0;
    for (double qv : {2.0, 3.0, 5.0})
      worst = std::max(
          worst, std::abs(dirichlet::gamma_series(qnorm::QParam{qv}, 1.0, 100).value -
                          means::mean_limit(qnorm::QParam{qv})));
    out.push_back(detail::bounded("dirichlet.gamma_series_mean_limit", worst, 1e-12));
  }

  {
    auto p = dirichlet::Xi_partial(2.0, n);
    double gap = std::abs(p.value - dirichlet::Xi_closed(2.0));
    out.push_back({"dirichlet.xi_generating_function", gap <= p.tail_bound + 1e-9,
                   "gap " + detail::num(gap) + " vs tail " + detail::num(p.tail_bound)});
  }

  {
    auto r = dirichlet::dirichlet_square_check(n, 3.0);
    out.push_back({"dirichlet.divisor_square_identity", r.has_value() && *r,
                   "N=" + std::to_string(n) + ", s=3"});
  }

  return out;
}

// suite: one of all, metric, sieve, means, sequences, aggregate, dirichlet.
inline std::vector<Check> run(const arith::PrimeTable& table,
                              const std::string& suite, std::int64_t n_scale) {
  if (n_scale < 10) throw domain_error("verify: n-scale must be at least 10");
  std::vector<Check> out;
  auto append = [&](std::vector<Check> v) {
    out.insert(out.end(), v.begin(), v.end());
  };
  bool all = suite == "all";
  bool known = all;
  if (all || suite == "metric") known = true;
  if (all || suite == "metric") append(metric_suite(table));
  if (all || suite == "sieve") known = true, append(sieve_suite(table, n_scale));
  if (all || suite == "means") known = true, append(means_suite(n_scale));
  if (all || suite == "sequences") known = true, append(sequences_suite(table));
  if (all || suite == "aggregate")
    known = true, append(aggregate_suite(table, n_scale));
  if (all || suite == "dirichlet")
    known = true, append(dirichlet_suite(table, n_scale));
  if (!known) throw domain_error("verify: unknown suite '" + suite + "'");
  return out;
}

}  // namespace furst::verify
