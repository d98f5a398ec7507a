#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "furst/errors.hpp"
#include "furst/qnorm.hpp"
#include "furst/sieve.hpp"

namespace furst::means {

// Gap geometry at one q: odd norms exceed 1/(q^2 - 1), even norms stay at or
// below 1/(q^2 (q - 1)). The bands separate exactly when q exceeds the golden
// ratio, and the mean limit falls inside the gap exactly when q exceeds the
// lambda threshold (root of lambda/(lambda-1) = (lambda+1) ln(lambda/(lambda-1))).
struct GapProfile {
  double q = 0.0;
  double odd_lower = 0.0;
  double even_upper = 0.0;
  double mean_limit = 0.0;
  bool gap_exists = false;
  bool mean_in_gap = false;
};

inline constexpr double kGoldenRatio = 1.6180339887498948482;

// Kahan-compensated arithmetic mean of the table values.
inline double mean_prefix(const sieve::SieveTable& table) {
  double sum = 0.0, c = 0.0;
  for (double v : table.values) {
    double y = v - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum / static_cast<double>(table.n);
}

// lim_N m_N(q) = 1/(q-1) + ln((q-1)/q); log1p(-1/q) evaluates the logarithm
// without cancellation.
inline double mean_limit(qnorm::QParam q) {
  return 1.0 / (q.q - 1.0) + std::log1p(-1.0 / q.q);
}

inline GapProfile gap_profile(qnorm::QParam q) {
  GapProfile g;
  g.q = q.q;
  g.odd_lower = 1.0 / (q.q * q.q - 1.0);
  g.even_upper = 1.0 / (q.q * q.q * (q.q - 1.0));
  g.mean_limit = mean_limit(q);
  g.gap_exists = g.even_upper < g.odd_lower;
  g.mean_in_gap = g.even_upper < g.mean_limit && g.mean_limit < g.odd_lower;
  return g;
}

// Unique root of g(x) = x/(x-1) - (x+1) ln(x/(x-1)) in [1.6, 1.9] by 60
// bisection steps (bracket width 0.3 / 2^60, far below any tol of interest).
// The residual floor is ~1e-15 in binary64; tol below that is unattainable.
inline double lambda_root(double tol) {
  if (!(tol > 0.0)) throw domain_error("lambda_root: tol must be positive");
  auto g = [](double x) {
    double ratio = x / (x - 1.0);
    return ratio - (x + 1.0) * std::log(ratio);
  };
  double lo = 1.6, hi = 1.9;
  double glo = g(lo);
  if (!(glo * g(hi) < 0.0)) throw internal_error("lambda_root: bracket does not straddle");
  for (int i = 0; i < 60; ++i) {
    double mid = 0.5 * (lo + hi);
    if (g(mid) * glo > 0.0) {
      lo = mid;
      glo = g(mid);
    } else {
      hi = mid;
    }
  }
  double root = 0.5 * (lo + hi);
  if (!(std::abs(g(root)) < tol))
    throw internal_error("lambda_root: residual above tol");
  return root;
}

// Evenly spaced q grid, endpoints included; steps = 1 degenerates to q_min.
inline std::vector<GapProfile> gap_table(double q_min, double q_max,
                                         std::int64_t steps) {
  if (steps < 1) throw domain_error("gap_table: steps must be >= 1");
  if (!(q_min > 1.0) || q_max < q_min)
    throw domain_error("gap_table: requires 1 < q_min <= q_max");
  std::vector<GapProfile> out;
  out.reserve(static_cast<std::size_t>(steps));
  if (steps == 1) {
    out.push_back(gap_profile(qnorm::QParam(q_min)));
    return out;
  }
  double h = (q_max - q_min) / static_cast<double>(steps - 1);
  for (std::int64_t i = 0; i < steps; ++i) {
    double q = i == steps - 1 ? q_max : q_min + h * static_cast<double>(i);
    out.push_back(gap_profile(qnorm::QParam(q)));
  }
  return out;
}

// Histogram of table values over [0, diameter]: bins are left-closed
// right-open, the last bin also contains the right endpoint.
struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  std::int64_t count = 0;
};

inline std::vector<HistogramBin> histogram(const sieve::SieveTable& table,
                                           std::int64_t bins) {
  if (bins < 1) throw domain_error("histogram: bins must be >= 1");
  double diam = 1.0 / (table.q * (table.q - 1.0));
  double width = diam / static_cast<double>(bins);
  std::vector<HistogramBin> out(static_cast<std::size_t>(bins));
  for (std::int64_t b = 0; b < bins; ++b) {
    out[b].lo = width * static_cast<double>(b);
    out[b].hi = b == bins - 1 ? diam : width * static_cast<double>(b + 1);
  }
  for (double v : table.values) {
    auto b = static_cast<std::int64_t>(v / width);
    if (b >= bins) b = bins - 1;
    if (b < 0) b = 0;
    ++out[b].count;
  }
  return out;
}

}  // namespace furst::means
