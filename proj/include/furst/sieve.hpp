#pragma once

#include <algorithm>
#include <cstdint>
#include <new>
#include <utility>
#include <vector>

#include "furst/errors.hpp"
#include "furst/qnorm.hpp"

namespace furst::sieve {

// Batch table of (||1||_q, ..., ||n||_q); values are 1-indexed through at().
struct SieveTable {
  double q = 0.0;
  std::int64_t n = 0;
  std::vector<double> values;  // values[m - 1] = ||m||_q

  double at(std::int64_t m) const {
    if (m < 1 || m > n) throw domain_error("SieveTable::at: index outside [1, n]");
    return values[static_cast<std::size_t>(m - 1)];
  }
};

// Generalized divisor-sum sieve: out[m] = base - sum_{k >= 2, k | m} weight(k)
// for m = 1..n (0-indexed storage, out[m - 1]). The passes touch n/k cells
// for each k, so the total work is O(n log n). weight is called once per k,
// in increasing k order, during the first block; a weight of exactly 0.0
// skips the pass, since subtracting 0.0 never changes a finite cell, and the
// nonzero weights are cached (one entry each) so later blocks reuse them.
// Cells are updated one cache-sized block at a time; each cell still
// receives its subtractions in increasing k order, so the output is
// bit-identical to the plain double loop.
template <typename W>
std::vector<double> sieve_divisor_weights(W&& weight, double base, std::int64_t n) {
  if (n < 1) throw domain_error("sieve_divisor_weights: n must be >= 1");
  std::vector<double> x;
  std::vector<std::pair<std::int64_t, double>> nonzero;
  try {
    x.assign(static_cast<std::size_t>(n), base);
  } catch (const std::bad_alloc&) {
    throw capacity_error("sieve_divisor_weights: allocation failed");
  }
  constexpr std::int64_t kBlock = std::int64_t{1} << 17;  // doubles, 1 MiB
  for (std::int64_t lo = 1; lo <= n; lo += kBlock) {
    const std::int64_t hi = std::min(n, lo + kBlock - 1);
    if (lo == 1) {
      for (std::int64_t k = 2; k <= n; ++k) {
        double w = weight(k);
        if (w == 0.0) continue;
        nonzero.emplace_back(k, w);
        for (std::int64_t m = k; m <= hi; m += k) x[m - 1] -= w;
      }
    } else {
      for (const auto& [k, w] : nonzero) {
        const std::int64_t start = ((lo + k - 1) / k) * k;
        for (std::int64_t m = start; m <= hi; m += k) x[m - 1] -= w;
      }
    }
  }
  return x;
}

// The batch q-norm sieve: initialize every cell to 1/(q(q-1)), then for
// i = 2..n subtract q^{-i} at every multiple of i (each m > 1 divides itself,
// so j = 1 subtracts at m = i too). q^{-i} is maintained incrementally by one
// multiplication per i; once it underflows to exactly 0.0 the remaining
// passes are no-ops and are skipped, leaving the output bit-identical to the
// unconditional loop.
inline SieveTable sieve_qnorms(qnorm::QParam q, std::int64_t n) {
  const double qinv = 1.0 / q.q;
  double qk = qinv;  // q^{-i} for the upcoming i
  auto weight = [&](std::int64_t) {
    qk *= qinv;
    return qk;
  };
  return {q.q, n, sieve_divisor_weights(weight, qnorm::diameter(q), n)};
}

}  // namespace furst::sieve
