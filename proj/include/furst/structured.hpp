#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "furst/arith.hpp"
#include "furst/errors.hpp"

namespace furst::structured {

// An integer given literally or symbolically, so that divisibility by any
// k >= 1 is decidable without materializing the value.
enum class Kind { Plain, Factorial, Primorial, Lcm, PrimeIndex };

struct StructuredInteger {
  Kind kind = Kind::Plain;
  std::int64_t arg = 0;  // Plain: the value itself; otherwise the index n >= 1

  static StructuredInteger plain(std::int64_t value) { return {Kind::Plain, value}; }
  static StructuredInteger factorial(std::int64_t n) { return make(Kind::Factorial, n); }
  static StructuredInteger primorial(std::int64_t n) { return make(Kind::Primorial, n); }
  static StructuredInteger lcm(std::int64_t n) { return make(Kind::Lcm, n); }
  static StructuredInteger prime_index(std::int64_t n) { return make(Kind::PrimeIndex, n); }

 private:
  static StructuredInteger make(Kind kind, std::int64_t n) {
    if (n < 1) throw domain_error("StructuredInteger: index must be >= 1");
    return {kind, n};
  }
};

// Does k divide the represented value? Works symbolically for every variant.
inline bool divides(const arith::PrimeTable& table, std::int64_t k,
                    const StructuredInteger& x) {
  if (k < 1) throw domain_error("divides: k must be >= 1");
  switch (x.kind) {
    case Kind::Plain: {
      if (x.arg == 0) return true;
      std::int64_t v = x.arg < 0 ? -x.arg : x.arg;
      return v % k == 0;
    }
    case Kind::Factorial:
      return arith::divides_factorial(table, k, x.arg);
    case Kind::Primorial:
      return arith::divides_primorial(table, k, x.arg);
    case Kind::Lcm:
      return arith::divides_lcm(table, k, x.arg);
    case Kind::PrimeIndex:
      return k == 1 || k == table.nth_prime(x.arg);
  }
  throw internal_error("divides: unhandled kind");
}

// Represented value mod m, in [0, m). Evaluated with modular products, so the
// value itself is never materialized. Cost is O(n) for Factorial, O(pi(n))
// for Primorial/Lcm.
inline std::int64_t mod_value(const arith::PrimeTable& table,
                              const StructuredInteger& x, std::int64_t m) {
  if (m < 1) throw domain_error("mod_value: modulus must be >= 1");
  auto mulmod = [m](std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>((__int128)a * b % m);
  };
  switch (x.kind) {
    case Kind::Plain:
      return ((x.arg % m) + m) % m;
    case Kind::Factorial: {
      if (x.arg >= m) return 0;  // m itself is one of the factors
      std::int64_t r = 1 % m;
      for (std::int64_t i = 2; i <= x.arg; ++i) r = mulmod(r, i);
      return r;
    }
    case Kind::Primorial: {
      std::int64_t last = table.nth_prime(x.arg);
      std::int64_t r = 1 % m;
      for (std::int64_t p : table.primes_up_to(last)) r = mulmod(r, p % m);
      return r;
    }
    case Kind::Lcm: {
      // lcm(1..n) = product over primes p <= n of p^floor(log_p n)
      std::int64_t r = 1 % m;
      for (std::int64_t p : table.primes_up_to(x.arg)) {
        std::int64_t pe = p;
        while (pe <= x.arg / p) pe *= p;
        r = mulmod(r, pe % m);
      }
      return r;
    }
    case Kind::PrimeIndex:
      return table.nth_prime(x.arg) % m;
  }
  throw internal_error("mod_value: unhandled kind");
}

// Materialize when the value fits in 64 bits; nullopt otherwise.
inline std::optional<std::int64_t> literal_value(const arith::PrimeTable& table,
                                                 const StructuredInteger& x) {
  auto checked_mul = [](std::int64_t a, std::int64_t b) -> std::optional<std::int64_t> {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
    return r;
  };
  switch (x.kind) {
    case Kind::Plain:
      return x.arg;
    case Kind::Factorial: {
      std::int64_t v = 1;
      for (std::int64_t i = 2; i <= x.arg; ++i) {
        auto r = checked_mul(v, i);
        if (!r) return std::nullopt;
        v = *r;
      }
      return v;
    }
    case Kind::Primorial: {
      std::int64_t v = 1;
      for (std::int64_t i = 1; i <= x.arg; ++i) {
        auto r = checked_mul(v, table.nth_prime(i));
        if (!r) return std::nullopt;
        v = *r;
      }
      return v;
    }
    case Kind::Lcm: {
      std::int64_t v = 1;
      for (std::int64_t p : table.primes_up_to(x.arg)) {
        std::int64_t pe = p;
        while (pe <= x.arg / p) pe *= p;
        auto r = checked_mul(v, pe);
        if (!r) return std::nullopt;
        v = *r;
      }
      return v;
    }
    case Kind::PrimeIndex:
      return table.nth_prime(x.arg);
  }
  throw internal_error("literal_value: unhandled kind");
}

inline std::string describe(const StructuredInteger& x) {
  switch (x.kind) {
    case Kind::Plain: return std::to_string(x.arg);
    case Kind::Factorial: return std::to_string(x.arg) + "!";
    case Kind::Primorial: return "p_" + std::to_string(x.arg) + "#";
    case Kind::Lcm: return "lcm(1.." + std::to_string(x.arg) + ")";
    case Kind::PrimeIndex: return "p_" + std::to_string(x.arg);
  }
  return "?";
}

}  // namespace furst::structured
