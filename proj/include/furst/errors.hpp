#pragma once

#include <stdexcept>
#include <string>

namespace furst {

// Invalid argument values (q <= 1, s <= 1, n = 0 where divisors are undefined, ...).
class domain_error : public std::invalid_argument {
 public:
  explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

// Request exceeds a configured or representable capacity (table limit, 64-bit overflow).
class capacity_error : public std::runtime_error {
 public:
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// Violated internal contract; indicates a bug, not bad input.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace furst
