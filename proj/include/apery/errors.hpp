#pragma once

#include <stdexcept>
#include <string>

namespace apery {

// Base class for everything this library throws.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad or out-of-contract input: malformed generators, x outside the
// monoid, fit samples off the arithmetic progression, and so on.
class input_error : public error {
public:
  using error::error;
};

// An element was required to lie in the monoid but does not.
class not_in_monoid : public input_error {
public:
  not_in_monoid(long long value, const std::string& what)
      : input_error(what), value_(value) {}
  long long value() const noexcept { return value_; }

private:
  long long value_;
};

// 64-bit arithmetic left the representable range.  Raised eagerly so a
// wrapped value can never reach a result.
class overflow_error : public error {
public:
  using error::error;
};

// An explicit resource budget (enumeration steps, table size) ran out.
class budget_error : public error {
public:
  using error::error;
};

// The three conditions gating the fast shifted-Apéry path.
enum class ShiftCheck {
  shift_exceeds_rk_squared,  // n > r_k^2
  shift_coprime_to_gcd,      // gcd(n, d) = 1
  dn_in_base,                // d*n lies in the base monoid
};

inline const char* to_string(ShiftCheck c) {
  switch (c) {
    case ShiftCheck::shift_exceeds_rk_squared: return "n > r_k^2";
    case ShiftCheck::shift_coprime_to_gcd: return "gcd(n, d) = 1";
    case ShiftCheck::dn_in_base: return "d*n in base monoid";
  }
  return "?";
}

// Fast-path entry refused; names the first check that failed.
class eligibility_error : public input_error {
public:
  eligibility_error(ShiftCheck failed, const std::string& what)
      : input_error(what), failed_(failed) {}
  ShiftCheck failed_check() const noexcept { return failed_; }

private:
  ShiftCheck failed_;
};

}  // namespace apery
