#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>

#include "apery/errors.hpp"

namespace apery {

using i64 = std::int64_t;

inline i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r))
    throw overflow_error("integer overflow in " + std::to_string(a) + " + " +
                         std::to_string(b));
  return r;
}

inline i64 checked_sub(i64 a, i64 b) {
  i64 r;
  if (__builtin_sub_overflow(a, b, &r))
    throw overflow_error("integer overflow in " + std::to_string(a) + " - " +
                         std::to_string(b));
  return r;
}

inline i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r))
    throw overflow_error("integer overflow in " + std::to_string(a) + " * " +
                         std::to_string(b));
  return r;
}

inline i64 checked_neg(i64 a) { return checked_sub(0, a); }

// ceil(a / b) for b > 0.
inline i64 ceil_div(i64 a, i64 b) {
  i64 q = a / b;
  if (a % b != 0 && (a > 0) == (b > 0)) ++q;
  return q;
}

// Multiplicative inverse of a modulo m (gcd(a, m) = 1, m > 1).
inline i64 mod_inverse(i64 a, i64 m) {
  i64 t = 0, new_t = 1;
  i64 r = m, new_r = a % m;
  while (new_r != 0) {
    i64 q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw input_error("mod_inverse: arguments are not coprime");
  return t < 0 ? t + m : t;
}

}  // namespace apery
