#pragma once

#include <compare>
#include <numeric>
#include <string>

#include "apery/checked_arith.hpp"
#include "apery/errors.hpp"

// Exact rationals on checked 64-bit integers.  Overflow raises a hard
// error rather than widening; every value this library fits stays far
// inside the range.  Denominators are kept positive and fractions reduced.

namespace apery {

class Rational {
public:
  Rational() = default;
  Rational(i64 value) : num_(value) {}  // NOLINT: implicit by design
  Rational(i64 num, i64 den) : num_(num), den_(den) { normalize(); }

  i64 numerator() const { return num_; }
  i64 denominator() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  i64 as_integer() const {
    if (den_ != 1) throw error("rational " + to_string() + " is not an integer");
    return num_;
  }

  std::string to_string() const {
    return den_ == 1 ? std::to_string(num_)
                     : std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    // Knuth-style: split the gcd of denominators to delay overflow.
    i64 g = std::gcd(a.den_, b.den_);
    i64 num = checked_add(checked_mul(a.num_, b.den_ / g),
                          checked_mul(b.num_, a.den_ / g));
    i64 den = checked_mul(a.den_ / g, b.den_);
    return Rational(num, den);
  }

  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + Rational(checked_neg(b.num_), b.den_);
  }

  friend Rational operator*(const Rational& a, const Rational& b) {
    i64 g1 = std::gcd(a.num_ < 0 ? -a.num_ : a.num_, b.den_);
    i64 g2 = std::gcd(b.num_ < 0 ? -b.num_ : b.num_, a.den_);
    return Rational(checked_mul(a.num_ / g1, b.num_ / g2),
                    checked_mul(a.den_ / g2, b.den_ / g1));
  }

  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw error("rational division by zero");
    return a * Rational(b.den_, b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

private:
  void normalize() {
    if (den_ == 0) throw error("rational with zero denominator");
    if (den_ < 0) {
      num_ = checked_neg(num_);
      den_ = checked_neg(den_);
    }
    i64 g = std::gcd(num_ < 0 ? checked_neg(num_) : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  i64 num_ = 0;
  i64 den_ = 1;
};

}  // namespace apery
