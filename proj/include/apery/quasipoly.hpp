#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "apery/checked_arith.hpp"
#include "apery/errors.hpp"
#include "apery/rational.hpp"

// Eventual quasipolynomials in the shift parameter n: per residue class
// mod r, a degree-alpha polynomial with exact rational coefficients.  No
// floating point anywhere; fitting is exact finite differences.

namespace apery {

struct QuasiPolynomial {
  i64 period = 1;      // r
  i64 degree = 0;      // alpha
  i64 valid_from = 0;  // smallest n the polynomial is claimed for
  // One row per residue class mod r, highest coefficient first
  // (a_alpha, ..., a_0).  Classes with no admissible samples stay absent.
  std::vector<std::optional<std::vector<Rational>>> rows;
};

namespace detail {

// Coefficients of the degree-alpha polynomial through the arithmetic
// progression (n0 + j*r, value_j), via Newton forward differences.
inline std::vector<Rational> newton_coefficients(const std::vector<i64>& values,
                                                 i64 n0, i64 r, i64 degree) {
  // Difference table; orders above `degree` must vanish.
  std::vector<std::vector<i64>> diff{values};
  for (std::size_t order = 1; order < values.size(); ++order) {
    const auto& prev = diff.back();
    std::vector<i64> next;
    next.reserve(prev.size() - 1);
    for (std::size_t i = 0; i + 1 < prev.size(); ++i)
      next.push_back(checked_sub(prev[i + 1], prev[i]));
    diff.push_back(std::move(next));
  }
  for (std::size_t order = static_cast<std::size_t>(degree) + 1;
       order < diff.size(); ++order)
    for (i64 v : diff[order])
      if (v != 0)
        throw input_error("samples are not degree-" + std::to_string(degree) +
                          " on their class (order-" + std::to_string(order) +
                          " difference " + std::to_string(v) + " at n0 = " +
                          std::to_string(n0) + ")");

  // poly(n) = sum_m D_m / (m! r^m) * prod_{t<m} (n - n0 - t*r),
  // accumulated in ascending-power form.
  std::vector<Rational> poly(static_cast<std::size_t>(degree) + 1, Rational(0));
  std::vector<Rational> basis{Rational(1)};  // prod so far, ascending powers
  i64 factorial = 1;
  i64 r_power = 1;
  for (i64 m = 0; m <= degree; ++m) {
    if (m > 0) {
      factorial = checked_mul(factorial, m);
      r_power = checked_mul(r_power, r);
    }
    Rational lead(diff[static_cast<std::size_t>(m)][0],
                  checked_mul(factorial, r_power));
    for (std::size_t p = 0; p < basis.size(); ++p) poly[p] += lead * basis[p];
    if (m < degree) {
      // basis *= (n - (n0 + m*r))
      Rational root(checked_add(n0, checked_mul(m, r)));
      std::vector<Rational> next(basis.size() + 1, Rational(0));
      for (std::size_t p = 0; p < basis.size(); ++p) {
        next[p + 1] += basis[p];
        next[p] -= basis[p] * root;
      }
      basis = std::move(next);
    }
  }
  std::vector<Rational> descending(poly.rbegin(), poly.rend());
  return descending;
}

}  // namespace detail

// Fit per residue class mod `period`.  Each class present in `samples`
// needs at least degree+1 points spaced exactly `period` apart; extra
// points sharpen the vanishing-difference check.  Fails loudly on
// inconsistent data, returns absent rows for classes with no samples.
inline QuasiPolynomial fit(const std::map<i64, i64>& samples, i64 period,
                           i64 degree, i64 valid_from) {
  if (period < 1) throw input_error("quasipolynomial period must be positive");
  if (degree < 0) throw input_error("quasipolynomial degree must be non-negative");
  QuasiPolynomial q;
  q.period = period;
  q.degree = degree;
  q.valid_from = valid_from;
  q.rows.assign(static_cast<std::size_t>(period), std::nullopt);

  std::vector<std::vector<std::pair<i64, i64>>> by_class(
      static_cast<std::size_t>(period));
  for (auto [n, value] : samples) {
    if (n < valid_from)
      throw input_error("sample at n = " + std::to_string(n) +
                        " lies below valid_from = " + std::to_string(valid_from));
    by_class[static_cast<std::size_t>(n % period)].emplace_back(n, value);
  }

  bool any_nonzero_lead = false;
  for (i64 cls = 0; cls < period; ++cls) {
    auto& pts = by_class[static_cast<std::size_t>(cls)];
    if (pts.empty()) continue;  // class absent (e.g. excluded by a gcd constraint)
    if (static_cast<i64>(pts.size()) < degree + 1)
      throw input_error("class " + std::to_string(cls) + " mod " +
                        std::to_string(period) + " has " +
                        std::to_string(pts.size()) + " samples; needs " +
                        std::to_string(degree + 1));
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      if (pts[i + 1].first - pts[i].first != period)
        throw input_error("samples on class " + std::to_string(cls) +
                          " are not an arithmetic progression of step " +
                          std::to_string(period));
    std::vector<i64> values;
    values.reserve(pts.size());
    for (auto [n, v] : pts) values.push_back(v);
    auto row = detail::newton_coefficients(values, pts.front().first, period, degree);
    if (row.front() != Rational(0)) any_nonzero_lead = true;
    q.rows[static_cast<std::size_t>(cls)] = std::move(row);
  }
  if (!any_nonzero_lead && degree > 0)
    throw input_error("leading coefficient vanishes on every class; "
                      "the data is not degree-" + std::to_string(degree));
  return q;
}

inline Rational eval(const QuasiPolynomial& q, i64 n) {
  if (n < q.valid_from)
    throw input_error("n = " + std::to_string(n) + " is below the validity threshold " +
                      std::to_string(q.valid_from));
  const auto& row = q.rows[static_cast<std::size_t>(n % q.period)];
  if (!row)
    throw input_error("no coefficients for residue class " +
                      std::to_string(n % q.period));
  Rational acc(0);
  for (const Rational& c : *row) acc = acc * Rational(n) + c;
  return acc;
}

struct VerifyReport {
  bool all_match = true;
  std::size_t checked = 0;
  // (n, predicted, sample) for the first disagreement.
  std::optional<std::tuple<i64, Rational, i64>> first_mismatch;
};

// Mismatches are a report outcome, not an error.
inline VerifyReport verify(const QuasiPolynomial& q,
                           const std::map<i64, i64>& samples) {
  VerifyReport rep;
  for (auto [n, value] : samples) {
    Rational predicted = eval(q, n);
    ++rep.checked;
    if (predicted != Rational(value)) {
      rep.all_match = false;
      rep.first_mismatch = {n, predicted, value};
      break;
    }
  }
  return rep;
}

}  // namespace apery
