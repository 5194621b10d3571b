#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "apery/checked_arith.hpp"
#include "apery/errors.hpp"
#include "apery/monoid.hpp"

// Minimum factorization length m_S(a) = min{|z| : z a factorization of a}.
//
// Values are tabulated for the window [0, W], W = r_{k-1}*r_k + r_k, by a
// forward dynamic program.  Beyond the window, m_S is quasilinear with
// period r_k: m_S(a + r_k) = m_S(a) + 1 for all a > r_{k-1}*r_k, so a
// lookup reduces a by t*r_k into the window's top period (threshold, W]
// and adds t back.
//
// Why the reduced point is guaranteed to be an element: it is a multiple
// of d = gcd(S) exceeding r_{k-1}*r_k, its quotient by d therefore exceeds
// r_{k-1}*r_k/d >= r'_{k-1}*r'_k, and the primitive quotient's Frobenius
// number lies strictly below that by the Brauer/Schur bound
// (r'_1 - 1)(r'_k - 1) - 1.  The lookup still checks instead of assuming.

namespace apery {

struct MinLengthTable {
  static constexpr i64 kAbsent = -1;

  NumericalMonoid monoid;
  i64 threshold = 0;   // r_{k-1} * r_k (0 when k = 1)
  i64 period = 1;      // r_k
  i64 window_end = 0;  // threshold + period
  bool single_generator = false;  // S = <r>: m(a) = a / r exactly, no table
  std::vector<i64> window;        // size window_end + 1; kAbsent marks gaps
};

namespace detail {

inline constexpr i64 kMaxWindowEntries = 50'000'000;

// kAbsent when a is not an element; never throws for a >= 0.
inline i64 min_length_lookup(const MinLengthTable& t, i64 a) {
  if (a < 0) return MinLengthTable::kAbsent;
  if (t.single_generator) {
    i64 r = t.monoid.smallest();
    return a % r == 0 ? a / r : MinLengthTable::kAbsent;
  }
  if (a <= t.window_end) return t.window[static_cast<std::size_t>(a)];
  if (a % t.monoid.d != 0) return MinLengthTable::kAbsent;
  i64 steps = ceil_div(a - t.window_end, t.period);
  i64 reduced = a - checked_mul(steps, t.period);  // lands in (threshold, window_end]
  i64 base = t.window[static_cast<std::size_t>(reduced)];
  if (base == MinLengthTable::kAbsent)
    throw error("min-length reduction landed outside the monoid at " +
                std::to_string(reduced) + "; table invariant violated");
  return checked_add(base, steps);
}

}  // namespace detail

inline MinLengthTable build_minlen_table(const NumericalMonoid& s) {
  MinLengthTable t;
  t.monoid = s;
  if (s.generator_count() == 1) {
    t.single_generator = true;
    t.period = s.smallest();
    return t;
  }
  const auto& g = s.generators();
  t.period = g.back();
  t.threshold = checked_mul(g[g.size() - 2], g.back());
  t.window_end = checked_add(t.threshold, t.period);
  if (t.window_end >= detail::kMaxWindowEntries)
    throw budget_error("min-length window of " + std::to_string(t.window_end) +
                       " entries refused");
  t.window.assign(static_cast<std::size_t>(t.window_end) + 1,
                  MinLengthTable::kAbsent);
  t.window[0] = 0;
  for (i64 a = 1; a <= t.window_end; ++a) {
    i64 best = MinLengthTable::kAbsent;
    for (i64 gen : g) {
      if (gen > a) break;
      i64 prev = t.window[static_cast<std::size_t>(a - gen)];
      if (prev != MinLengthTable::kAbsent && (best == MinLengthTable::kAbsent || prev + 1 < best))
        best = prev + 1;
    }
    t.window[static_cast<std::size_t>(a)] = best;
  }
  return t;
}

// m_S(a); throws not_in_monoid when a is not an element.
inline i64 min_length(const MinLengthTable& t, i64 a) {
  i64 v = detail::min_length_lookup(t, a);
  if (v == MinLengthTable::kAbsent)
    throw not_in_monoid(a, std::to_string(a) + " is not an element of the monoid");
  return v;
}

// As min_length, but absent instead of an error; used on gap-shifted
// arguments where non-membership is an expected outcome.
inline std::optional<i64> min_length_if_member(const MinLengthTable& t, i64 a) {
  i64 v = detail::min_length_lookup(t, a);
  if (v == MinLengthTable::kAbsent) return std::nullopt;
  return v;
}

}  // namespace apery
