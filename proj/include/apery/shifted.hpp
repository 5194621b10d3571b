#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apery/apery_set.hpp"
#include "apery/checked_arith.hpp"
#include "apery/errors.hpp"
#include "apery/min_length.hpp"
#include "apery/monoid.hpp"

// The fast Apéry path for sufficiently shifted monoids.
//
// For M_n = <n, n+r_1, ..., n+r_k> with n > r_k^2, gcd(n, d) = 1 and
// dn in S = <r_1, ..., r_k>:
//
//   Ap(S; dn) = {a_0, ..., a_{n-1}},  a_i = di if di in S, else di + dn
//   Ap(M_n)   = {a + m_S(a) * n : a in Ap(S; dn)}
//
// so Ap(M_n) costs O(n) integer operations given the (tiny) gap set of
// S/d and the min-length window of S.  Nothing here scales with F(M_n).

namespace apery {

struct ShiftEligibility {
  i64 n = 0;
  i64 r_max = 0;  // r_k
  i64 d = 1;      // gcd(S)
  bool shift_exceeds_rk_squared = false;
  bool shift_coprime_to_gcd = false;
  bool dn_in_base = false;

  bool eligible() const {
    return shift_exceeds_rk_squared && shift_coprime_to_gcd && dn_in_base;
  }

  ShiftCheck first_failed() const {
    if (!shift_exceeds_rk_squared) return ShiftCheck::shift_exceeds_rk_squared;
    if (!shift_coprime_to_gcd) return ShiftCheck::shift_coprime_to_gcd;
    return ShiftCheck::dn_in_base;
  }
};

// A base monoid S together with everything the fast path reuses across
// shifts: the gap set of the primitive quotient S' = S/d and the
// min-length window of S.  Built once, immutable, safe to share between
// threads scanning different n.
class ShiftedFamily {
public:
  explicit ShiftedFamily(NumericalMonoid base)
      : base_(std::move(base)), table_(build_minlen_table(base_)) {
    std::vector<i64> quotient_gens;
    quotient_gens.reserve(base_.generator_count());
    for (i64 g : base_.generators()) quotient_gens.push_back(g / base_.d);
    i64 bound = detail::frobenius_upper_bound(quotient_gens);
    quotient_sieve_ = detail::membership_table(quotient_gens, bound);
    quotient_frobenius_ = -1;
    for (i64 v = bound; v >= 1; --v) {
      if (!quotient_sieve_[static_cast<std::size_t>(v)]) {
        quotient_frobenius_ = v;
        break;
      }
    }
    for (i64 v = 1; v <= quotient_frobenius_; ++v)
      if (!quotient_sieve_[static_cast<std::size_t>(v)])
        quotient_gaps_.push_back(v);
  }

  const NumericalMonoid& base() const { return base_; }
  i64 d() const { return base_.d; }
  i64 r_max() const { return base_.largest(); }
  const MinLengthTable& min_length_table() const { return table_; }

  // Gaps of the primitive quotient S/d; the gaps of S are these times d.
  const std::vector<i64>& quotient_gaps() const { return quotient_gaps_; }
  i64 quotient_frobenius() const { return quotient_frobenius_; }

  bool quotient_contains(i64 v) const {
    if (v < 0) return false;
    if (v > quotient_frobenius_) return true;
    return quotient_sieve_[static_cast<std::size_t>(v)] != 0;
  }

  // v in S  <=>  d | v and v/d in S/d.
  bool base_contains(i64 v) const {
    return v >= 0 && v % base_.d == 0 && quotient_contains(v / base_.d);
  }

  NumericalMonoid member(i64 n) const { return family_member(base_, n); }

  ShiftEligibility eligibility(i64 n) const {
    ShiftEligibility e;
    e.n = n;
    e.r_max = r_max();
    e.d = d();
    e.shift_exceeds_rk_squared = n > checked_mul(e.r_max, e.r_max);
    e.shift_coprime_to_gcd = std::gcd(n, e.d) == 1;
    e.dn_in_base = quotient_contains(n);  // dn in S <=> n in S/d
    return e;
  }

private:
  NumericalMonoid base_;
  MinLengthTable table_;
  std::vector<char> quotient_sieve_;
  std::vector<i64> quotient_gaps_;
  i64 quotient_frobenius_ = -1;
};

namespace detail {

// m_S(a_i) for every element a_i of Ap(S; dn), plus the values needed at
// the gap shifts, evaluated in bulk: indices i < size carry m_S(d*i).
// Window entries seed the array; everything above the window extends by
// m(a) = m(a - r_k) + 1, which stays inside the monoid (see min_length.hpp).
struct BulkMinLength {
  std::vector<i64> values;  // values[i] = m_S(d*i), kAbsent on gaps of S
};

// Every value the fast paths produce is bounded by 2dn + (2dn/r_1)*n
// (arguments to m_S stay below 2dn and m_S(a) <= a / r_1).  Checking the
// bound once, before any allocation, lets the per-element loops run on
// plain arithmetic.
inline void require_shift_in_range(const ShiftedFamily& fam, i64 n) {
  using wide = __int128;
  wide two_dn = wide(2) * fam.d() * n;
  wide worst = two_dn + (two_dn / fam.base().smallest()) * n;
  if (worst > wide(std::numeric_limits<i64>::max()))
    throw overflow_error("Apéry elements exceed the 64-bit range at shift " +
                         std::to_string(n));
}

inline BulkMinLength bulk_min_lengths(const ShiftedFamily& fam, i64 count) {
  const MinLengthTable& t = fam.min_length_table();
  BulkMinLength out;
  out.values.resize(static_cast<std::size_t>(count));
  i64 d = fam.d();
  if (t.single_generator) {
    // S = <r> with d = r: m_S(d*i) = i.
    for (i64 i = 0; i < count; ++i) out.values[static_cast<std::size_t>(i)] = i;
    return out;
  }
  i64 window_top = std::min(count - 1, t.window_end / d);
  for (i64 i = 0; i <= window_top; ++i)
    out.values[static_cast<std::size_t>(i)] =
        t.window[static_cast<std::size_t>(d * i)];
  i64 step = t.period / d;  // r_k in multiples-of-d units
  for (i64 i = window_top + 1; i < count; ++i) {
    i64 prev = out.values[static_cast<std::size_t>(i - step)];
    if (prev == MinLengthTable::kAbsent)
      throw error("min-length extension crossed a gap; table invariant violated");
    out.values[static_cast<std::size_t>(i)] = prev + 1;
  }
  return out;
}

}  // namespace detail

// Ap(S; dn) from the gap set of S/d: a_i = di when di lies in S and
// di + dn otherwise.  Requires dn in S and dn > F(S) (both implied by
// n > r_k^2, but valid on their own for smaller shifts too).
inline AperySet large_apery_of_base(const ShiftedFamily& fam, i64 n) {
  if (n < 1) throw input_error("shift must be positive");
  if (!fam.quotient_contains(n))
    throw input_error("d*n is not an element of the base monoid; use apery_classic");
  if (n <= fam.quotient_frobenius())
    throw input_error("d*n does not exceed F(S); use apery_classic");
  i64 d = fam.d();
  AperySet out;
  out.monoid = fam.base();
  out.base_element = checked_mul(d, n);
  out.by_class.resize(static_cast<std::size_t>(n));
  i64 fq = fam.quotient_frobenius();
  for (i64 i = 0; i < n; ++i) {
    i64 di = d * i;
    bool in_s = i > fq || fam.quotient_contains(i);
    out.by_class[static_cast<std::size_t>(i)] =
        in_s ? di : checked_add(di, out.base_element);
  }
  return out;
}

namespace detail {

// Primitive base (d = 1): the class of a_i is i itself, and above the
// min-length window consecutive values in one residue class mod r_k obey
//   v(i) = i + m(i) n = v(i - r_k) + (n + r_k),
// so the body is a single strided-recurrence pass the compiler can
// vectorize.  Gap-shifted entries all sit inside the window region.
inline void fill_shifted_apery_primitive(const ShiftedFamily& fam, i64 n,
                                         std::vector<i64>& out) {
  const MinLengthTable& t = fam.min_length_table();
  out.resize(static_cast<std::size_t>(n));
  i64* v = out.data();
  if (t.single_generator) {
    // S = <1>: m(i) = i, no gaps.
    for (i64 i = 0; i < n; ++i) v[i] = i * (n + 1);
    return;
  }
  i64 window_top = std::min(t.window_end, n - 1);
  for (i64 j = 0; j <= window_top; ++j) {
    i64 m = t.window[static_cast<std::size_t>(j)];
    v[j] = m >= 0 ? j + m * n : j + n + min_length(t, j + n) * n;
  }
  const i64 step = t.period;
  const i64 bump = n + step;
  for (i64 i = window_top + 1; i < n; ++i) v[i] = v[i - step] + bump;
}

// General d: materialize the m-values once, then place each a_i's value
// at its class (d*i mod n).
inline void fill_shifted_apery_general(const ShiftedFamily& fam, i64 n,
                                       std::vector<i64>& out) {
  i64 d = fam.d();
  i64 fq = fam.quotient_frobenius();
  // m-values are needed at d*i for i < n (elements) and at d*(i + n) for
  // the gap-shifted entries, whose quotient index stays <= F(S') + n.
  auto bulk = bulk_min_lengths(fam, n + std::max<i64>(fq, -1) + 1);
  out.resize(static_cast<std::size_t>(n));
  i64 dn = d * n;
  i64 cls = 0;  // (d*i) mod n, maintained incrementally
  for (i64 i = 0; i < n; ++i) {
    i64 di = d * i;
    bool in_s = i > fq || fam.quotient_contains(i);
    i64 value = in_s ? di + bulk.values[static_cast<std::size_t>(i)] * n
                     : di + dn + bulk.values[static_cast<std::size_t>(i + n)] * n;
    out[static_cast<std::size_t>(cls)] = value;
    cls += d;
    if (cls >= n) cls -= n;
  }
}

}  // namespace detail

// Ap(M_n; n) for an eligible shift.  All three eligibility conditions are
// verified, not assumed; the boundary n = r_k^2 is refused.
inline AperySet shifted_apery(const ShiftedFamily& fam, i64 n) {
  ShiftEligibility e = fam.eligibility(n);
  if (!e.eligible()) {
    ShiftCheck failed = e.first_failed();
    throw eligibility_error(failed, "fast Apéry path requires " +
                                        std::string(to_string(failed)) +
                                        "; got n = " + std::to_string(n));
  }
  detail::require_shift_in_range(fam, n);
  AperySet out;
  out.monoid = fam.member(n);
  out.base_element = n;
  if (fam.d() == 1) {
    detail::fill_shifted_apery_primitive(fam, n, out.by_class);
  } else {
    detail::fill_shifted_apery_general(fam, n, out.by_class);
  }
  return out;
}

struct AutoAperyResult {
  AperySet set;
  bool used_fast_path = false;
  // Absent when M has a single generator (no shift decomposition).
  std::optional<ShiftEligibility> eligibility;
};

// The three checks evaluated without building any family caches: the
// membership test sieves the quotient only up to min(n, Brauer/Schur
// bound), so probing stays cheap even when the base generators are huge.
inline ShiftEligibility probe_eligibility(const NumericalMonoid& base, i64 n) {
  ShiftEligibility e;
  e.n = n;
  e.r_max = base.largest();
  e.d = base.d;
  e.shift_exceeds_rk_squared = n > checked_mul(e.r_max, e.r_max);
  e.shift_coprime_to_gcd = std::gcd(n, e.d) == 1;
  std::vector<i64> quotient_gens;
  quotient_gens.reserve(base.generator_count());
  for (i64 g : base.generators()) quotient_gens.push_back(g / base.d);
  try {
    e.dn_in_base = detail::quotient_member_by_sieve(quotient_gens, n);
  } catch (const budget_error&) {
    // Only fatal when this check alone would gate the fast path.
    if (e.shift_exceeds_rk_squared && e.shift_coprime_to_gcd) throw;
    e.dn_in_base = false;
  }
  return e;
}

// Dispatcher: decompose M as a shift of its base, take the fast path when
// all three checks pass, fall back to the classic computation otherwise.
// Results are identical either way; only the diagnostics differ.  Family
// caches are only built once the cheap probe has passed.
inline AutoAperyResult apery_auto(const NumericalMonoid& m) {
  AutoAperyResult out;
  if (m.generator_count() >= 2) {
    ShiftDecomposition dec = decompose_as_shift(m);
    out.eligibility = probe_eligibility(dec.base, dec.shift);
    if (out.eligibility->eligible()) {
      ShiftedFamily fam(dec.base);
      out.set = shifted_apery(fam, dec.shift);
      out.used_fast_path = true;
      return out;
    }
  }
  out.set = apery_multiplicity(m);
  return out;
}

}  // namespace apery
