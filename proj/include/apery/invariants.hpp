#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "apery/apery_set.hpp"
#include "apery/checked_arith.hpp"
#include "apery/errors.hpp"
#include "apery/min_length.hpp"
#include "apery/monoid.hpp"
#include "apery/shifted.hpp"

// Invariants read off an Apéry set: Frobenius number, genus, gaps,
// pseudo-Frobenius numbers, type, Wilf number, symmetry flags.  For
// non-primitive T = dM the scaling convention F(T) = d*F(M), g(T) = d*g(M)
// applies; both formulas below absorb it without a case split.

namespace apery {

// F(M) = max Ap(M; x) - x.  Returns -1 for <1> (no gaps).
inline i64 frobenius(const AperySet& ap) {
  return checked_sub(ap.max_element(), ap.base_element);
}

// g(M) = d * sum over the Apéry set of floor(a / x); each class j
// contributes exactly its quotient-gap count.
inline i64 genus(const AperySet& ap) {
  i64 sum = 0;
  for (i64 a : ap.by_class) sum = checked_add(sum, a / ap.base_element);
  return checked_mul(sum, ap.monoid.d);
}

// All positive integers outside a primitive monoid, sorted.
inline std::vector<i64> gaps(const AperySet& ap) {
  if (!ap.monoid.primitive)
    throw input_error("a non-primitive monoid has infinitely many gaps; "
                      "pass its primitive quotient");
  std::vector<i64> out;
  i64 x = ap.base_element;
  for (std::size_t j = 1; j < ap.by_class.size(); ++j)
    for (i64 v = static_cast<i64>(j); v < ap.by_class[j]; v += x)
      out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

// PF(M) = {a - x : a maximal in Ap(M; x) under a <= b iff b - a in M}.
// Empty for <1>.  Quadratic in |Ap| with O(1) membership tests.
inline std::vector<i64> pseudo_frobenius(const AperySet& ap) {
  if (!ap.monoid.primitive)
    throw input_error("pseudo-Frobenius numbers require a primitive monoid");
  if (frobenius(ap) < 0) return {};  // the whole of Z>=0
  std::vector<i64> out;
  for (i64 a : ap.by_class) {
    bool maximal = true;
    for (i64 b : ap.by_class) {
      if (b != a && ap.contains(b - a)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(a - ap.base_element);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// W = k(F - g) - (F + 1); k is the embedding dimension.
inline i64 wilf_number(i64 frob, i64 genus_value, i64 embedding_dimension) {
  return checked_sub(checked_mul(embedding_dimension, checked_sub(frob, genus_value)),
                     checked_add(frob, 1));
}

struct SymmetryFlags {
  bool symmetric = false;        // PF = {F}
  bool pseudosymmetric = false;  // PF = {F/2, F}, F even
};

inline SymmetryFlags symmetry_flags(const std::vector<i64>& pf, i64 frob) {
  SymmetryFlags f;
  f.symmetric = pf.size() == 1 && pf[0] == frob;
  f.pseudosymmetric =
      frob % 2 == 0 && pf.size() == 2 && pf[0] == frob / 2 && pf[1] == frob;
  return f;
}

struct InvariantReport {
  NumericalMonoid monoid;
  bool trivial = false;  // the (quotient) monoid is all of Z>=0
  i64 frobenius = -1;
  i64 genus = 0;
  std::vector<i64> pf;   // for non-primitive input: d * PF(quotient)
  i64 type = 0;
  i64 wilf = 0;
  i64 embedding_dimension = 1;
  bool symmetric = false;
  bool pseudosymmetric = false;
};

// Full report for one monoid.  Non-primitive monoids report the d-scaled
// Frobenius number and genus; PF scales by d as well (directly from the
// definition: m + t in dM' for all t forces d | m).
inline InvariantReport make_report(const NumericalMonoid& m, const AperySet& ap) {
  InvariantReport rep;
  rep.monoid = m;
  rep.embedding_dimension =
      m.minimal() ? static_cast<i64>(m.generator_count())
                  : static_cast<i64>(minimal_generators(m.generators()).size());
  rep.frobenius = frobenius(ap);
  rep.genus = genus(ap);
  rep.trivial = rep.frobenius < 0;
  if (!rep.trivial) {
    if (m.primitive) {
      rep.pf = pseudo_frobenius(ap);
    } else {
      AperySet quot;
      quot.monoid = monoid_from_generators([&] {
        std::vector<i64> qg;
        for (i64 g : m.generators()) qg.push_back(g / m.d);
        return qg;
      }());
      quot.base_element = ap.base_element / m.d;
      quot.by_class.reserve(ap.by_class.size());
      for (i64 a : ap.by_class) quot.by_class.push_back(a / m.d);
      for (i64 p : pseudo_frobenius(quot)) rep.pf.push_back(checked_mul(p, m.d));
    }
    rep.type = static_cast<i64>(rep.pf.size());
    SymmetryFlags f = symmetry_flags(rep.pf, rep.frobenius);
    rep.symmetric = f.symmetric;
    rep.pseudosymmetric = f.pseudosymmetric;
  }
  rep.wilf = wilf_number(rep.frobenius, rep.genus, rep.embedding_dimension);
  return rep;
}

// F(M_n) without building Ap(M_n): the maximal element of Ap(M_n) comes
// from the a in Ap(S; dn) maximizing m_S (largest a on ties, which is
// forced by maximizing a + m_S(a)*n over equal m_S).
inline i64 frobenius_shifted_fast(const ShiftedFamily& fam, i64 n) {
  ShiftEligibility e = fam.eligibility(n);
  if (!e.eligible())
    throw eligibility_error(e.first_failed(),
                            "fast Frobenius path requires " +
                                std::string(to_string(e.first_failed())));
  detail::require_shift_in_range(fam, n);
  i64 d = fam.d();
  i64 fq = fam.quotient_frobenius();
  auto bulk = detail::bulk_min_lengths(fam, n + std::max<i64>(fq, -1) + 1);
  i64 best_m = -1, best_a = -1;
  for (i64 i = 0; i < n; ++i) {
    bool in_s = i > fq || fam.quotient_contains(i);
    i64 a = in_s ? d * i : d * i + d * n;
    i64 m = bulk.values[static_cast<std::size_t>(in_s ? i : i + n)];
    if (m > best_m || (m == best_m && a > best_a)) {
      best_m = m;
      best_a = a;
    }
  }
  return checked_add(checked_sub(best_a, n), checked_mul(best_m, n));
}

// g(M_n) as the two-sum form over Ap(S; dn):
//   sum floor(a / n) + sum m_S(a).
inline i64 genus_shifted_fast(const ShiftedFamily& fam, i64 n) {
  ShiftEligibility e = fam.eligibility(n);
  if (!e.eligible())
    throw eligibility_error(e.first_failed(),
                            "fast genus path requires " +
                                std::string(to_string(e.first_failed())));
  detail::require_shift_in_range(fam, n);
  i64 d = fam.d();
  i64 fq = fam.quotient_frobenius();
  auto bulk = detail::bulk_min_lengths(fam, n + std::max<i64>(fq, -1) + 1);
  i64 floor_sum = 0, m_sum = 0;
  for (i64 i = 0; i < n; ++i) {
    bool in_s = i > fq || fam.quotient_contains(i);
    i64 a = in_s ? d * i : d * i + d * n;
    i64 m = bulk.values[static_cast<std::size_t>(in_s ? i : i + n)];
    floor_sum = checked_add(floor_sum, a / n);
    m_sum = checked_add(m_sum, m);
  }
  return checked_add(floor_sum, m_sum);
}

// Transport of the pseudo-Frobenius classes from shift n to n + r_k.
//
// P_n is the subset of Ap(S; dn) whose classes mod n carry PF(M_n).  The
// transported set is
//
//   i  ->  i            for i <  dn - r_k
//   i  ->  i + d*r_k    for i >= dn - r_k,
//
// and the contract is that the image equals P_{n+r_k} computed
// independently.  The split sits at dn - r_k because whether the Apéry
// element at i has a + r_j in M_n depends only on m_S values at i + r_j
// while i + r_j < dn, but gains an extra factorization route through the
// smallest generator once i + r_j reaches dn; elements in that boundary
// band (and the gap-shifted ones above dn) must track the base element
// as n grows, while everything lower is independent of n.  The variant
// that keeps the whole range i <= dn fixed misses the band and is
// reported as a diagnostic only.
struct PfTransport {
  i64 n = 0;
  i64 next_n = 0;             // n + r_k
  std::vector<i64> p_n;       // P_n, sorted
  std::vector<i64> p_next;    // P_{n+r_k}, computed independently
  std::vector<std::pair<i64, i64>> pairs;  // (i, image of i)
  bool bijection_verified = false;         // image == p_next
  bool fixed_below_dn_matches = false;     // diagnostic, see above
};

namespace detail {

// Recover P_n: map each PF element's class back to its Ap(S; dn) value.
inline std::vector<i64> pf_base_classes(const ShiftedFamily& fam, i64 n) {
  AperySet ap = shifted_apery(fam, n);
  std::vector<i64> pf = pseudo_frobenius(ap);
  i64 d = fam.d();
  i64 dn = checked_mul(d, n);
  i64 inv_d = d == 1 ? 1 : mod_inverse(d % n, n);
  std::vector<i64> out;
  out.reserve(pf.size());
  for (i64 p : pf) {
    i64 cls = p % n;  // class of the PF element, equals (d*i) mod n
    i64 idx = d == 1 ? cls : (static_cast<i64>((__int128(cls) * inv_d) % n));
    i64 value = fam.quotient_contains(idx) ? d * idx : d * idx + dn;
    out.push_back(value);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline PfTransport pf_transport(const ShiftedFamily& fam, i64 n) {
  i64 rk = fam.r_max();
  for (i64 shift : {n, checked_add(n, rk)}) {
    ShiftEligibility e = fam.eligibility(shift);
    if (!e.eligible())
      throw eligibility_error(e.first_failed(),
                              "PF transport requires eligibility at both shifts; "
                              "failed at n = " + std::to_string(shift));
  }
  PfTransport out;
  out.n = n;
  out.next_n = n + rk;
  out.p_n = detail::pf_base_classes(fam, n);
  out.p_next = detail::pf_base_classes(fam, out.next_n);

  i64 d = fam.d();
  i64 boundary = checked_sub(checked_mul(d, n), rk);  // dn - r_k
  std::vector<i64> image, fixed_variant;
  for (i64 i : out.p_n) {
    i64 mapped = i < boundary ? i : checked_add(i, checked_mul(d, rk));
    out.pairs.emplace_back(i, mapped);
    image.push_back(mapped);
    fixed_variant.push_back(i <= d * n ? i : checked_add(i, rk));
  }
  std::sort(image.begin(), image.end());
  std::sort(fixed_variant.begin(), fixed_variant.end());
  out.bijection_verified = image == out.p_next;
  out.fixed_below_dn_matches = fixed_variant == out.p_next;
  return out;
}

}  // namespace apery
