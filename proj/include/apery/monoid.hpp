#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "apery/checked_arith.hpp"
#include "apery/errors.hpp"

// Numerical monoids M = <n_1, ..., n_k> (additive submonoids of the
// non-negative integers) and their shifted-family decomposition
// M = M_n = <n, n+r_1, ..., n+r_k> over the base S = <r_1, ..., r_k>.
// All types here are immutable after construction.

namespace apery {

// Strictly increasing positive generators plus a minimality flag
// (true iff no generator is a non-negative combination of the others).
struct GeneratorTuple {
  std::vector<i64> values;
  bool minimal = false;
};

struct NumericalMonoid {
  GeneratorTuple gens;
  i64 d = 1;             // gcd of the generators
  i64 multiplicity = 1;  // smallest generator
  bool primitive = true; // d == 1

  const std::vector<i64>& generators() const { return gens.values; }
  i64 smallest() const { return gens.values.front(); }
  i64 largest() const { return gens.values.back(); }
  std::size_t generator_count() const { return gens.values.size(); }
  bool minimal() const { return gens.minimal; }
};

namespace detail {

// Membership sieves used for minimality testing are refused beyond this
// size; monoids that large are handled by the shifted fast path, which
// never needs one.
inline constexpr i64 kMinimalitySieveCap = 100'000'000;

// table[v] = v expressible as a non-negative combination of gens, v <= bound.
inline std::vector<char> membership_table(const std::vector<i64>& gens,
                                          i64 bound) {
  if (bound >= kMinimalitySieveCap)
    throw budget_error(
        "generators too large for direct minimality analysis (sieve of " +
        std::to_string(bound) + " entries refused)");
  std::vector<char> table(static_cast<std::size_t>(bound) + 1, 0);
  table[0] = 1;
  for (i64 v = 1; v <= bound; ++v) {
    for (i64 g : gens) {
      if (g > v) break;
      if (table[static_cast<std::size_t>(v - g)]) {
        table[static_cast<std::size_t>(v)] = 1;
        break;
      }
    }
  }
  return table;
}

}  // namespace detail

// The subset of generators that no other generators can produce.
// g is redundant iff g = a + b with a, b nonzero monoid elements, which
// for g in a deduplicated tuple is equivalent to g - h being a nonzero
// element for some generator h < g.
inline std::vector<i64> minimal_generators(const std::vector<i64>& sorted_gens) {
  if (sorted_gens.size() <= 1) return sorted_gens;
  // Sums of >= 2 generators exceed 2*min, so a tuple inside [min, 2*min)
  // is minimal without any sieve.  This covers every shifted monoid with
  // n > r_k, no matter how large the generators are.
  if (sorted_gens.back() - sorted_gens.front() < sorted_gens.front())
    return sorted_gens;
  auto table = detail::membership_table(sorted_gens, sorted_gens.back());
  std::vector<i64> out;
  for (i64 g : sorted_gens) {
    bool redundant = false;
    for (i64 h : sorted_gens) {
      if (h >= g) break;
      i64 rest = g - h;
      if (rest > 0 && table[static_cast<std::size_t>(rest)]) {
        redundant = true;
        break;
      }
    }
    if (!redundant) out.push_back(g);
  }
  return out;
}

inline NumericalMonoid monoid_from_generators(std::vector<i64> raw) {
  if (raw.empty()) throw input_error("a numerical monoid needs at least one generator");
  for (i64 g : raw)
    if (g <= 0)
      throw input_error("generators must be positive, got " + std::to_string(g));
  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());

  NumericalMonoid m;
  m.gens.values = std::move(raw);
  m.gens.minimal =
      minimal_generators(m.gens.values).size() == m.gens.values.size();
  m.d = std::reduce(m.gens.values.begin(), m.gens.values.end(), i64{0},
                    [](i64 a, i64 b) { return std::gcd(a, b); });
  m.multiplicity = m.gens.values.front();
  m.primitive = (m.d == 1);
  return m;
}

// M_n = <n, n+r_1, ..., n+r_k> for the base S = <r_1, ..., r_k>.
inline NumericalMonoid family_member(const NumericalMonoid& base, i64 n) {
  if (n < 1) throw input_error("shift must be positive");
  std::vector<i64> gens;
  gens.reserve(base.generator_count() + 1);
  gens.push_back(n);
  for (i64 r : base.generators()) gens.push_back(checked_add(n, r));
  return monoid_from_generators(std::move(gens));
}

struct ShiftDecomposition {
  i64 shift;             // n, the smallest generator
  NumericalMonoid base;  // S = <n_i - n : i >= 2>
};

// Every monoid with >= 2 generators falls into exactly one shifted family.
inline ShiftDecomposition decompose_as_shift(const NumericalMonoid& m) {
  if (m.generator_count() < 2)
    throw input_error("a single-generator monoid has no shift decomposition");
  i64 n = m.smallest();
  std::vector<i64> diffs;
  diffs.reserve(m.generator_count() - 1);
  for (std::size_t i = 1; i < m.generator_count(); ++i)
    diffs.push_back(m.generators()[i] - n);
  return {n, monoid_from_generators(std::move(diffs))};
}

}  // namespace apery
