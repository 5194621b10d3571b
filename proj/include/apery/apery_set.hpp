#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "apery/checked_arith.hpp"
#include "apery/errors.hpp"
#include "apery/monoid.hpp"

// Apéry sets: Ap(M; x) = {m in M : m - x not in M}, one element per
// admissible residue class mod x.  The general-purpose construction here
// is a single-source shortest path over residue classes of the primitive
// quotient (edge class -> class + g mod x with weight g per generator);
// it serves as the correctness baseline and the fallback for monoids the
// shifted fast path cannot handle.

namespace apery {

struct AperySet {
  NumericalMonoid monoid;
  i64 base_element = 1;  // x
  // Entry j is the least element of M congruent to j*d modulo x,
  // for j = 0 .. x/d - 1.  Entry 0 is always 0.
  std::vector<i64> by_class;

  std::size_t size() const { return by_class.size(); }

  i64 max_element() const {
    return *std::max_element(by_class.begin(), by_class.end());
  }

  // O(1) membership via the class representative.
  bool contains(i64 value) const {
    if (value < 0) return false;
    if (value % monoid.d != 0) return false;
    auto cls = static_cast<std::size_t>((value % base_element) / monoid.d);
    return value >= by_class[cls];
  }

  std::vector<i64> sorted_elements() const {
    std::vector<i64> out = by_class;
    std::sort(out.begin(), out.end());
    return out;
  }
};

namespace detail {

// Brauer/Schur bound: for a primitive tuple, F <= (g_1 - 1)(g_k - 1) - 1.
inline i64 frobenius_upper_bound(const std::vector<i64>& primitive_gens) {
  if (primitive_gens.front() == 1) return 0;
  return checked_mul(primitive_gens.front() - 1, primitive_gens.back() - 1);
}

inline bool quotient_member_by_sieve(const std::vector<i64>& quotient_gens,
                                     i64 value) {
  if (value < 0) return false;
  if (value == 0) return true;
  i64 bound = std::min(value, frobenius_upper_bound(quotient_gens));
  if (value > bound) return true;  // above every gap
  auto table = membership_table(quotient_gens, value);
  return table[static_cast<std::size_t>(value)] != 0;
}

}  // namespace detail

inline AperySet apery_classic(const NumericalMonoid& m, i64 x) {
  if (x <= 0) throw input_error("Apéry base element must be positive");
  if (x % m.d != 0)
    throw not_in_monoid(x, std::to_string(x) + " is not an element (gcd " +
                               std::to_string(m.d) + " does not divide it)");
  // Run on the primitive quotient M' = M/d and scale back at the end.
  i64 xq = x / m.d;
  std::vector<i64> gq;
  gq.reserve(m.generator_count());
  for (i64 g : m.generators()) gq.push_back(g / m.d);
  if (!detail::quotient_member_by_sieve(gq, xq))
    throw not_in_monoid(x, std::to_string(x) + " is not an element of the monoid");

  auto n_classes = static_cast<std::size_t>(xq);
  std::vector<std::pair<i64, i64>> edges;  // (step mod xq, weight)
  for (i64 g : gq)
    if (g % xq != 0) edges.emplace_back(g % xq, g);

  constexpr i64 kUnreached = -1;
  std::vector<i64> dist(n_classes, kUnreached);
  using Entry = std::pair<i64, i64>;  // (distance, class)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  queue.emplace(0, 0);
  std::size_t settled = 0;
  while (!queue.empty() && settled < n_classes) {
    auto [du, u] = queue.top();
    queue.pop();
    auto ui = static_cast<std::size_t>(u);
    if (dist[ui] != kUnreached) continue;
    dist[ui] = du;
    ++settled;
    for (auto [step, w] : edges) {
      i64 v = u + step;
      if (v >= xq) v -= xq;
      if (dist[static_cast<std::size_t>(v)] == kUnreached)
        queue.emplace(checked_add(du, w), v);
    }
  }
  // gcd of the quotient generators is 1, so every class is reachable.

  AperySet out;
  out.monoid = m;
  out.base_element = x;
  out.by_class.resize(n_classes);
  for (std::size_t j = 0; j < n_classes; ++j)
    out.by_class[j] = checked_mul(dist[j], m.d);
  return out;
}

// Ap(M) = Ap(M; n_1).
inline AperySet apery_multiplicity(const NumericalMonoid& m) {
  return apery_classic(m, m.multiplicity);
}

}  // namespace apery
