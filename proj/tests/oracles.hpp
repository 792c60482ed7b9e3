#pragma once

// Deliberately naive recomputations used as independent cross-checks. Nothing
// here shares code with the library paths under test.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "gfperm/field_tower.hpp"
#include "gfperm/maps.hpp"

namespace oracles {

using gfperm::Elt;
using gfperm::FieldTower;
using gfperm::GroundElt;
using gfperm::GroundFn;

inline std::vector<std::uint32_t> fiber_histogram(const FieldTower& t,
                                                  const std::vector<Elt>& table) {
  std::vector<std::uint32_t> h(t.order(), 0);
  for (const Elt e : table) ++h[e.v];
  return h;
}

inline bool is_bijection(const FieldTower& t, const std::vector<Elt>& table) {
  for (const auto c : fiber_histogram(t, table))
    if (c != 1) return false;
  return true;
}

inline bool is_exactly_k_to_1(const FieldTower& t, const std::vector<Elt>& table,
                              std::uint32_t k) {
  for (const auto c : fiber_histogram(t, table))
    if (c != 0 && c != k) return false;
  return true;
}

// f(x + u*alpha) - f(x) == u*a for every x in the field and every u in F_q
inline bool is_translator(const FieldTower& t, const GroundFn& f, Elt alpha, GroundElt a) {
  for (std::uint64_t x = 0; x < t.order(); ++x)
    for (std::uint32_t u = 0; u < t.q(); ++u) {
      const Elt xe{std::uint32_t(x)};
      const Elt xs = t.add(xe, t.smul(GroundElt{u}, alpha));
      if (t.gsub(f(xs), f(xe)) != t.gmul(GroundElt{u}, a)) return false;
    }
  return true;
}

inline std::vector<Elt> compose(const std::vector<Elt>& outer, const std::vector<Elt>& inner) {
  std::vector<Elt> r(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) r[i] = outer[inner[i].v];
  return r;
}

inline std::vector<Elt> shift_table(const FieldTower& t, const GroundFn& f, Elt gamma) {
  std::vector<Elt> r(t.order());
  for (std::uint64_t x = 0; x < t.order(); ++x) {
    const Elt xe{std::uint32_t(x)};
    r[x] = t.add(xe, t.smul(f(xe), gamma));
  }
  return r;
}

struct CycleOracle {
  std::vector<std::uint64_t> lengths;  // sorted, cycles of length > 1 only
  std::uint64_t fixed = 0;
};

inline CycleOracle cycles(const FieldTower& t, const std::vector<Elt>& perm) {
  CycleOracle out;
  std::vector<char> seen(t.order(), 0);
  for (std::uint64_t i = 0; i < t.order(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0, j = i;
    while (!seen[j]) {
      seen[j] = 1;
      ++len;
      j = perm[j].v;
    }
    if (len == 1)
      ++out.fixed;
    else
      out.lengths.push_back(len);
  }
  std::sort(out.lengths.begin(), out.lengths.end());
  return out;
}

inline bool scalar_bijective(const FieldTower& t, const std::vector<GroundElt>& table) {
  std::vector<std::uint32_t> h(t.q(), 0);
  for (const GroundElt e : table) ++h[e.v];
  for (const auto c : h)
    if (c != 1) return false;
  return true;
}

}  // namespace oracles
