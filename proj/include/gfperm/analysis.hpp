#pragma once

#include <cstdint>
#include <vector>

#include "gfperm/field_tower.hpp"
#include "gfperm/maps.hpp"
#include "gfperm/perm_factory.hpp"
#include "gfperm/translators.hpp"

namespace gfperm {

// Orbit decomposition of a permutation. Cycles of length 1 are reported as
// fixed points; every proper cycle starts at its smallest element index and
// cycles are sorted by that start.
struct CycleDecomposition {
  std::vector<std::vector<Elt>> cycles;
  std::vector<Elt> fixed_points;

  std::uint64_t fixed_count() const { return fixed_points.size(); }
  std::vector<std::uint64_t> length_multiset() const;
};

// Decomposes x + g*f(x) without ever composing the map: fixed points are the
// zeros of f, every other orbit has the same length l (the characteristic
// when b = 0, the order of b+1 otherwise), and each orbit is produced by the
// closed-form step u_k = u + B_k*g*f(u). Each emitted orbit is re-checked
// against one actual application of the map per element.
CycleDecomposition cycle_structure_closed_form(const FieldTower& t, const GroundFn& f,
                                               Elt gamma, const TranslatorCert& cert);

// Plain orbit-following oracle.
CycleDecomposition cycle_structure_brute(const PermTable& p);

// Multipliers: all c (including 0) for which H(x) + c*x is a bijection.
struct MultiplierSet {
  std::vector<Elt> members;  // sorted by index
  bool contains(Elt c) const;
};

MultiplierSet mob_set(const FieldTower& t, const FieldMap& h);
MultiplierSet mob_set_serial(const FieldTower& t, const FieldMap& h);

// Directions: (H(x) - H(y)) / (x - y) over unordered pairs x != y.
struct DirectionSet {
  std::vector<Elt> members;  // sorted by index
  bool contains(Elt c) const;
};

DirectionSet direction_set(const FieldTower& t, const FieldMap& h);
DirectionSet direction_set_serial(const FieldTower& t, const FieldMap& h);

// c is a multiplier of H exactly when -c is not a direction of H.
struct DualityReport {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  bool pass() const { return violations == 0; }
};

DualityReport duality_check(const FieldTower& t, const FieldMap& h);

// Inverses of translators with value != -1 are multipliers of f. The subset
// is computed from the full translator space and checked element-by-element
// against the brute-forced multiplier set of x -> embed(f(x)).
struct InclusionReport {
  std::vector<Elt> subset;  // sorted
  std::uint64_t mob_size = 0;
  std::uint64_t lambda_dim = 0;
};

InclusionReport translator_direction_inclusion(const FieldTower& t, const GroundFn& f);

// For g fixing 0 and avoiding -1, h(x) = g(Tr(alpha*x)) has at least
// q^(n-1) - 1 multipliers, witnessed by {delta != 0 : Tr(alpha/delta) = 0}.
struct DirBoundReport {
  GroundFn h;
  std::vector<Elt> subset;  // sorted witnesses
  std::uint64_t mob_size = 0;
  std::uint64_t bound = 0;  // q^(n-1) - 1
};

DirBoundReport th_dir_bound(const FieldTower& t, const ScalarFn& g, Elt alpha);

}  // namespace gfperm
