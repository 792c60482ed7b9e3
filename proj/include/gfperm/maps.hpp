#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gfperm/field_tower.hpp"

namespace gfperm {

// f : F_{q^n} -> F_q as a dense table indexed by element index.
struct GroundFn {
  std::vector<GroundElt> table;
  std::string origin;  // symbolic descriptor, metadata only
  GroundElt operator()(Elt x) const { return table[x.v]; }
};

// F : F_{q^n} -> F_{q^n} as a dense table.
struct FieldMap {
  std::vector<Elt> table;
  std::string origin;
  Elt operator()(Elt x) const { return table[x.v]; }
};

// h : F_q -> F_q as a dense table of length q.
struct ScalarFn {
  std::vector<GroundElt> table;
  std::string origin;
  GroundElt operator()(GroundElt u) const { return table[u.v]; }
};

GroundFn ground_fn_from_table(const FieldTower& t, std::vector<GroundElt> values,
                              std::string origin = "table");
FieldMap field_map_from_table(const FieldTower& t, std::vector<Elt> values,
                              std::string origin = "table");
ScalarFn scalar_fn_from_table(const FieldTower& t, std::vector<GroundElt> values,
                              std::string origin = "table");

template <class F>
GroundFn ground_fn_from_fn(const FieldTower& t, F&& fn, std::string origin = "fn") {
  std::vector<GroundElt> v(t.order());
  for (std::uint64_t i = 0; i < t.order(); ++i) v[i] = fn(Elt{std::uint32_t(i)});
  return GroundFn{std::move(v), std::move(origin)};
}

template <class F>
FieldMap field_map_from_fn(const FieldTower& t, F&& fn, std::string origin = "fn") {
  std::vector<Elt> v(t.order());
  for (std::uint64_t i = 0; i < t.order(); ++i) v[i] = fn(Elt{std::uint32_t(i)});
  return FieldMap{std::move(v), std::move(origin)};
}

template <class F>
ScalarFn scalar_fn_from_fn(const FieldTower& t, F&& fn, std::string origin = "fn") {
  std::vector<GroundElt> v(t.q());
  for (std::uint32_t u = 0; u < t.q(); ++u) v[u] = fn(GroundElt{u});
  return ScalarFn{std::move(v), std::move(origin)};
}

FieldMap identity_map(const FieldTower& t);
FieldMap zero_map(const FieldTower& t);
FieldMap trace_map(const FieldTower& t);  // x -> Tr(x), embedded
ScalarFn identity_scalar(const FieldTower& t);
ScalarFn zero_scalar(const FieldTower& t);
ScalarFn power_scalar(const FieldTower& t, std::uint64_t e);  // u -> u^e

// Sparse polynomial sum(coeff * X^exponent); exponents must lie in
// [0, q^n - 1]. Evaluation uses x^e = x^(e mod (q^n - 1)) for x != 0 together
// with 0^0 = 1, 0^e = 0.
struct PolyTerm {
  Elt coeff;
  std::uint64_t exponent = 0;
};

Elt eval_poly(const FieldTower& t, std::span<const PolyTerm> terms, Elt x);
FieldMap field_map_from_poly(const FieldTower& t, std::span<const PolyTerm> terms,
                             std::string origin = "poly");
GroundFn trace_of_poly(const FieldTower& t, std::span<const PolyTerm> terms);
GroundFn trace_compose(const FieldTower& t, const FieldMap& g);  // x -> Tr(g(x))

// q-polynomial sum(coeffs[i] * X^(q^i)); additive and F_q-homogeneous, which
// construction re-verifies at desk scale.
struct LinearMap {
  std::vector<Elt> coeffs;  // length n
  std::vector<Elt> table;
  Elt operator()(Elt x) const { return table[x.v]; }
};

LinearMap linear_map_from_coeffs(const FieldTower& t, std::vector<Elt> coeffs);
// symbolic composition outer(inner) in the q-polynomial ring mod X^(q^n) - X
LinearMap compose_linear(const FieldTower& t, const LinearMap& outer, const LinearMap& inner);

struct KernelImage {
  std::vector<Elt> kernel;  // sorted by index
  std::vector<Elt> image;   // sorted by index
};
KernelImage kernel_and_image(const FieldTower& t, const LinearMap& l);

FieldMap compose(const FieldTower& t, const FieldMap& outer, const FieldMap& inner);
GroundFn scalar_compose(const FieldTower& t, const ScalarFn& h, const GroundFn& f);

// ---- table predicates ----

bool is_permutation_table(std::span<const Elt> table);
bool is_permutation_scalar_table(std::span<const GroundElt> table);
std::vector<Elt> inverse_table(std::span<const Elt> table);  // pre: permutation

enum class Verdict { permutation, q_to_1, not_permutation };
const char* to_string(Verdict v);
// permutation, exactly q-to-1 onto its image, or neither
Verdict classify_table(std::span<const Elt> table, std::uint32_t q);

}  // namespace gfperm
