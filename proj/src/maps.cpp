#include "gfperm/maps.hpp"

#include <algorithm>
#include <numeric>

#include "gfperm/rng.hpp"

namespace gfperm {

namespace {

void check_len(std::size_t got, std::uint64_t want, const char* what) {
  if (got != want)
    fail(Errc::length_mismatch, std::string(what) + ": table has " + std::to_string(got) +
                                    " entries, field needs " + std::to_string(want));
}

}  // namespace

GroundFn ground_fn_from_table(const FieldTower& t, std::vector<GroundElt> values,
                              std::string origin) {
  check_len(values.size(), t.order(), "ground function");
  for (auto v : values)
    if (v.v >= t.q()) fail(Errc::index_out_of_range, "ground value out of range");
  return GroundFn{std::move(values), std::move(origin)};
}

FieldMap field_map_from_table(const FieldTower& t, std::vector<Elt> values, std::string origin) {
  check_len(values.size(), t.order(), "field map");
  for (auto v : values)
    if (v.v >= t.order()) fail(Errc::index_out_of_range, "map value out of range");
  return FieldMap{std::move(values), std::move(origin)};
}

ScalarFn scalar_fn_from_table(const FieldTower& t, std::vector<GroundElt> values,
                              std::string origin) {
  check_len(values.size(), t.q(), "scalar function");
  for (auto v : values)
    if (v.v >= t.q()) fail(Errc::index_out_of_range, "scalar value out of range");
  return ScalarFn{std::move(values), std::move(origin)};
}

FieldMap identity_map(const FieldTower& t) {
  return field_map_from_fn(t, [](Elt x) { return x; }, "id");
}

FieldMap zero_map(const FieldTower& t) {
  return FieldMap{std::vector<Elt>(t.order()), "0"};
}

FieldMap trace_map(const FieldTower& t) {
  return field_map_from_fn(t, [&](Elt x) { return t.embed(t.trace(x)); }, "Tr");
}

ScalarFn identity_scalar(const FieldTower& t) {
  return scalar_fn_from_fn(t, [](GroundElt u) { return u; }, "u");
}

ScalarFn zero_scalar(const FieldTower& t) {
  return ScalarFn{std::vector<GroundElt>(t.q()), "0"};
}

ScalarFn power_scalar(const FieldTower& t, std::uint64_t e) {
  return scalar_fn_from_fn(
      t, [&](GroundElt u) { return t.gpow(u, std::int64_t(e)); }, "u^" + std::to_string(e));
}

Elt eval_poly(const FieldTower& t, std::span<const PolyTerm> terms, Elt x) {
  Elt acc{};
  for (const auto& term : terms) {
    if (term.exponent > t.order() - 1)
      fail(Errc::exponent_out_of_range,
           "exponent " + std::to_string(term.exponent) + " exceeds q^n - 1");
    acc = t.add(acc, t.mul(term.coeff, t.pow(x, std::int64_t(term.exponent))));
  }
  return acc;
}

namespace {

std::string poly_origin(std::span<const PolyTerm> terms) {
  std::string s;
  for (const auto& term : terms) {
    if (!s.empty()) s += " + ";
    s += std::to_string(term.coeff.v) + "*x^" + std::to_string(term.exponent);
  }
  return s.empty() ? "0" : s;
}

}  // namespace

FieldMap field_map_from_poly(const FieldTower& t, std::span<const PolyTerm> terms,
                             std::string origin) {
  if (origin == "poly") origin = poly_origin(terms);
  return field_map_from_fn(t, [&](Elt x) { return eval_poly(t, terms, x); }, std::move(origin));
}

GroundFn trace_of_poly(const FieldTower& t, std::span<const PolyTerm> terms) {
  return ground_fn_from_fn(t, [&](Elt x) { return t.trace(eval_poly(t, terms, x)); },
                           "Tr(" + poly_origin(terms) + ")");
}

GroundFn trace_compose(const FieldTower& t, const FieldMap& g) {
  check_len(g.table.size(), t.order(), "trace_compose");
  return ground_fn_from_fn(t, [&](Elt x) { return t.trace(g(x)); }, "Tr(" + g.origin + ")");
}

LinearMap linear_map_from_coeffs(const FieldTower& t, std::vector<Elt> coeffs) {
  if (coeffs.size() != t.n()) fail(Errc::length_mismatch, "expected n q-power coefficients");
  LinearMap l;
  l.coeffs = std::move(coeffs);
  l.table.resize(t.order());
  for (std::uint64_t i = 0; i < t.order(); ++i) {
    Elt x{std::uint32_t(i)}, acc{};
    for (std::uint32_t k = 0; k < t.n(); ++k)
      acc = t.add(acc, t.mul(l.coeffs[k], t.frobenius(x, k)));
    l.table[i] = acc;
  }

  // re-verify additivity and F_q-homogeneity; exhaustive when affordable
  const std::uint64_t order = t.order();
  auto check_pair = [&](std::uint64_t a, std::uint64_t b) {
    Elt ea{std::uint32_t(a)}, eb{std::uint32_t(b)};
    if (l.table[t.add(ea, eb).v] != t.add(l.table[a], l.table[b]))
      fail(Errc::not_linear, "additivity failed at (" + std::to_string(a) + ", " + std::to_string(b) + ")");
  };
  auto check_hom = [&](std::uint32_t u, std::uint64_t a) {
    Elt ea{std::uint32_t(a)};
    GroundElt gu{u};
    if (l.table[t.smul(gu, ea).v] != t.smul(gu, l.table[a]))
      fail(Errc::not_linear, "homogeneity failed at (u=" + std::to_string(u) + ", " + std::to_string(a) + ")");
  };
  if (order <= 4096) {
    for (std::uint64_t a = 0; a < order; ++a)
      for (std::uint64_t b = a; b < order; ++b) check_pair(a, b);
  } else {
    Rng rng(0x11edc0de);
    for (int i = 0; i < 4096; ++i) check_pair(rng.below(order), rng.below(order));
  }
  if (std::uint64_t(t.q()) * order <= (1ull << 22)) {
    for (std::uint32_t u = 0; u < t.q(); ++u)
      for (std::uint64_t a = 0; a < order; ++a) check_hom(u, a);
  } else {
    Rng rng(0x5ca1ab1e);
    for (int i = 0; i < 4096; ++i) check_hom(std::uint32_t(rng.below(t.q())), rng.below(order));
  }
  return l;
}

LinearMap compose_linear(const FieldTower& t, const LinearMap& outer, const LinearMap& inner) {
  // (sum b_j X^{q^j}) o (sum a_i X^{q^i}) = sum_k (sum_{i+j=k mod n} b_j a_i^{q^j}) X^{q^k}
  std::vector<Elt> c(t.n());
  for (std::uint32_t j = 0; j < t.n(); ++j) {
    if (outer.coeffs[j].v == 0) continue;
    for (std::uint32_t i = 0; i < t.n(); ++i) {
      if (inner.coeffs[i].v == 0) continue;
      const std::uint32_t k = (i + j) % t.n();
      c[k] = t.add(c[k], t.mul(outer.coeffs[j], t.frobenius(inner.coeffs[i], j)));
    }
  }
  return linear_map_from_coeffs(t, std::move(c));
}

KernelImage kernel_and_image(const FieldTower& t, const LinearMap& l) {
  KernelImage ki;
  std::vector<std::uint8_t> seen(t.order(), 0);
  for (std::uint64_t i = 0; i < t.order(); ++i) {
    const Elt y = l.table[i];
    if (y.v == 0) ki.kernel.push_back(Elt{std::uint32_t(i)});
    seen[y.v] = 1;
  }
  for (std::uint64_t i = 0; i < t.order(); ++i)
    if (seen[i]) ki.image.push_back(Elt{std::uint32_t(i)});
  return ki;
}

FieldMap compose(const FieldTower& t, const FieldMap& outer, const FieldMap& inner) {
  check_len(outer.table.size(), t.order(), "compose outer");
  check_len(inner.table.size(), t.order(), "compose inner");
  std::vector<Elt> v(t.order());
  for (std::uint64_t i = 0; i < t.order(); ++i) v[i] = outer.table[inner.table[i].v];
  return FieldMap{std::move(v), outer.origin + " . " + inner.origin};
}

GroundFn scalar_compose(const FieldTower& t, const ScalarFn& h, const GroundFn& f) {
  check_len(h.table.size(), t.q(), "scalar_compose h");
  check_len(f.table.size(), t.order(), "scalar_compose f");
  std::vector<GroundElt> v(t.order());
  for (std::uint64_t i = 0; i < t.order(); ++i) v[i] = h.table[f.table[i].v];
  return GroundFn{std::move(v), h.origin + " . " + f.origin};
}

bool is_permutation_table(std::span<const Elt> table) {
  std::vector<std::uint8_t> seen(table.size(), 0);
  for (const Elt y : table) {
    if (y.v >= table.size() || seen[y.v]) return false;
    seen[y.v] = 1;
  }
  return true;
}

bool is_permutation_scalar_table(std::span<const GroundElt> table) {
  std::vector<std::uint8_t> seen(table.size(), 0);
  for (const GroundElt y : table) {
    if (y.v >= table.size() || seen[y.v]) return false;
    seen[y.v] = 1;
  }
  return true;
}

std::vector<Elt> inverse_table(std::span<const Elt> table) {
  std::vector<Elt> inv(table.size());
  std::vector<std::uint8_t> seen(table.size(), 0);
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Elt y = table[i];
    if (y.v >= table.size() || seen[y.v])
      fail(Errc::invariant_violation, "inverse_table on a non-permutation");
    seen[y.v] = 1;
    inv[y.v] = Elt{std::uint32_t(i)};
  }
  return inv;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::permutation: return "permutation";
    case Verdict::q_to_1: return "q-to-1";
    case Verdict::not_permutation: return "not-permutation";
  }
  return "?";
}

Verdict classify_table(std::span<const Elt> table, std::uint32_t q) {
  std::vector<std::uint32_t> count(table.size(), 0);
  for (const Elt y : table) ++count[y.v];
  bool perm = true, uniform_q = true;
  for (const std::uint32_t c : count) {
    if (c != 1) perm = false;
    if (c != 0 && c != q) uniform_q = false;
  }
  if (perm) return Verdict::permutation;
  if (uniform_q) return Verdict::q_to_1;
  return Verdict::not_permutation;
}

}  // namespace gfperm
