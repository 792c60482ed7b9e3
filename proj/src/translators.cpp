#include "gfperm/translators.hpp"

#include <algorithm>

namespace gfperm {

namespace {

// holds f(x + u*alpha) - f(x) == u*a for all x
bool holds_for_u(const FieldTower& t, const GroundFn& f, Elt alpha, GroundElt a, GroundElt u) {
  const Elt step = t.smul(u, alpha);
  const GroundElt want = t.gmul(u, a);
  for (std::uint64_t i = 0; i < t.order(); ++i) {
    const Elt x{std::uint32_t(i)};
    if (t.gsub(f(t.add(x, step)), f(x)) != want) return false;
  }
  return true;
}

std::optional<GroundElt> value_via(const FieldTower& t, const GroundFn& f, Elt alpha,
                                   std::span<const GroundElt> us) {
  if (alpha.v == 0) fail(Errc::zero_alpha, "translators are nonzero by definition");
  const GroundElt a = t.gsub(f(alpha), f(Elt{}));
  for (const GroundElt u : us)
    if (!holds_for_u(t, f, alpha, a, u)) return std::nullopt;
  return a;
}

std::vector<GroundElt> fp_basis_of_fq(const FieldTower& t) {
  std::vector<GroundElt> basis(t.m());
  std::uint32_t pw = 1;
  for (std::uint32_t j = 0; j < t.m(); ++j) {
    basis[j] = GroundElt{pw};
    pw *= t.p();
  }
  return basis;
}

std::vector<GroundElt> all_nonzero_fq(const FieldTower& t) {
  std::vector<GroundElt> us(t.q() - 1);
  for (std::uint32_t u = 1; u < t.q(); ++u) us[u - 1] = GroundElt{u};
  return us;
}

}  // namespace

bool check_cert(const FieldTower& t, const GroundFn& f, const TranslatorCert& cert) {
  if (cert.alpha.v == 0) return false;
  if (t.gsub(f(cert.alpha), f(Elt{})) != cert.value) return false;
  for (std::uint32_t u = 1; u < t.q(); ++u)
    if (!holds_for_u(t, f, cert.alpha, cert.value, GroundElt{u})) return false;
  return true;
}

std::optional<GroundElt> translator_value(const FieldTower& t, const GroundFn& f, Elt alpha) {
  return value_via(t, f, alpha, fp_basis_of_fq(t));
}

std::optional<GroundElt> translator_value_full(const FieldTower& t, const GroundFn& f, Elt alpha) {
  return value_via(t, f, alpha, all_nonzero_fq(t));
}

namespace {

// Greedy basis extraction over the raw membership table. Walking the span as
// it grows re-verifies closure and the linearity of the value map in
// O(|Lambda| * q); any miss means the subspace law is broken.
TranslatorSpace finish_lambda_space(const FieldTower& t, std::vector<std::int64_t> value_of) {
  TranslatorSpace s;
  s.q = t.q();
  s.value_of = std::move(value_of);
  const std::uint64_t order = t.order();

  std::vector<std::uint8_t> in_span(order, 0);
  in_span[0] = 1;
  std::vector<std::uint32_t> span_list{0};
  std::uint64_t member_count = 1;
  for (std::uint64_t idx = 1; idx < order; ++idx) {
    if (s.value_of[idx] < 0) continue;
    ++member_count;
    if (in_span[idx]) continue;
    const Elt nb{std::uint32_t(idx)};
    const GroundElt nbv{std::uint32_t(s.value_of[idx])};
    s.basis.push_back(nb);
    s.basis_values.push_back(nbv);
    const std::vector<std::uint32_t> old = span_list;
    for (std::uint32_t c = 1; c < t.q(); ++c) {
      const Elt mult = t.smul(GroundElt{c}, nb);
      const GroundElt mval = t.gmul(GroundElt{c}, nbv);
      for (const std::uint32_t sidx : old) {
        const Elt e = t.add(Elt{sidx}, mult);
        const std::int64_t got = s.value_of[e.v];
        if (got < 0)
          fail(Errc::invariant_violation,
               "translator set is not closed under addition at index " + std::to_string(e.v));
        const GroundElt want = t.gadd(GroundElt{std::uint32_t(s.value_of[sidx])}, mval);
        if (std::uint32_t(got) != want.v)
          fail(Errc::invariant_violation,
               "translator value map is not linear at index " + std::to_string(e.v));
        if (!in_span[e.v]) {
          in_span[e.v] = 1;
          span_list.push_back(e.v);
        }
      }
    }
  }
  if (member_count != span_list.size())
    fail(Errc::invariant_violation, "translator set is not an F_q-subspace");
  return s;
}

std::vector<std::int64_t> init_values(std::uint64_t order) {
  std::vector<std::int64_t> v(order, -1);
  v[0] = 0;  // 0 belongs to Lambda(f) with value 0 by convention
  return v;
}

}  // namespace

TranslatorSpace lambda_space(const FieldTower& t, const GroundFn& f) {
  auto value_of = init_values(t.order());
  const std::int64_t order = std::int64_t(t.order());
#pragma omp parallel for schedule(dynamic, 32)
  for (std::int64_t idx = 1; idx < order; ++idx) {
    const auto a = translator_value(t, f, Elt{std::uint32_t(idx)});
    if (a) value_of[idx] = a->v;
  }
  return finish_lambda_space(t, std::move(value_of));
}

TranslatorSpace lambda_space_serial(const FieldTower& t, const GroundFn& f) {
  auto value_of = init_values(t.order());
  for (std::uint64_t idx = 1; idx < t.order(); ++idx) {
    const auto a = translator_value(t, f, Elt{std::uint32_t(idx)});
    if (a) value_of[idx] = a->v;
  }
  return finish_lambda_space(t, std::move(value_of));
}

ConstructedFn lai_construct(const FieldTower& t, const FieldMap& h_map, Elt gamma, Elt beta) {
  if (gamma.v == 0) fail(Errc::zero_gamma, "gamma must be nonzero");
  if (h_map.table.size() != t.order()) fail(Errc::length_mismatch, "H table size");
  const Elt gq1 = t.pow(gamma, std::int64_t(t.q()) - 1);
  GroundFn f = ground_fn_from_fn(
      t,
      [&](Elt x) {
        const Elt inner = t.sub(t.frobenius(x, 1), t.mul(gq1, x));
        return t.trace(t.add(h_map(inner), t.mul(beta, x)));
      },
      "Tr(H(x^q - g^(q-1) x) + b x)[gamma=" + std::to_string(gamma.v) +
          ", beta=" + std::to_string(beta.v) + "]");
  const TranslatorCert cert{gamma, t.trace(t.mul(beta, gamma))};
  if (!check_cert(t, f, cert))
    fail(Errc::cert_failed, "constructed certificate failed its own verification");
  return ConstructedFn{std::move(f), cert};
}

DerivedFn deriv_construct(const FieldTower& t, const GroundFn& g, Elt alpha) {
  if (alpha.v == 0) fail(Errc::zero_alpha, "alpha must be nonzero");
  if (g.table.size() != t.order()) fail(Errc::length_mismatch, "g table size");
  GroundFn f = ground_fn_from_fn(
      t,
      [&](Elt x) {
        GroundElt acc{};
        for (std::uint32_t u = 0; u < t.q(); ++u)
          acc = t.gadd(acc, g(t.add(x, t.smul(GroundElt{u}, alpha))));
        return acc;
      },
      "sum_u g(x + u*a)[alpha=" + std::to_string(alpha.v) + "]");
  DerivedFn out;
  out.certs.reserve(t.q() - 1);
  for (std::uint32_t c = 1; c < t.q(); ++c) {
    const TranslatorCert cert{t.smul(GroundElt{c}, alpha), GroundElt{}};
    if (!check_cert(t, f, cert))
      fail(Errc::cert_failed, "derived sum is missing a 0-translator at c=" + std::to_string(c));
    out.certs.push_back(cert);
  }
  out.f = std::move(f);
  return out;
}

MonomialFn monom_construct(const FieldTower& t, Elt beta) {
  if (t.p() == 2) fail(Errc::even_characteristic, "construction needs odd characteristic");
  if (t.n() % 4 != 0) fail(Errc::bad_degree, "construction needs n divisible by 4");
  const std::uint64_t qq = std::uint64_t(t.q()) * t.q();
  const std::uint64_t num = t.order() - 1;
  const std::uint64_t den = 2 * (qq - 1);
  if (num % den != 0) fail(Errc::invariant_violation, "coset exponent is not integral");
  const std::uint64_t e = num / den;
  const std::uint64_t s = num / (qq - 1);  // F_{q^2}^* is generated by lambda^s

  const PolyTerm terms[] = {{t.one(), std::uint64_t(t.q()) + 1}, {beta, 1}};
  GroundFn f = trace_of_poly(t, terms);
  f.origin = "Tr(x^(q+1) + b x)[beta=" + std::to_string(beta.v) + "]";

  MonomialFn out;
  const Elt lambda = t.primitive_element();
  for (std::uint64_t k = 0; k < qq - 1; ++k)
    out.gamma_coset.push_back(t.pow(lambda, std::int64_t(e + k * s)));
  std::sort(out.gamma_coset.begin(), out.gamma_coset.end());

  for (const Elt gamma : out.gamma_coset) {
    if (t.add(t.frobenius(gamma, 2), gamma).v != 0)
      fail(Errc::invariant_violation, "coset member fails gamma^(q^2) = -gamma");
    if (t.trace(t.pow(gamma, std::int64_t(t.q()) + 1)).v != 0)
      fail(Errc::invariant_violation, "coset member fails Tr(gamma^(q+1)) = 0");
    const TranslatorCert cert{gamma, t.trace(t.mul(beta, gamma))};
    if (!check_cert(t, f, cert))
      fail(Errc::cert_failed, "coset member is not a translator, gamma=" + std::to_string(gamma.v));
    out.certs.push_back(cert);
  }
  out.f = std::move(f);
  return out;
}

KernelTranslatorReport verify_kernel_in_lambda(const FieldTower& t, const LinearMap& l,
                                               const FieldMap& h_map, Elt beta) {
  if (is_permutation_table(l.table))
    fail(Errc::bijective_l, "L is bijective, its kernel is trivial");
  if (h_map.table.size() != t.order()) fail(Errc::length_mismatch, "H table size");
  GroundFn f = ground_fn_from_fn(
      t, [&](Elt x) { return t.trace(t.add(h_map(l(x)), t.mul(beta, x))); },
      "Tr(H(L(x)) + b x)[beta=" + std::to_string(beta.v) + "]");
  KernelTranslatorReport rep;
  for (std::uint64_t i = 1; i < t.order(); ++i) {
    const Elt x{std::uint32_t(i)};
    if (l(x).v != 0) continue;
    const TranslatorCert cert{x, t.trace(t.mul(beta, x))};
    if (!check_cert(t, f, cert))
      fail(Errc::invariant_violation,
           "kernel element " + std::to_string(i) + " is not a translator");
    rep.kernel_certs.push_back(cert);
  }
  rep.f = std::move(f);
  return rep;
}

}  // namespace gfperm
