#include "gfperm/perm_factory.hpp"

#include <algorithm>
#include <numeric>

namespace gfperm {

namespace {

void require_cert(const FieldTower& t, const GroundFn& f, Elt gamma, const TranslatorCert& cert,
                  const char* who) {
  if (cert.alpha != gamma)
    fail(Errc::cert_mismatch, std::string(who) + ": certificate is for a different element");
  if (!check_cert(t, f, cert))
    fail(Errc::cert_mismatch, std::string(who) + ": certificate does not hold for this f");
}

std::vector<Elt> shift_table(const FieldTower& t, const GroundFn& f, Elt gamma) {
  std::vector<Elt> table(t.order());
  for (std::uint64_t i = 0; i < t.order(); ++i) {
    const Elt x{std::uint32_t(i)};
    table[i] = t.add(x, t.smul(f(x), gamma));
  }
  return table;
}

FiberMap fiber_from_table(const FieldTower& t, std::vector<Elt> table, std::string provenance) {
  if (classify_table(table, t.q()) != Verdict::q_to_1)
    fail(Errc::invariant_violation, provenance + ": expected an exactly q-to-1 map");
  return FiberMap{std::move(table), t.q(), std::move(provenance)};
}

std::string idx(Elt a) { return std::to_string(a.v); }
std::string idx(GroundElt a) { return std::to_string(a.v); }

}  // namespace

PermTable perm_from_table(std::vector<Elt> table, std::string provenance) {
  if (!is_permutation_table(table))
    fail(Errc::invariant_violation, provenance + ": table is not a bijection");
  return PermTable{std::move(table), std::move(provenance), std::nullopt};
}

PermOrFiber shift_perm(const FieldTower& t, const GroundFn& f, Elt gamma,
                       const TranslatorCert& cert) {
  require_cert(t, f, gamma, cert, "shift_perm");
  auto table = shift_table(t, f, gamma);
  const std::string prov =
      "x + g*f(x)[gamma=" + idx(gamma) + ", b=" + idx(cert.value) + ", f=" + f.origin + "]";
  if (cert.value != t.gminus_one()) return perm_from_table(std::move(table), prov);
  return fiber_from_table(t, std::move(table), prov);
}

PermTable shift_perm_inverse(const FieldTower& t, const GroundFn& f, Elt gamma,
                             const TranslatorCert& cert) {
  require_cert(t, f, gamma, cert, "shift_perm_inverse");
  if (cert.value == t.gminus_one())
    fail(Errc::b_is_minus_one, "b = -1: the shift is q-to-1, not invertible");
  const Elt coeff = t.smul(t.ginv(t.gadd(cert.value, t.gone())), gamma);  // gamma/(b+1)
  std::vector<Elt> inv_table(t.order());
  for (std::uint64_t i = 0; i < t.order(); ++i) {
    const Elt x{std::uint32_t(i)};
    inv_table[i] = t.sub(x, t.mul(coeff, t.embed(f(x))));
  }
  const auto fwd = shift_table(t, f, gamma);
  for (std::uint64_t i = 0; i < t.order(); ++i) {
    if (inv_table[fwd[i].v].v != i || fwd[inv_table[i].v].v != i)
      fail(Errc::invariant_violation, "closed-form inverse does not invert the shift");
  }
  return PermTable{std::move(inv_table),
                   "x - (g/(b+1))*f(x)[gamma=" + idx(gamma) + ", b=" + idx(cert.value) + "]",
                   std::nullopt};
}

BkCoefficient bk(const FieldTower& t, std::uint64_t k, GroundElt b) {
  BkCoefficient out{k, b, GroundElt{}};
  if (b.v == 0) {
    out.value = t.ground_of_int(k);
  } else {
    const GroundElt b1 = t.gadd(b, t.gone());
    out.value = t.gdiv(t.gsub(t.gpow(b1, std::int64_t(k)), t.gone()), b);
  }
  return out;
}

PermOrFiber iterate_closed_form(const FieldTower& t, const GroundFn& f, Elt gamma,
                                const TranslatorCert& cert, std::uint64_t k) {
  require_cert(t, f, gamma, cert, "iterate_closed_form");
  const GroundElt bkv = bk(t, k, cert.value).value;
  const Elt step = t.smul(bkv, gamma);  // B_k * gamma
  std::vector<Elt> table(t.order());
  for (std::uint64_t i = 0; i < t.order(); ++i) {
    const Elt x{std::uint32_t(i)};
    table[i] = t.add(x, t.mul(step, t.embed(f(x))));
  }
  const std::string prov = "x + B_k*g*f(x)[k=" + std::to_string(k) + ", gamma=" + idx(gamma) +
                           ", b=" + idx(cert.value) + "]";
  if (is_permutation_table(table)) return perm_from_table(std::move(table), prov);
  return fiber_from_table(t, std::move(table), prov);
}

PermOrFiber linear_compose_perm(const FieldTower& t, const LinearMap& l, const GroundFn& f,
                                Elt gamma, const TranslatorCert& cert) {
  if (!is_permutation_table(l.table)) fail(Errc::non_bijective_l, "L must be bijective");
  require_cert(t, f, gamma, cert, "linear_compose_perm");
  const Elt lg = l(gamma);
  std::vector<Elt> table(t.order());
  for (std::uint64_t i = 0; i < t.order(); ++i) {
    const Elt x{std::uint32_t(i)};
    table[i] = t.add(l(x), t.mul(lg, t.embed(f(x))));
  }
  // must agree with L applied after the plain shift
  const auto inner = shift_table(t, f, gamma);
  for (std::uint64_t i = 0; i < t.order(); ++i)
    if (table[i] != l(inner[i]))
      fail(Errc::invariant_violation, "L(x) + L(g) f(x) is not L o (x + g f(x))");
  const std::string prov =
      "L(x) + L(g)*f(x)[gamma=" + idx(gamma) + ", b=" + idx(cert.value) + "]";
  if (cert.value != t.gminus_one()) return perm_from_table(std::move(table), prov);
  return fiber_from_table(t, std::move(table), prov);
}

PermTable two_translator_perm(const FieldTower& t, const GroundFn& f, const GroundFn& g,
                              Elt gamma, Elt delta, const TranslatorCert& b1_cert,
                              const TranslatorCert& b2_cert, const TranslatorCert& d1_cert,
                              const TranslatorCert& d2_cert) {
  require_cert(t, f, gamma, b1_cert, "two_translator_perm(b1)");
  require_cert(t, g, gamma, b2_cert, "two_translator_perm(b2)");
  require_cert(t, f, delta, d1_cert, "two_translator_perm(d1)");
  require_cert(t, g, delta, d2_cert, "two_translator_perm(d2)");
  const GroundElt b1 = b1_cert.value, b2 = b2_cert.value;
  const GroundElt d1 = d1_cert.value, d2 = d2_cert.value;
  if (b1 == t.gminus_one())
    fail(Errc::hypothesis_failed, "b1 = -1 (need b1 != -1)");
  const GroundElt mixed = t.gsub(d2, t.gdiv(t.gmul(d1, b2), t.gadd(b1, t.gone())));
  if (mixed == t.gminus_one())
    fail(Errc::hypothesis_failed, "d2 - d1*b2/(b1+1) = -1 (need it != -1)");
  std::vector<Elt> table(t.order());
  for (std::uint64_t i = 0; i < t.order(); ++i) {
    const Elt x{std::uint32_t(i)};
    table[i] = t.add(x, t.add(t.smul(f(x), gamma), t.smul(g(x), delta)));
  }
  return perm_from_table(std::move(table), "x + g*f(x) + d*g(x)[gamma=" + idx(gamma) +
                                               ", delta=" + idx(delta) + "]");
}

namespace {

FamilyResult finish_family(const FieldTower& t, FieldMap map, Criterion crit) {
  FamilyResult r;
  r.verdict = classify_table(map.table, t.q());
  if (crit.sufficient_only) {
    if (crit.holds && r.verdict != Verdict::permutation)
      fail(Errc::invariant_violation,
           map.origin + ": criterion holds but the table is not a bijection");
  } else {
    if (crit.holds != (r.verdict == Verdict::permutation))
      fail(Errc::invariant_violation,
           map.origin + ": criterion and brute-force bijectivity disagree");
  }
  if (r.verdict == Verdict::permutation)
    r.perm = PermTable{map.table, map.origin, std::nullopt};
  else if (r.verdict == Verdict::q_to_1)
    r.fibers = FiberMap{map.table, t.q(), map.origin};
  r.criterion = std::move(crit);
  r.map = std::move(map);
  return r;
}

}  // namespace

FamilyResult general_h_perm(const FieldTower& t, const GroundFn& f, Elt gamma,
                            const TranslatorCert& cert, const ScalarFn& h) {
  require_cert(t, f, gamma, cert, "general_h_perm");
  if (h.table.size() != t.q()) fail(Errc::length_mismatch, "h table size");
  const GroundElt b = cert.value;
  FieldMap map = field_map_from_fn(
      t, [&](Elt x) { return t.add(x, t.smul(h(f(x)), gamma)); },
      "x + g*h(f(x))[gamma=" + idx(gamma) + ", b=" + idx(b) + ", h=" + h.origin + "]");
  std::vector<GroundElt> crit_table(t.q());
  for (std::uint32_t u = 0; u < t.q(); ++u)
    crit_table[u] = t.gadd(t.gmul(b, h(GroundElt{u})), GroundElt{u});
  Criterion crit;
  crit.name = "u -> b*h(u) + u permutes F_q";
  crit.holds = is_permutation_scalar_table(crit_table);
  crit.detail = "b=" + idx(b);
  return finish_family(t, std::move(map), std::move(crit));
}

FamilyResult linear_general_h_perm(const FieldTower& t, const LinearMap& l, const GroundFn& f,
                                   Elt gamma, const TranslatorCert& cert, const ScalarFn& h) {
  if (!is_permutation_table(l.table)) fail(Errc::non_bijective_l, "L must be bijective");
  require_cert(t, f, gamma, cert, "linear_general_h_perm");
  if (h.table.size() != t.q()) fail(Errc::length_mismatch, "h table size");
  const GroundElt b = cert.value;
  const Elt lg = l(gamma);
  FieldMap map = field_map_from_fn(
      t, [&](Elt x) { return t.add(l(x), t.mul(lg, t.embed(h(f(x))))); },
      "L(x) + L(g)*h(f(x))[gamma=" + idx(gamma) + ", b=" + idx(b) + ", h=" + h.origin + "]");
  // equals L after the plain h-shift
  for (std::uint64_t i = 0; i < t.order(); ++i) {
    const Elt x{std::uint32_t(i)};
    if (map.table[i] != l(t.add(x, t.smul(h(f(x)), gamma))))
      fail(Errc::invariant_violation, "L(x) + L(g) h(f(x)) is not L o (x + g h(f(x)))");
  }
  std::vector<GroundElt> crit_table(t.q());
  for (std::uint32_t u = 0; u < t.q(); ++u)
    crit_table[u] = t.gadd(t.gmul(b, h(GroundElt{u})), GroundElt{u});
  Criterion crit;
  crit.name = "u -> b*h(u) + u permutes F_q";
  crit.holds = is_permutation_scalar_table(crit_table);
  crit.detail = "b=" + idx(b);
  return finish_family(t, std::move(map), std::move(crit));
}

FamilyResult marcos_pp(const FieldTower& t, const LinearMap& l, const ScalarFn& h, Elt gamma) {
  for (const Elt c : l.coeffs)
    if (!t.in_ground(c))
      fail(Errc::coefficients_not_in_subfield, "L must have coefficients in F_q");
  if (!is_permutation_table(l.table)) fail(Errc::non_bijective_l, "L must be bijective");
  if (h.table.size() != t.q()) fail(Errc::length_mismatch, "h table size");
  const GroundElt l1 = t.project(l(t.one()));  // L(1) = sum of the coefficients, in F_q
  const GroundElt b = t.trace(gamma);
  FieldMap map = field_map_from_fn(
      t, [&](Elt x) { return t.add(l(x), t.mul(gamma, t.embed(h(t.trace(x))))); },
      "L(x) + g*h(Tr(x))[gamma=" + idx(gamma) + ", h=" + h.origin + "]");
  std::vector<GroundElt> crit_table(t.q());
  for (std::uint32_t u = 0; u < t.q(); ++u)
    crit_table[u] = t.gadd(t.gmul(l1, GroundElt{u}), t.gmul(b, h(GroundElt{u})));
  Criterion crit;
  crit.name = "u -> L(1)*u + Tr(g)*h(u) permutes F_q";
  crit.holds = is_permutation_scalar_table(crit_table);
  crit.detail = "L(1)=" + idx(l1) + ", Tr(g)=" + idx(b);
  return finish_family(t, std::move(map), std::move(crit));
}

FamilyResult kernel_perm(const FieldTower& t, const LinearMap& l, const GroundFn& f,
                         const TranslatorCert& alpha_cert, const ScalarFn& h, Elt gamma) {
  const auto ki = kernel_and_image(t, l);
  if (ki.kernel.size() != t.q())
    fail(Errc::kernel_not_line, "kernel has " + std::to_string(ki.kernel.size()) +
                                    " elements, need exactly q");
  const Elt alpha = alpha_cert.alpha;
  if (alpha.v == 0 || l(alpha).v != 0)
    fail(Errc::kernel_not_line, "certificate element does not span the kernel");
  require_cert(t, f, alpha, alpha_cert, "kernel_perm");
  if (h.table.size() != t.q()) fail(Errc::length_mismatch, "h table size");
  if (!is_permutation_scalar_table(h.table)) fail(Errc::h_not_bijective, "h must permute F_q");
  const GroundElt b = alpha_cert.value;
  FieldMap map = field_map_from_fn(
      t, [&](Elt x) { return t.add(l(x), t.mul(gamma, t.embed(h(f(x))))); },
      "L(x) + g*h(f(x))[gamma=" + idx(gamma) + ", b=" + idx(b) + "]");
  const bool in_image = std::binary_search(ki.image.begin(), ki.image.end(), gamma);
  Criterion crit;
  crit.name = "b != 0 and gamma outside im(L)";
  crit.holds = (b.v != 0) && !in_image;
  crit.detail = "b=" + idx(b) + ", gamma " + (in_image ? "in" : "outside") + " im(L)";
  return finish_family(t, std::move(map), std::move(crit));
}

// ---- named closed-form families ----

Family family_from_name(const std::string& name) {
  if (name == "lai_shift") return Family::lai_shift;
  if (name == "qplus_shift_a") return Family::qplus_shift_a;
  if (name == "qplus_shift_b") return Family::qplus_shift_b;
  if (name == "double_coord") return Family::double_coord;
  if (name == "monom_t") return Family::monom_t;
  if (name == "artin_schreier_t") return Family::artin_schreier_t;
  fail(Errc::bad_spec, "unknown family '" + name + "'");
}

const char* family_name(Family f) {
  switch (f) {
    case Family::lai_shift: return "lai_shift";
    case Family::qplus_shift_a: return "qplus_shift_a";
    case Family::qplus_shift_b: return "qplus_shift_b";
    case Family::double_coord: return "double_coord";
    case Family::monom_t: return "monom_t";
    case Family::artin_schreier_t: return "artin_schreier_t";
  }
  return "?";
}

namespace {

Elt need(const std::optional<Elt>& v, const char* name) {
  if (!v) fail(Errc::bad_spec, std::string("family parameter '") + name + "' is required");
  return *v;
}

const FieldMap& h_or_zero(const FieldTower& t, const std::optional<FieldMap>& h,
                          FieldMap& storage) {
  if (h) {
    if (h->table.size() != t.order()) fail(Errc::length_mismatch, "H table size");
    return *h;
  }
  storage = zero_map(t);
  return storage;
}

// f(x) = Tr(H(x^q - gamma^(q-1) x) + beta x), valid for any gamma
GroundFn lai_style_fn(const FieldTower& t, const FieldMap& h_map, Elt gamma, Elt beta) {
  const Elt gq1 = t.pow(gamma, std::int64_t(t.q()) - 1);
  return ground_fn_from_fn(t, [&, gq1](Elt x) {
    const Elt inner = t.sub(t.frobenius(x, 1), t.mul(gq1, x));
    return t.trace(t.add(h_map(inner), t.mul(beta, x)));
  });
}

void require_odd_q_odd_n(const FieldTower& t, const char* fam) {
  if (t.n() % 2 == 0)
    fail(Errc::family_precondition_failed, std::string(fam) + " needs odd n");
  // For even q the base map x^q + x kills all of F_q, so it is never
  // bijective and the advertised criterion breaks down.
  if (t.p() == 2)
    fail(Errc::family_precondition_failed, std::string(fam) + " needs odd characteristic");
}

FamilyResult build_lai_shift(const FieldTower& t, const FamilyParams& p) {
  const Elt gamma = need(p.gamma, "gamma"), beta = need(p.beta, "beta");
  FieldMap storage;
  const FieldMap& h_map = h_or_zero(t, p.h_map, storage);
  const GroundFn f = lai_style_fn(t, h_map, gamma, beta);
  FieldMap map = field_map_from_fn(
      t, [&](Elt x) { return t.add(x, t.smul(f(x), gamma)); },
      "lai_shift[gamma=" + idx(gamma) + ", beta=" + idx(beta) + "]");
  const GroundElt b = t.trace(t.mul(gamma, beta));
  Criterion crit;
  crit.name = "Tr(gamma*beta) != -1";
  crit.holds = b != t.gminus_one();
  crit.detail = "Tr(gamma*beta)=" + idx(b);
  return finish_family(t, std::move(map), std::move(crit));
}

FamilyResult build_qplus_shift(const FieldTower& t, const FamilyParams& p, bool alternating) {
  require_odd_q_odd_n(t, alternating ? "qplus_shift_b" : "qplus_shift_a");
  const Elt gamma = need(p.gamma, "gamma"), beta = need(p.beta, "beta");
  FieldMap storage;
  const FieldMap& h_map = h_or_zero(t, p.h_map, storage);
  const GroundFn f = lai_style_fn(t, h_map, gamma, beta);

  std::vector<Elt> coeffs(t.n());
  if (!alternating) {
    coeffs[0] = t.one();
    coeffs[1 % t.n()] = t.add(coeffs[1 % t.n()], t.one());  // X^q + X (n = 1 folds onto X)
  } else {
    // sum_{i=1..n} (-1)^(i+1) X^(q^(n-i)): the inverse of X^q + X for odd n
    for (std::uint32_t i = 1; i <= t.n(); ++i) {
      const std::uint32_t j = t.n() - i;
      const Elt sign = (i % 2 == 1) ? t.one() : t.neg(t.one());
      coeffs[j] = t.add(coeffs[j], sign);
    }
  }
  const LinearMap l = linear_map_from_coeffs(t, std::move(coeffs));
  if (alternating) {
    // The alternating sum composed with X^q + X telescopes to exactly 2x, so
    // it is twice the inverse -- bijective precisely because q is odd. (The
    // plain inverse itself would carry a 1/2 factor.)
    std::vector<Elt> base(t.n());
    base[0] = t.one();
    base[1 % t.n()] = t.add(base[1 % t.n()], t.one());
    const LinearMap lq = linear_map_from_coeffs(t, std::move(base));
    const Elt two = t.add(t.one(), t.one());
    for (std::uint64_t i = 0; i < t.order(); ++i) {
      const Elt x{std::uint32_t(i)};
      if (l(lq(x)) != t.mul(two, x))
        fail(Errc::invariant_violation, "alternating sum times (X^q + X) is not doubling");
    }
  }
  const Elt lg = l(gamma);
  FieldMap map = field_map_from_fn(
      t, [&](Elt x) { return t.add(l(x), t.mul(lg, t.embed(f(x)))); },
      std::string(alternating ? "qplus_shift_b" : "qplus_shift_a") + "[gamma=" + idx(gamma) +
          ", beta=" + idx(beta) + "]");
  const GroundElt b = t.trace(t.mul(gamma, beta));
  Criterion crit;
  crit.name = "Tr(gamma*beta) != -1";
  crit.holds = b != t.gminus_one();
  crit.detail = "Tr(gamma*beta)=" + idx(b);
  return finish_family(t, std::move(map), std::move(crit));
}

FamilyResult build_double_coord(const FieldTower& t, const FamilyParams& p) {
  const Elt alpha = need(p.alpha, "alpha");
  const Elt beta1 = need(p.beta, "beta"), beta2 = need(p.beta2, "beta2");
  if (t.in_ground(alpha))
    fail(Errc::family_precondition_failed, "alpha must lie outside F_q");
  FieldMap s1, s2;
  const FieldMap& h1 = h_or_zero(t, p.h_map, s1);
  const FieldMap& h2 = h_or_zero(t, p.h2_map, s2);

  // M(x) = x^(q^2) - (1 + w)x^q + w x with w = (alpha^q - alpha)^(q-1);
  // both 1 and alpha land in its kernel, which drives the construction.
  const Elt w = t.pow(t.sub(t.frobenius(alpha, 1), alpha), std::int64_t(t.q()) - 1);
  auto m_of = [&](Elt x) {
    return t.add(t.sub(t.frobenius(x, 2), t.mul(t.add(t.one(), w), t.frobenius(x, 1))),
                 t.mul(w, x));
  };
  if (m_of(t.one()).v != 0 || m_of(alpha).v != 0)
    fail(Errc::invariant_violation, "M does not vanish on {1, alpha}");

  const GroundFn f = ground_fn_from_fn(
      t, [&](Elt x) { return t.trace(t.add(h1(m_of(x)), t.mul(beta1, x))); });
  const GroundFn g = ground_fn_from_fn(
      t, [&](Elt x) { return t.trace(t.add(h2(m_of(x)), t.mul(beta2, x))); });

  // the four translator values the sufficiency test is built from
  const GroundElt b1 = t.trace(beta1), b2 = t.trace(beta2);
  const GroundElt d1 = t.trace(t.mul(alpha, beta1)), d2 = t.trace(t.mul(alpha, beta2));
  for (auto [a, fn, v] : {std::tuple<Elt, const GroundFn*, GroundElt>{t.one(), &f, b1},
                          {t.one(), &g, b2},
                          {alpha, &f, d1},
                          {alpha, &g, d2}}) {
    if (!check_cert(t, *fn, TranslatorCert{a, v}))
      fail(Errc::invariant_violation, "double_coord translator certificate failed");
  }

  FieldMap map = field_map_from_fn(
      t, [&](Elt x) { return t.add(t.add(x, t.embed(f(x))), t.smul(g(x), alpha)); },
      "double_coord[alpha=" + idx(alpha) + ", beta1=" + idx(beta1) + ", beta2=" + idx(beta2) +
          "]");

  const GroundElt minus1 = t.gminus_one();
  bool bullet1 = false, bullet2 = false;
  if (b1 != minus1)
    bullet1 = t.gsub(d2, t.gdiv(t.gmul(d1, b2), t.gadd(b1, t.gone()))) != minus1;
  if (d2 != minus1)
    bullet2 = t.gsub(b1, t.gdiv(t.gmul(b2, d1), t.gadd(d2, t.gone()))) != minus1;
  Criterion crit;
  crit.name = "either ordering of the two shifts satisfies the chained inequalities";
  crit.holds = bullet1 || bullet2;
  crit.sufficient_only = true;
  crit.detail = "Tr(b1)=" + idx(b1) + ", Tr(b2)=" + idx(b2) + ", Tr(a*b1)=" + idx(d1) +
                ", Tr(a*b2)=" + idx(d2);
  return finish_family(t, std::move(map), std::move(crit));
}

FamilyResult build_monom_t(const FieldTower& t, const FamilyParams& p) {
  const Elt gamma = need(p.gamma, "gamma"), beta = need(p.beta, "beta");
  if (t.p() == 2) fail(Errc::family_precondition_failed, "monom_t needs odd characteristic");
  if (t.n() % 4 != 0) fail(Errc::family_precondition_failed, "monom_t needs n = 4k");
  if (p.t == 0 || std::gcd(p.t, std::uint64_t(t.q()) - 1) != 1)
    fail(Errc::family_precondition_failed, "t must be positive and coprime to q - 1");
  const std::uint64_t qq = std::uint64_t(t.q()) * t.q();
  if (gamma.v == 0 || t.pow(gamma, std::int64_t(qq - 1)) != t.neg(t.one()))
    fail(Errc::family_precondition_failed,
         "gamma is outside the coset (needs gamma^(q^2-1) = -1)");

  const PolyTerm terms[] = {{t.one(), std::uint64_t(t.q()) + 1}, {beta, 1}};
  const GroundFn f = trace_of_poly(t, terms);
  const GroundElt c = t.gpow(t.trace(t.mul(gamma, beta)), std::int64_t(t.q()) - 2);
  const std::uint64_t tt = p.t;
  FieldMap map = field_map_from_fn(
      t,
      [&](Elt x) {
        const GroundElt u = f(x);
        const GroundElt hval = t.gmul(c, t.gsub(t.gpow(u, std::int64_t(tt)), u));
        return t.add(x, t.smul(hval, gamma));
      },
      "monom_t[gamma=" + idx(gamma) + ", beta=" + idx(beta) + ", t=" + std::to_string(tt) + "]");
  Criterion crit;
  crit.name = "permutation for every admissible (gamma, beta, t)";
  crit.holds = true;
  crit.detail = "Tr(gamma*beta)=" + idx(t.trace(t.mul(gamma, beta)));
  return finish_family(t, std::move(map), std::move(crit));
}

FamilyResult build_artin_schreier_t(const FieldTower& t, const FamilyParams& p) {
  const Elt gamma = need(p.gamma, "gamma"), beta = need(p.beta, "beta");
  if (p.t == 0 || std::gcd(p.t, std::uint64_t(t.q()) - 1) != 1)
    fail(Errc::family_precondition_failed, "t must be positive and coprime to q - 1");
  FieldMap storage;
  const FieldMap& h_map = h_or_zero(t, p.h_map, storage);
  auto l_of = [&](Elt x) { return t.sub(t.frobenius(x, 1), x); };
  const GroundFn f = ground_fn_from_fn(
      t, [&](Elt x) { return t.trace(t.add(h_map(l_of(x)), t.mul(beta, x))); });
  const std::uint64_t tt = p.t;
  FieldMap map = field_map_from_fn(
      t,
      [&](Elt x) { return t.add(l_of(x), t.smul(t.gpow(f(x), std::int64_t(tt)), gamma)); },
      "artin_schreier_t[gamma=" + idx(gamma) + ", beta=" + idx(beta) +
          ", t=" + std::to_string(tt) + "]");
  const GroundElt tg = t.trace(gamma), tb = t.trace(beta);
  Criterion crit;
  crit.name = "Tr(gamma) != 0 and Tr(beta) != 0";
  crit.holds = tg.v != 0 && tb.v != 0;
  crit.detail = "Tr(gamma)=" + idx(tg) + ", Tr(beta)=" + idx(tb);
  return finish_family(t, std::move(map), std::move(crit));
}

}  // namespace

FamilyResult build_named_family(const FieldTower& t, Family family, const FamilyParams& params) {
  switch (family) {
    case Family::lai_shift: return build_lai_shift(t, params);
    case Family::qplus_shift_a: return build_qplus_shift(t, params, false);
    case Family::qplus_shift_b: return build_qplus_shift(t, params, true);
    case Family::double_coord: return build_double_coord(t, params);
    case Family::monom_t: return build_monom_t(t, params);
    case Family::artin_schreier_t: return build_artin_schreier_t(t, params);
  }
  fail(Errc::bad_spec, "unknown family");
}

CompleteMappingResult complete_mapping_shift(const FieldTower& t, const GroundFn& f, Elt gamma,
                                             const TranslatorCert& cert) {
  if (t.p() == 2) fail(Errc::even_q, "complete mappings of this shape need odd q");
  require_cert(t, f, gamma, cert, "complete_mapping_shift");
  const GroundElt b = cert.value;
  FieldMap map = field_map_from_fn(
      t, [&](Elt x) { return t.add(x, t.smul(f(x), gamma)); },
      "complete_shift[gamma=" + idx(gamma) + ", b=" + idx(b) + "]");
  std::vector<Elt> plus(t.order());
  for (std::uint64_t i = 0; i < t.order(); ++i)
    plus[i] = t.add(map.table[i], Elt{std::uint32_t(i)});
  const bool both = is_permutation_table(map.table) && is_permutation_table(plus);
  const GroundElt minus1 = t.gminus_one();
  const GroundElt minus2 = t.gneg(t.ground_of_int(2));
  CompleteMappingResult r;
  r.criterion.name = "b outside {-1, -2}";
  r.criterion.holds = b != minus1 && b != minus2;
  r.criterion.detail = "b=" + idx(b) + ", -1=" + idx(minus1) + ", -2=" + idx(minus2);
  if (both != r.criterion.holds)
    fail(Errc::invariant_violation, "complete-mapping criterion and brute force disagree");
  r.complete = both;
  if (is_permutation_table(map.table)) r.perm = PermTable{map.table, map.origin, std::nullopt};
  r.map = std::move(map);
  return r;
}

}  // namespace gfperm
