#include "gfperm/analysis.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gfperm {

std::vector<std::uint64_t> CycleDecomposition::length_multiset() const {
  std::vector<std::uint64_t> out;
  out.reserve(cycles.size());
  for (const auto& c : cycles) out.push_back(c.size());
  std::sort(out.begin(), out.end());
  return out;
}

CycleDecomposition cycle_structure_closed_form(const FieldTower& t, const GroundFn& f,
                                               Elt gamma, const TranslatorCert& cert) {
  if (cert.alpha != gamma)
    fail(Errc::cert_mismatch, "cycle_structure_closed_form: certificate is for another element");
  if (!check_cert(t, f, cert))
    fail(Errc::cert_mismatch, "cycle_structure_closed_form: certificate does not hold");
  const GroundElt b = cert.value;
  if (b == t.gminus_one())
    fail(Errc::b_is_minus_one, "b = -1: the shift is not a permutation");

  const std::uint64_t ell =
      (b.v == 0) ? t.p() : t.ground_mult_order(t.gadd(b, t.gone()));

  CycleDecomposition out;
  std::vector<char> seen(t.order(), 0);
  for (std::uint64_t i = 0; i < t.order(); ++i) {
    if (seen[i]) continue;
    const Elt u{std::uint32_t(i)};
    const Elt fu = t.embed(f(u));
    if (fu.v == 0) {
      seen[i] = 1;
      out.fixed_points.push_back(u);
      continue;
    }
    const Elt gfu = t.mul(gamma, fu);
    std::vector<Elt> orbit;
    orbit.reserve(ell);
    for (std::uint64_t k = 0; k < ell; ++k) {
      const Elt uk = t.add(u, t.smul(bk(t, k, b).value, gfu));
      if (seen[uk.v])
        fail(Errc::invariant_violation, "closed-form orbit revisits an element");
      seen[uk.v] = 1;
      orbit.push_back(uk);
    }
    // must return to u, and each step must be one application of the map
    if (t.smul(bk(t, ell, b).value, gfu).v != 0)
      fail(Errc::invariant_violation, "closed-form orbit does not close after l steps");
    for (std::uint64_t k = 0; k < ell; ++k) {
      const Elt x = orbit[k];
      const Elt fx = t.add(x, t.smul(f(x), gamma));
      if (fx != orbit[(k + 1) % ell])
        fail(Errc::invariant_violation, "closed-form orbit disagrees with the map");
    }
    out.cycles.push_back(std::move(orbit));
  }
  const std::uint64_t moving = t.order() - out.fixed_points.size();
  if (moving % ell != 0 || out.cycles.size() != moving / ell)
    fail(Errc::invariant_violation, "cycle count is not N/l");
  return out;
}

CycleDecomposition cycle_structure_brute(const PermTable& p) {
  const std::uint64_t size = p.table.size();
  CycleDecomposition out;
  std::vector<char> seen(size, 0);
  for (std::uint64_t i = 0; i < size; ++i) {
    if (seen[i]) continue;
    std::vector<Elt> orbit;
    std::uint64_t j = i;
    do {
      seen[j] = 1;
      orbit.push_back(Elt{std::uint32_t(j)});
      j = p.table[j].v;
    } while (j != i);
    if (orbit.size() == 1)
      out.fixed_points.push_back(orbit.front());
    else
      out.cycles.push_back(std::move(orbit));
  }
  return out;
}

bool MultiplierSet::contains(Elt c) const {
  return std::binary_search(members.begin(), members.end(), c);
}

bool DirectionSet::contains(Elt c) const {
  return std::binary_search(members.begin(), members.end(), c);
}

namespace {

std::vector<Elt> flags_to_sorted(const std::vector<char>& flag) {
  std::vector<Elt> out;
  for (std::uint64_t i = 0; i < flag.size(); ++i)
    if (flag[i]) out.push_back(Elt{std::uint32_t(i)});
  return out;
}

}  // namespace

MultiplierSet mob_set(const FieldTower& t, const FieldMap& h) {
  if (h.table.size() != t.order()) fail(Errc::length_mismatch, "mob_set: H table size");
  const std::int64_t order = std::int64_t(t.order());
  std::vector<char> member(t.order(), 0);
#pragma omp parallel
  {
    std::vector<std::uint64_t> stamp(t.order(), 0);
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t ci = 0; ci < order; ++ci) {
      const Elt c{std::uint32_t(ci)};
      const std::uint64_t epoch = std::uint64_t(ci) + 1;
      bool bij = true;
      for (std::uint64_t x = 0; x < t.order(); ++x) {
        const Elt y = t.add(h.table[x], t.mul(c, Elt{std::uint32_t(x)}));
        if (stamp[y.v] == epoch) {
          bij = false;
          break;
        }
        stamp[y.v] = epoch;
      }
      member[std::uint64_t(ci)] = bij ? 1 : 0;
    }
  }
  return MultiplierSet{flags_to_sorted(member)};
}

MultiplierSet mob_set_serial(const FieldTower& t, const FieldMap& h) {
  if (h.table.size() != t.order()) fail(Errc::length_mismatch, "mob_set_serial: H table size");
  MultiplierSet out;
  for (std::uint64_t ci = 0; ci < t.order(); ++ci) {
    const Elt c{std::uint32_t(ci)};
    std::vector<char> seen(t.order(), 0);
    bool bij = true;
    for (std::uint64_t x = 0; x < t.order() && bij; ++x) {
      const Elt y = t.add(h.table[x], t.mul(c, Elt{std::uint32_t(x)}));
      if (seen[y.v]) bij = false;
      seen[y.v] = 1;
    }
    if (bij) out.members.push_back(c);
  }
  return out;
}

DirectionSet direction_set(const FieldTower& t, const FieldMap& h) {
  if (h.table.size() != t.order()) fail(Errc::length_mismatch, "direction_set: H table size");
  const std::int64_t order = std::int64_t(t.order());
  std::vector<char> present(t.order(), 0);
#pragma omp parallel
  {
    std::vector<char> local(t.order(), 0);
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t xi = 0; xi < order; ++xi) {
      const Elt x{std::uint32_t(xi)};
      for (std::uint64_t yi = std::uint64_t(xi) + 1; yi < t.order(); ++yi) {
        const Elt y{std::uint32_t(yi)};
        const Elt d = t.div(t.sub(h.table[x.v], h.table[yi]), t.sub(x, y));
        local[d.v] = 1;
      }
    }
#pragma omp critical
    for (std::uint64_t i = 0; i < t.order(); ++i)
      if (local[i]) present[i] = 1;
  }
  return DirectionSet{flags_to_sorted(present)};
}

DirectionSet direction_set_serial(const FieldTower& t, const FieldMap& h) {
  if (h.table.size() != t.order())
    fail(Errc::length_mismatch, "direction_set_serial: H table size");
  std::vector<char> present(t.order(), 0);
  for (std::uint64_t xi = 0; xi < t.order(); ++xi)
    for (std::uint64_t yi = xi + 1; yi < t.order(); ++yi) {
      const Elt x{std::uint32_t(xi)}, y{std::uint32_t(yi)};
      present[t.div(t.sub(h.table[xi], h.table[yi]), t.sub(x, y)).v] = 1;
    }
  return DirectionSet{flags_to_sorted(present)};
}

DualityReport duality_check(const FieldTower& t, const FieldMap& h) {
  const MultiplierSet mob = mob_set(t, h);
  const DirectionSet dir = direction_set(t, h);
  DualityReport r;
  for (std::uint64_t i = 0; i < t.order(); ++i) {
    const Elt c{std::uint32_t(i)};
    const bool in_mob = mob.contains(c);
    const bool neg_in_dir = dir.contains(t.neg(c));
    ++r.checked;
    if (in_mob == neg_in_dir) ++r.violations;
  }
  return r;
}

InclusionReport translator_direction_inclusion(const FieldTower& t, const GroundFn& f) {
  const TranslatorSpace lam = lambda_space(t, f);
  const GroundElt f0 = f(t.zero());
  InclusionReport r;
  r.lambda_dim = lam.dimension();
  for (std::uint64_t di = 1; di < t.order(); ++di) {
    const Elt delta{std::uint32_t(di)};
    const Elt dinv = t.inv(delta);
    if (dinv.v == 0 || !lam.contains(dinv)) continue;
    if (lam.value(dinv) == t.gminus_one()) continue;  // value = f(d^-1) - f(0)
    if (t.gsub(f(dinv), f0) != lam.value(dinv))
      fail(Errc::invariant_violation, "translator value disagrees with f(a) - f(0)");
    r.subset.push_back(delta);
  }
  std::sort(r.subset.begin(), r.subset.end());
  const MultiplierSet mob = mob_set(t, field_map_from_fn(t, [&](Elt x) {
                                      return t.embed(f(x));
                                    }, "embed(" + f.origin + ")"));
  r.mob_size = mob.members.size();
  for (const Elt d : r.subset)
    if (!mob.contains(d))
      fail(Errc::invariant_violation,
           "translator-derived multiplier is not an actual multiplier");
  return r;
}

DirBoundReport th_dir_bound(const FieldTower& t, const ScalarFn& g, Elt alpha) {
  if (g.table.size() != t.q()) fail(Errc::length_mismatch, "th_dir_bound: g table size");
  if (g(GroundElt{0}).v != 0)
    fail(Errc::g_violates_hypotheses, "g(0) must be 0");
  for (std::uint32_t u = 0; u < t.q(); ++u)
    if (g(GroundElt{u}) == t.gminus_one())
      fail(Errc::g_violates_hypotheses, "-1 must not be a value of g");
  if (alpha.v == 0) fail(Errc::zero_alpha, "alpha must be nonzero");

  DirBoundReport r;
  r.h = ground_fn_from_fn(t, [&](Elt x) { return g(t.trace(t.mul(alpha, x))); },
                          "g(Tr(alpha*x))[alpha=" + std::to_string(alpha.v) + "]");
  std::uint64_t qn1 = 1;
  for (std::uint32_t i = 0; i + 1 < t.n(); ++i) qn1 *= t.q();
  r.bound = qn1 - 1;
  for (std::uint64_t di = 1; di < t.order(); ++di) {
    const Elt delta{std::uint32_t(di)};
    if (t.trace(t.mul(alpha, t.inv(delta))).v == 0) r.subset.push_back(delta);
  }
  const GroundFn& h = r.h;
  const MultiplierSet mob = mob_set(t, field_map_from_fn(t, [&](Elt x) {
                                      return t.embed(h(x));
                                    }, "embed(" + h.origin + ")"));
  r.mob_size = mob.members.size();
  for (const Elt d : r.subset)
    if (!mob.contains(d))
      fail(Errc::invariant_violation, "witness multiplier is not an actual multiplier");
  if (r.subset.size() != r.bound)
    fail(Errc::invariant_violation, "witness set has unexpected size");
  if (r.mob_size < r.bound)
    fail(Errc::invariant_violation, "multiplier set is smaller than the guaranteed bound");
  return r;
}

}  // namespace gfperm
