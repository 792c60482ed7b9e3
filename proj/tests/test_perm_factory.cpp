#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "doctest.h"

#include "gfperm/error.hpp"
#include "gfperm/field_spec.hpp"
#include "gfperm/maps.hpp"
#include "gfperm/perm_factory.hpp"
#include "gfperm/rng.hpp"
#include "gfperm/verify.hpp"
#include "oracles.hpp"

using namespace gfperm;

namespace {

bool throws_code(Errc code, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

TEST_CASE("shift dichotomy on both branches") {
  const FieldTower t = FieldTower::make(3, 1, 2);
  Rng rng(101);
  for (std::uint32_t b = 0; b < t.q(); ++b) {
    const auto inst = instance_with_value(t, rng, GroundElt{b});
    const auto result = shift_perm(t, inst.f, inst.gamma, inst.cert);
    const auto fwd = oracles::shift_table(t, inst.f, inst.gamma);
    if (b == t.gminus_one().v) {
      REQUIRE(std::holds_alternative<FiberMap>(result));
      const auto& fm = std::get<FiberMap>(result);
      CHECK(fm.fiber_size == t.q());
      CHECK(fm.table == fwd);
      CHECK(oracles::is_exactly_k_to_1(t, fwd, t.q()));
    } else {
      REQUIRE(std::holds_alternative<PermTable>(result));
      CHECK(std::get<PermTable>(result).table == fwd);
      CHECK(oracles::is_bijection(t, fwd));
    }
  }
}

TEST_CASE("certificate is revalidated before building") {
  const FieldTower t = FieldTower::make(3, 1, 2);
  Rng rng(103);
  const auto inst = instance_with_value(t, rng, t.gzero());
  const TranslatorCert wrong{inst.gamma, t.gadd(inst.cert.value, t.gone())};
  CHECK(throws_code(Errc::cert_mismatch, [&] { shift_perm(t, inst.f, inst.gamma, wrong); }));
  const TranslatorCert mismatched{t.add(inst.gamma, t.one()), inst.cert.value};
  CHECK(throws_code(Errc::cert_mismatch,
                    [&] { shift_perm(t, inst.f, inst.gamma, mismatched); }));
}

TEST_CASE("closed-form inverse really inverts") {
  for (const char* spec : {"p=3,m=1,n=2", "p=2,m=2,n=2"}) {
    const FieldTower t = tower_from_spec(spec);
    Rng rng(107);
    for (std::uint32_t b = 0; b < t.q(); ++b) {
      if (b == t.gminus_one().v) continue;
      const auto inst = instance_with_value(t, rng, GroundElt{b});
      const PermTable inv = shift_perm_inverse(t, inst.f, inst.gamma, inst.cert);
      const auto fwd = oracles::shift_table(t, inst.f, inst.gamma);
      const auto round = oracles::compose(inv.table, fwd);
      for (std::uint64_t i = 0; i < t.order(); ++i) CHECK(round[i].v == i);
    }
    const auto bad = instance_with_value(t, rng, t.gminus_one());
    CHECK(throws_code(Errc::b_is_minus_one,
                      [&] { shift_perm_inverse(t, bad.f, bad.gamma, bad.cert); }));
  }
}

TEST_CASE("iteration coefficients follow the recurrence") {
  const FieldTower t = FieldTower::make(5, 1, 2);
  for (std::uint32_t b = 0; b < t.q(); ++b) {
    if (b == t.gminus_one().v) continue;
    GroundElt acc = t.gzero();
    for (std::uint64_t k = 1; k <= 8; ++k) {
      // B_k = (b+1) B_{k-1} + 1
      acc = t.gadd(t.gmul(t.gadd(GroundElt{b}, t.gone()), acc), t.gone());
      CHECK(bk(t, k, GroundElt{b}).value == acc);
    }
  }
}

TEST_CASE("closed-form iterates equal repeated composition") {
  const FieldTower t = FieldTower::make(3, 1, 2);
  Rng rng(109);
  for (std::uint32_t b = 0; b < t.q(); ++b) {
    if (b == t.gminus_one().v) continue;
    const auto inst = instance_with_value(t, rng, GroundElt{b});
    const auto fwd = oracles::shift_table(t, inst.f, inst.gamma);
    const std::uint64_t ell =
        (b == 0) ? t.p() : t.ground_mult_order(t.gadd(GroundElt{b}, t.gone()));
    std::vector<Elt> cur(t.order());
    for (std::uint64_t i = 0; i < t.order(); ++i) cur[i] = Elt{std::uint32_t(i)};
    for (std::uint64_t k = 1; k <= ell; ++k) {
      cur = oracles::compose(fwd, cur);
      const auto it = iterate_closed_form(t, inst.f, inst.gamma, inst.cert, k);
      REQUIRE(std::holds_alternative<PermTable>(it));
      CHECK(std::get<PermTable>(it).table == cur);
    }
    for (std::uint64_t i = 0; i < t.order(); ++i) CHECK(cur[i].v == i);  // F_l = id
  }
}

TEST_CASE("composition with a bijective q-polynomial") {
  const FieldTower t = FieldTower::make(3, 1, 2);
  Rng rng(113);
  const LinearMap l = random_bijective_linear_map(t, rng);
  const auto inst = instance_with_value(t, rng, t.gzero());
  const auto result = linear_compose_perm(t, l, inst.f, inst.gamma, inst.cert);
  REQUIRE(std::holds_alternative<PermTable>(result));
  const auto& table = std::get<PermTable>(result).table;
  const auto fwd = oracles::shift_table(t, inst.f, inst.gamma);
  CHECK(table == oracles::compose(l.table, fwd));
  CHECK(oracles::is_bijection(t, table));

  std::vector<Elt> sing{t.neg(t.one()), t.one()};  // x^3 - x, kernel F_3
  const LinearMap bad = linear_map_from_coeffs(t, sing);
  CHECK(throws_code(Errc::non_bijective_l,
                    [&] { linear_compose_perm(t, bad, inst.f, inst.gamma, inst.cert); }));
}

TEST_CASE("two independent translators") {
  const FieldTower t = FieldTower::make(3, 1, 2);
  const Elt gamma = t.one();
  const Elt delta{t.q()};
  auto affine = [&](Elt beta) {
    return ground_fn_from_fn(t, [&, beta](Elt x) { return t.trace(t.mul(beta, x)); },
                             "Tr(beta*x)");
  };
  auto beta_for = [&](GroundElt wg, GroundElt wd) {
    for (std::uint64_t i = 0; i < t.order(); ++i) {
      const Elt b{std::uint32_t(i)};
      if (t.trace(t.mul(gamma, b)) == wg && t.trace(t.mul(delta, b)) == wd) return b;
    }
    FAIL("no beta with the requested trace pair");
    return t.zero();
  };
  const Elt b1 = beta_for(t.gzero(), t.gzero());
  const Elt b2 = beta_for(t.gone(), t.gzero());
  const PermTable p = two_translator_perm(
      t, affine(b1), affine(b2), gamma, delta, TranslatorCert{gamma, t.gzero()},
      TranslatorCert{gamma, t.gone()}, TranslatorCert{delta, t.gzero()},
      TranslatorCert{delta, t.gzero()});
  CHECK(oracles::is_bijection(t, p.table));

  // b1 = -1 violates the first hypothesis
  const Elt bad1 = beta_for(t.gminus_one(), t.gzero());
  CHECK(throws_code(Errc::hypothesis_failed, [&] {
    two_translator_perm(t, affine(bad1), affine(b2), gamma, delta,
                        TranslatorCert{gamma, t.gminus_one()}, TranslatorCert{gamma, t.gone()},
                        TranslatorCert{delta, t.gzero()}, TranslatorCert{delta, t.gzero()});
  }));
}

TEST_CASE("scalar criterion decides bijectivity for h-composed shifts") {
  const FieldTower t = FieldTower::make(3, 1, 2);
  Rng rng(127);
  std::uint64_t holds = 0, fails = 0;
  for (std::uint32_t b = 0; b < t.q(); ++b) {
    const auto inst = instance_with_value(t, rng, GroundElt{b});
    for (const auto& hf : all_scalar_fns(t)) {
      const FamilyResult r = general_h_perm(t, inst.f, inst.gamma, inst.cert, hf);
      // independent recomputation of both sides of the iff
      std::vector<GroundElt> crit(t.q());
      for (std::uint32_t u = 0; u < t.q(); ++u)
        crit[u] = t.gadd(t.gmul(GroundElt{b}, hf(GroundElt{u})), GroundElt{u});
      CHECK(r.criterion.holds == oracles::scalar_bijective(t, crit));
      CHECK(r.criterion.holds == oracles::is_bijection(t, r.map.table));
      CHECK(r.perm.has_value() == r.criterion.holds);
      (r.criterion.holds ? holds : fails) += 1;
    }
  }
  CHECK(holds > 0);
  CHECK(fails > 0);
}

TEST_CASE("subfield-coefficient linear shifts") {
  const FieldTower t = FieldTower::make(2, 2, 2);
  Rng rng(131);
  std::vector<Elt> id{t.one(), t.zero()};
  const LinearMap l = linear_map_from_coeffs(t, id);
  for (int round = 0; round < 10; ++round) {
    const ScalarFn hf = random_scalar_fn(t, rng);
    const Elt gamma{std::uint32_t(rng.below(t.order()))};
    const FamilyResult r = marcos_pp(t, l, hf, gamma);
    CHECK(r.criterion.holds == oracles::is_bijection(t, r.map.table));
  }
  std::vector<Elt> off{Elt{t.q()}, t.zero()};
  const LinearMap bad = linear_map_from_coeffs(t, off);
  CHECK(throws_code(Errc::coefficients_not_in_subfield,
                    [&] { marcos_pp(t, bad, identity_scalar(t), t.one()); }));
}

TEST_CASE("kernel-line shifts need b != 0 and gamma outside the image") {
  const FieldTower t = FieldTower::make(3, 1, 2);
  Rng rng(137);
  std::vector<Elt> coeffs{t.neg(t.one()), t.one()};  // kernel = F_3
  const LinearMap l = linear_map_from_coeffs(t, coeffs);
  const KernelImage ki = kernel_and_image(t, l);
  REQUIRE(ki.kernel.size() == t.q());
  Elt gamma_in = t.zero(), gamma_out = t.zero();
  for (std::uint64_t i = 1; i < t.order(); ++i) {
    const Elt a{std::uint32_t(i)};
    const bool in = std::binary_search(ki.image.begin(), ki.image.end(), a);
    if (in && gamma_in.v == 0) gamma_in = a;
    if (!in && gamma_out.v == 0) gamma_out = a;
  }
  for (const GroundElt b : {t.gzero(), t.gone()}) {
    Elt beta = t.zero();
    for (std::uint64_t i = 0; i < t.order(); ++i)
      if (t.trace(Elt{std::uint32_t(i)}) == b) {
        beta = Elt{std::uint32_t(i)};
        break;
      }
    const GroundFn f = ground_fn_from_fn(
        t, [&, beta](Elt x) { return t.trace(t.mul(beta, x)); }, "Tr(beta*x)");
    for (const Elt gamma : {gamma_in, gamma_out}) {
      const FamilyResult r = kernel_perm(t, l, f, TranslatorCert{t.one(), b},
                                         random_scalar_permutation(t, rng), gamma);
      const bool expect = b.v != 0 && gamma == gamma_out;
      CHECK(r.criterion.holds == expect);
      CHECK(oracles::is_bijection(t, r.map.table) == expect);
    }
  }
}

TEST_CASE("named families build and classify") {
  const FieldTower t9 = FieldTower::make(3, 1, 2);
  Rng rng(139);

  FamilyParams ps;
  ps.h_map = random_field_map(t9, rng);
  ps.gamma = t9.element_of(4);
  ps.beta = t9.element_of(7);
  const FamilyResult lai = build_named_family(t9, Family::lai_shift, ps);
  CHECK((lai.verdict == Verdict::permutation || lai.verdict == Verdict::q_to_1));
  CHECK(lai.criterion.holds == (lai.verdict == Verdict::permutation));

  const FieldTower t27 = FieldTower::make(3, 1, 3);
  FamilyParams qp;
  qp.h_map = random_field_map(t27, rng);
  qp.gamma = t27.element_of(11);
  qp.beta = t27.element_of(5);
  for (const Family fam : {Family::qplus_shift_a, Family::qplus_shift_b}) {
    const FamilyResult r = build_named_family(t27, fam, qp);
    CHECK(r.criterion.holds == (r.verdict == Verdict::permutation));
  }
  CHECK(throws_code(Errc::family_precondition_failed,
                    [&] { build_named_family(t9, Family::qplus_shift_a, qp); }));

  FamilyParams dc;
  dc.alpha = Elt{t9.q()};
  dc.beta = t9.element_of(3);
  dc.beta2 = t9.element_of(8);
  dc.h_map = random_field_map(t9, rng);
  dc.h2_map = random_field_map(t9, rng);
  const FamilyResult two = build_named_family(t9, Family::double_coord, dc);
  CHECK(two.criterion.sufficient_only);
  if (two.criterion.holds) CHECK(two.verdict == Verdict::permutation);

  FamilyParams as;
  as.gamma = t9.element_of(1);
  as.beta = t9.element_of(1);
  as.t = 1;
  const FamilyResult art = build_named_family(t9, Family::artin_schreier_t, as);
  const bool crit = t9.trace(*as.gamma).v != 0 && t9.trace(*as.beta).v != 0;
  CHECK(art.criterion.holds == crit);
  CHECK((art.verdict == Verdict::permutation) == crit);

  CHECK(throws_code(Errc::bad_spec, [] { family_from_name("nonsense"); }));
  CHECK(family_from_name(family_name(Family::monom_t)) == Family::monom_t);
  CHECK(throws_code(Errc::bad_spec, [&] {
    FamilyParams empty;
    build_named_family(t9, Family::lai_shift, empty);
  }));
}

TEST_CASE("unconditional family on the quartic tower") {
  const FieldTower t = FieldTower::make(3, 1, 4);
  const MonomialFn mono = monom_construct(t, t.element_of(2));
  FamilyParams ps;
  ps.gamma = mono.gamma_coset[3];
  ps.beta = t.element_of(2);
  ps.t = 1;
  const FamilyResult r = build_named_family(t, Family::monom_t, ps);
  CHECK(r.verdict == Verdict::permutation);
  CHECK(r.criterion.holds);
  REQUIRE(r.perm.has_value());
  CHECK(oracles::is_bijection(t, r.perm->table));
  FamilyParams bad = ps;
  bad.gamma = t.one();
  CHECK(throws_code(Errc::family_precondition_failed,
                    [&] { build_named_family(t, Family::monom_t, bad); }));
}

TEST_CASE("complete mappings exactly when b avoids -1 and -2") {
  const FieldTower t = FieldTower::make(3, 1, 2);
  Rng rng(149);
  for (std::uint32_t b = 0; b < t.q(); ++b) {
    const auto inst = instance_with_value(t, rng, GroundElt{b});
    const auto r = complete_mapping_shift(t, inst.f, inst.gamma, inst.cert);
    // over F_3, -1 = 2 and -2 = 1, so only b = 0 gives a complete mapping
    CHECK(r.complete == (b == 0));
    const auto fwd = oracles::shift_table(t, inst.f, inst.gamma);
    std::vector<Elt> plus(t.order());
    for (std::uint64_t i = 0; i < t.order(); ++i) plus[i] = t.add(fwd[i], Elt{std::uint32_t(i)});
    CHECK(r.complete == (oracles::is_bijection(t, fwd) && oracles::is_bijection(t, plus)));
  }
  const FieldTower t4 = FieldTower::make(2, 2, 2);
  Rng rng2(151);
  const auto inst = instance_with_value(t4, rng2, t4.gzero());
  CHECK(throws_code(Errc::even_q,
                    [&] { complete_mapping_shift(t4, inst.f, inst.gamma, inst.cert); }));
}
