#include "gfperm/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <optional>

#include "json.hpp"

#include "gfperm/analysis.hpp"
#include "gfperm/field_spec.hpp"
#include "gfperm/perm_factory.hpp"

namespace gfperm {

Suite suite_from_name(const std::string& name) {
  if (name == "core") return Suite::core;
  if (name == "translators") return Suite::translators;
  if (name == "families") return Suite::families;
  if (name == "analysis") return Suite::analysis;
  if (name == "all") return Suite::all;
  fail(Errc::bad_spec, "unknown suite '" + name + "'");
}

const char* suite_name(Suite s) {
  switch (s) {
    case Suite::core: return "core";
    case Suite::translators: return "translators";
    case Suite::families: return "families";
    case Suite::analysis: return "analysis";
    case Suite::all: return "all";
  }
  return "?";
}

GroundFn random_ground_fn(const FieldTower& t, Rng& rng) {
  std::vector<GroundElt> v(t.order());
  for (auto& e : v) e = GroundElt{std::uint32_t(rng.below(t.q()))};
  return GroundFn{std::move(v), "random_ground_fn"};
}

FieldMap random_field_map(const FieldTower& t, Rng& rng) {
  std::vector<Elt> v(t.order());
  for (auto& e : v) e = Elt{std::uint32_t(rng.below(t.order()))};
  return FieldMap{std::move(v), "random_field_map"};
}

ScalarFn random_scalar_fn(const FieldTower& t, Rng& rng) {
  std::vector<GroundElt> v(t.q());
  for (auto& e : v) e = GroundElt{std::uint32_t(rng.below(t.q()))};
  return ScalarFn{std::move(v), "random_scalar_fn"};
}

ScalarFn random_scalar_permutation(const FieldTower& t, Rng& rng) {
  std::vector<GroundElt> v(t.q());
  for (std::uint32_t i = 0; i < t.q(); ++i) v[i] = GroundElt{i};
  for (std::uint32_t i = t.q(); i > 1; --i)
    std::swap(v[i - 1], v[rng.below(i)]);
  return ScalarFn{std::move(v), "random_scalar_permutation"};
}

LinearMap random_bijective_linear_map(const FieldTower& t, Rng& rng) {
  for (int tries = 0; tries < 1000; ++tries) {
    std::vector<Elt> coeffs(t.n());
    for (auto& c : coeffs) c = Elt{std::uint32_t(rng.below(t.order()))};
    LinearMap l = linear_map_from_coeffs(t, std::move(coeffs));
    if (is_permutation_table(l.table)) return l;
  }
  fail(Errc::invariant_violation, "could not sample a bijective q-polynomial");
}

CertifiedInstance random_certified_instance(const FieldTower& t, Rng& rng) {
  const Elt gamma{std::uint32_t(1 + rng.below(t.order() - 1))};
  const Elt beta{std::uint32_t(rng.below(t.order()))};
  auto built = lai_construct(t, random_field_map(t, rng), gamma, beta);
  return CertifiedInstance{std::move(built.f), gamma, built.cert};
}

CertifiedInstance instance_with_value(const FieldTower& t, Rng& rng, GroundElt b) {
  const Elt gamma{std::uint32_t(1 + rng.below(t.order() - 1))};
  std::optional<Elt> y;
  for (int tries = 0; tries < 64 && !y; ++tries) {
    const Elt cand{std::uint32_t(rng.below(t.order()))};
    if (t.trace(cand) == b) y = cand;
  }
  for (std::uint64_t i = 0; i < t.order() && !y; ++i)
    if (t.trace(Elt{std::uint32_t(i)}) == b) y = Elt{std::uint32_t(i)};
  if (!y) fail(Errc::invariant_violation, "trace is not onto F_q");
  const Elt beta = t.div(*y, gamma);
  auto built = lai_construct(t, random_field_map(t, rng), gamma, beta);
  if (built.cert.value != b)
    fail(Errc::invariant_violation, "steered translator value drifted");
  return CertifiedInstance{std::move(built.f), gamma, built.cert};
}

std::vector<ScalarFn> all_scalar_fns(const FieldTower& t) {
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < t.q(); ++i) {
    total *= t.q();
    if (total > (1ull << 16))
      fail(Errc::budget_exceeded, "q^q scalar functions is too many to enumerate");
  }
  std::vector<ScalarFn> out;
  out.reserve(total);
  for (std::uint64_t k = 0; k < total; ++k) {
    std::vector<GroundElt> tab(t.q());
    std::uint64_t kk = k;
    for (std::uint32_t u = 0; u < t.q(); ++u) {
      tab[u] = GroundElt{std::uint32_t(kk % t.q())};
      kk /= t.q();
    }
    out.push_back(ScalarFn{std::move(tab), "h#" + std::to_string(k)});
  }
  return out;
}

namespace {

struct Harness {
  RunReport* report;

  void run(const std::string& name, const std::function<std::uint64_t()>& body) {
    CheckResult c;
    c.name = name;
    try {
      c.cases = body();
      c.passed = true;
    } catch (const std::exception& e) {
      c.passed = false;
      c.detail = e.what();
      report->counterexamples.push_back(name + ": " + e.what());
    }
    report->checks.push_back(std::move(c));
  }
};

[[noreturn]] void check_failed(const std::string& what) {
  fail(Errc::invariant_violation, what);
}

template <class Fn>
void expect_error(Errc code, const std::string& what, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    if (e.code() == code) return;
    check_failed(what + ": raised " + std::string(errc_name(e.code())) + " instead of " +
                 errc_name(code));
  }
  check_failed(what + ": expected " + std::string(errc_name(code)) + " was not raised");
}

GroundFn trace_fn(const FieldTower& t) {
  return ground_fn_from_fn(t, [&](Elt x) { return t.trace(x); }, "Tr(x)");
}

std::uint64_t smallest_extra_t(std::uint32_t q) {
  for (std::uint64_t c = 2;; ++c)
    if (std::gcd(c, std::uint64_t(q) - 1) == 1) return c;
}

// ---------------------------------------------------------------- core

void suite_core(const FieldTower& t, std::uint64_t seed, Harness& h) {
  Rng rng(seed ^ 0xc0de0001ull);
  const std::uint64_t order = t.order();
  auto rnd = [&] { return Elt{std::uint32_t(rng.below(order))}; };

  h.run("core/index-round-trip", [&] {
    for (std::uint64_t i = 0; i < order; ++i) {
      if (t.index_of(t.element_of(i)) != i) check_failed("index round trip broke at " + std::to_string(i));
      const auto c = t.coords(t.element_of(i));
      if (t.from_coords(c).v != i) check_failed("coords round trip broke at " + std::to_string(i));
    }
    for (std::uint32_t d = 0; d < t.q(); ++d) {
      const auto gc = t.ground_coords(GroundElt{d});
      if (t.ground_from_coords(gc).v != d)
        check_failed("ground coords round trip broke at " + std::to_string(d));
    }
    expect_error(Errc::index_out_of_range, "element_of(order)", [&] { t.element_of(order); });
    return order + t.q();
  });

  h.run("core/ring-axioms", [&] {
    std::uint64_t cases = 0;
    auto triple = [&](Elt a, Elt b, Elt c) {
      if (t.add(a, b) != t.add(b, a)) check_failed("addition is not commutative");
      if (t.mul(a, b) != t.mul(b, a)) check_failed("multiplication is not commutative");
      if (t.add(t.add(a, b), c) != t.add(a, t.add(b, c)))
        check_failed("addition is not associative");
      if (t.mul(t.mul(a, b), c) != t.mul(a, t.mul(b, c)))
        check_failed("multiplication is not associative");
      if (t.mul(a, t.add(b, c)) != t.add(t.mul(a, b), t.mul(a, c)))
        check_failed("distributivity fails");
      ++cases;
    };
    if (order <= 81) {
      for (std::uint64_t i = 0; i < order; ++i)
        for (std::uint64_t j = 0; j < order; ++j)
          for (std::uint64_t k = 0; k < order; ++k)
            triple(Elt{std::uint32_t(i)}, Elt{std::uint32_t(j)}, Elt{std::uint32_t(k)});
    } else {
      for (int i = 0; i < 4000; ++i) triple(rnd(), rnd(), rnd());
    }
    return cases;
  });

  h.run("core/units-and-powers", [&] {
    for (std::uint64_t i = 0; i < order; ++i) {
      const Elt a{std::uint32_t(i)};
      if (t.add(a, t.neg(a)).v != 0) check_failed("a + (-a) != 0");
      if (i == 0) continue;
      if (t.mul(a, t.inv(a)) != t.one()) check_failed("a * a^-1 != 1");
      if (t.pow(a, std::int64_t(order) - 1) != t.one()) check_failed("a^(q^n - 1) != 1");
      if (t.pow(a, -3) != t.inv(t.pow(a, 3))) check_failed("negative power != inverse power");
    }
    if (t.pow(t.zero(), 0) != t.one()) check_failed("0^0 != 1");
    if (t.pow(t.zero(), 5).v != 0) check_failed("0^5 != 0");
    if (t.gpow(t.gzero(), 0) != t.gone()) check_failed("ground 0^0 != 1");
    expect_error(Errc::division_by_zero, "inv(0)", [&] { t.inv(t.zero()); });
    expect_error(Errc::division_by_zero, "ginv(0)", [&] { t.ginv(t.gzero()); });
    for (std::uint32_t d = 0; d < t.q(); ++d) {
      const GroundElt a{d};
      if (t.gadd(a, t.gneg(a)).v != 0) check_failed("ground a + (-a) != 0");
      if (d != 0 && t.gmul(a, t.ginv(a)) != t.gone()) check_failed("ground a * a^-1 != 1");
    }
    return order + t.q();
  });

  h.run("core/trace", [&] {
    std::vector<std::uint64_t> fibers(t.q(), 0);
    for (std::uint64_t i = 0; i < order; ++i) {
      const Elt a{std::uint32_t(i)};
      Elt acc = t.zero();
      std::int64_t e = 1;
      for (std::uint32_t k = 0; k < t.n(); ++k) {
        acc = t.add(acc, t.pow(a, e));
        e *= t.q();
      }
      if (!t.in_ground(acc)) check_failed("trace value escapes the embedded F_q");
      if (t.project(acc) != t.trace(a)) check_failed("trace disagrees with the powering oracle");
      ++fibers[t.trace(a).v];
    }
    for (const auto c : fibers)
      if (c != order / t.q()) check_failed("some trace fiber is not of size q^(n-1)");
    std::uint64_t pairs = 0;
    auto pair = [&](Elt a, Elt b) {
      if (t.trace(t.add(a, b)) != t.gadd(t.trace(a), t.trace(b)))
        check_failed("trace is not additive");
      ++pairs;
    };
    if (order <= 256) {
      for (std::uint64_t i = 0; i < order; ++i)
        for (std::uint64_t j = 0; j < order; ++j) pair(Elt{std::uint32_t(i)}, Elt{std::uint32_t(j)});
    } else {
      for (int i = 0; i < 2000; ++i) pair(rnd(), rnd());
    }
    for (std::uint32_t u = 0; u < t.q(); ++u)
      for (int i = 0; i < 64; ++i) {
        const Elt a = rnd();
        if (t.trace(t.smul(GroundElt{u}, a)) != t.gmul(GroundElt{u}, t.trace(a)))
          check_failed("trace is not F_q-homogeneous");
      }
    return order + pairs;
  });

  h.run("core/frobenius", [&] {
    for (std::uint64_t i = 0; i < order; ++i) {
      const Elt a{std::uint32_t(i)};
      if (t.frobenius(a, 0) != a) check_failed("frobenius^0 is not the identity");
      if (t.frobenius(a, t.n()) != a) check_failed("frobenius^n is not the identity");
      if (t.frobenius(a, 1) != t.pow(a, t.q())) check_failed("frobenius != q-th power");
    }
    std::uint64_t fixed = 0;
    for (std::uint64_t i = 0; i < order; ++i) {
      const Elt a{std::uint32_t(i)};
      if (t.frobenius(a, 1) == a) {
        ++fixed;
        if (!t.in_ground(a)) check_failed("frobenius fixes an element outside F_q");
      }
    }
    if (fixed != t.q()) check_failed("frobenius fixed field has the wrong size");
    for (int i = 0; i < 500; ++i) {
      const Elt a = rnd(), b = rnd();
      const std::int64_t k = std::int64_t(rng.below(t.n() + 1));
      if (t.frobenius(t.mul(a, b), k) != t.mul(t.frobenius(a, k), t.frobenius(b, k)))
        check_failed("frobenius is not multiplicative");
      if (t.frobenius(t.add(a, b), k) != t.add(t.frobenius(a, k), t.frobenius(b, k)))
        check_failed("frobenius is not additive");
    }
    return order + 500;
  });

  h.run("core/primitive-element", [&] {
    const Elt lam = t.primitive_element();
    if (t.mult_order(lam) != order - 1) check_failed("primitive element has the wrong order");
    for (std::uint32_t i = 1; i < lam.v; ++i)
      if (t.mult_order(Elt{i}) == order - 1)
        check_failed("a smaller index is already primitive");
    return std::uint64_t(lam.v) + 1;
  });

  h.run("core/embed-project", [&] {
    for (std::uint32_t c = 0; c < t.q(); ++c) {
      if (t.project(t.embed(GroundElt{c})) != GroundElt{c})
        check_failed("embed/project round trip broke");
      for (std::uint32_t d = 0; d < t.q(); ++d) {
        const GroundElt gc{c}, gd{d};
        if (t.embed(t.gadd(gc, gd)) != t.add(t.embed(gc), t.embed(gd)))
          check_failed("embedding is not additive");
        if (t.embed(t.gmul(gc, gd)) != t.mul(t.embed(gc), t.embed(gd)))
          check_failed("embedding is not multiplicative");
      }
    }
    if (t.n() > 1)
      expect_error(Errc::not_in_subfield, "project(x)", [&] { t.project(Elt{t.q()}); });
    return std::uint64_t(t.q()) * t.q();
  });
}

// ---------------------------------------------------------- translators

void suite_translators(const FieldTower& t, std::uint64_t seed, Harness& h) {
  Rng rng(seed ^ 0xc0de0002ull);
  const std::uint64_t order = t.order();

  h.run("translators/trace-is-affine", [&] {
    const GroundFn f = trace_fn(t);
    for (std::uint64_t i = 1; i < order; ++i) {
      const Elt a{std::uint32_t(i)};
      const auto v = translator_value(t, f, a);
      if (!v || *v != t.trace(a)) check_failed("translator value of trace is not Tr(alpha)");
    }
    const TranslatorSpace lam = lambda_space(t, f);
    if (lam.size() != order || lam.dimension() != t.n())
      check_failed("affine f must have the whole field as translator space");
    return order - 1;
  });

  h.run("translators/fast-vs-full", [&] {
    std::vector<GroundFn> fns;
    fns.push_back(trace_fn(t));
    for (int i = 0; i < 3; ++i) fns.push_back(random_ground_fn(t, rng));
    fns.push_back(random_certified_instance(t, rng).f);
    std::uint64_t cases = 0;
    for (const auto& f : fns) {
      if (order <= 1024) {
        for (std::uint64_t i = 1; i < order; ++i) {
          const Elt a{std::uint32_t(i)};
          if (translator_value(t, f, a) != translator_value_full(t, f, a))
            check_failed("basis-only check disagrees with the all-u oracle");
          ++cases;
        }
      } else {
        for (int i = 0; i < 128; ++i) {
          const Elt a{std::uint32_t(1 + rng.below(order - 1))};
          if (translator_value(t, f, a) != translator_value_full(t, f, a))
            check_failed("basis-only check disagrees with the all-u oracle");
          ++cases;
        }
      }
    }
    expect_error(Errc::zero_alpha, "translator_value(f, 0)",
                 [&] { translator_value(t, fns.front(), t.zero()); });
    return cases;
  });

  h.run("translators/lambda-parallel-vs-serial", [&] {
    std::vector<GroundFn> fns{trace_fn(t), random_ground_fn(t, rng), random_ground_fn(t, rng)};
    for (const auto& f : fns) {
      const TranslatorSpace a = lambda_space(t, f);
      const TranslatorSpace b = lambda_space_serial(t, f);
      if (a.basis != b.basis || a.basis_values != b.basis_values || a.value_of != b.value_of)
        check_failed("parallel and serial translator spaces differ");
    }
    return fns.size();
  });

  h.run("translators/membership-certificates", [&] {
    std::vector<GroundFn> fns{random_ground_fn(t, rng), random_certified_instance(t, rng).f};
    std::uint64_t cases = 0;
    for (const auto& f : fns) {
      const TranslatorSpace lam = lambda_space(t, f);
      for (std::uint64_t i = 1; i < order; ++i) {
        const Elt a{std::uint32_t(i)};
        if (lam.contains(a)) {
          if (!check_cert(t, f, TranslatorCert{a, *lam.value(a)}))
            check_failed("claimed member fails its certificate");
        } else if (translator_value_full(t, f, a)) {
          check_failed("non-member passes the full oracle");
        }
        ++cases;
      }
    }
    return cases;
  });

  h.run("translators/lai-construction", [&] {
    std::uint64_t cases = 0;
    for (int i = 0; i < 4; ++i) {
      const FieldMap hm = random_field_map(t, rng);
      const Elt gamma{std::uint32_t(1 + rng.below(order - 1))};
      const Elt beta{std::uint32_t(rng.below(order))};
      const auto built = lai_construct(t, hm, gamma, beta);
      if (built.cert.alpha != gamma || built.cert.value != t.trace(t.mul(beta, gamma)))
        check_failed("certificate is not (gamma, Tr(beta*gamma))");
      const TranslatorSpace lam = lambda_space(t, built.f);
      for (std::uint32_t c = 1; c < t.q(); ++c) {
        const Elt cg = t.smul(GroundElt{c}, gamma);
        if (!lam.contains(cg)) check_failed("c*gamma escaped the translator space");
        if (*lam.value(cg) != t.gmul(GroundElt{c}, built.cert.value))
          check_failed("value map is not homogeneous along the gamma line");
        ++cases;
      }
    }
    expect_error(Errc::zero_gamma, "lai with gamma = 0",
                 [&] { lai_construct(t, zero_map(t), t.zero(), t.one()); });
    return cases;
  });

  h.run("translators/derivative-construction", [&] {
    std::uint64_t cases = 0;
    for (int i = 0; i < 3; ++i) {
      const GroundFn g = random_ground_fn(t, rng);
      const Elt alpha{std::uint32_t(1 + rng.below(order - 1))};
      const auto built = deriv_construct(t, g, alpha);
      if (built.certs.size() != t.q() - 1) check_failed("expected q - 1 certificates");
      for (const auto& cert : built.certs) {
        if (cert.value.v != 0) check_failed("derivative sums must have 0-translators");
        if (!check_cert(t, built.f, cert)) check_failed("derivative certificate fails");
      }
      // direct shift-invariance along the alpha line
      for (std::uint64_t x = 0; x < order; ++x)
        for (std::uint32_t c = 1; c < t.q(); ++c) {
          const Elt xs = t.add(Elt{std::uint32_t(x)}, t.smul(GroundElt{c}, alpha));
          if (built.f(xs) != built.f(Elt{std::uint32_t(x)}))
            check_failed("f is not constant along the alpha line");
        }
      cases += t.q() - 1;
    }
    expect_error(Errc::zero_alpha, "deriv with alpha = 0",
                 [&] { deriv_construct(t, random_ground_fn(t, rng), t.zero()); });
    return cases;
  });

  h.run("translators/monomial-coset", [&] {
    if (t.p() == 2 || t.n() % 4 != 0) return std::uint64_t(0);  // not applicable here
    const Elt beta{std::uint32_t(rng.below(order))};
    const MonomialFn mono = monom_construct(t, beta);
    const std::uint64_t q2 = std::uint64_t(t.q()) * t.q();
    if (mono.gamma_coset.size() != q2 - 1) check_failed("coset size is not q^2 - 1");
    for (std::size_t i = 0; i < mono.gamma_coset.size(); ++i) {
      const Elt gamma = mono.gamma_coset[i];
      const auto& cert = mono.certs[i];
      if (cert.alpha != gamma || cert.value != t.trace(t.mul(beta, gamma)))
        check_failed("coset certificate value is not Tr(beta*gamma)");
      if (!check_cert(t, mono.f, cert)) check_failed("coset certificate fails");
      if (t.frobenius(gamma, 2) != t.neg(gamma)) check_failed("gamma^(q^2) != -gamma");
      if (t.trace(t.pow(gamma, std::int64_t(t.q()) + 1)).v != 0)
        check_failed("Tr(gamma^(q+1)) != 0");
    }
    return mono.gamma_coset.size();
  });

  h.run("translators/kernel-containment", [&] {
    std::vector<Elt> coeffs(t.n());
    coeffs[1 % t.n()] = t.add(coeffs[1 % t.n()], t.one());
    coeffs[0] = t.add(coeffs[0], t.neg(t.one()));  // x^q - x
    const LinearMap l = linear_map_from_coeffs(t, std::move(coeffs));
    std::uint64_t cases = 0;
    for (int i = 0; i < 2; ++i) {
      const FieldMap hm = random_field_map(t, rng);
      const Elt beta{std::uint32_t(rng.below(order))};
      const auto rep = verify_kernel_in_lambda(t, l, hm, beta);
      const std::uint64_t expect = (t.n() == 1) ? order - 1 : std::uint64_t(t.q()) - 1;
      if (rep.kernel_certs.size() != expect) check_failed("wrong number of kernel certificates");
      for (const auto& cert : rep.kernel_certs) {
        if (cert.value != t.trace(t.mul(beta, cert.alpha)))
          check_failed("kernel certificate value is not Tr(beta*kappa)");
        ++cases;
      }
    }
    std::vector<Elt> id(t.n());
    id[0] = t.one();
    const LinearMap lid = linear_map_from_coeffs(t, std::move(id));
    expect_error(Errc::bijective_l, "kernel check on bijective L",
                 [&] { verify_kernel_in_lambda(t, lid, zero_map(t), t.zero()); });
    return cases;
  });

  h.run("translators/subspace-law", [&] {
    std::uint64_t cases = 0;
    for (int i = 0; i < 2; ++i) {
      const auto inst = random_certified_instance(t, rng);
      const TranslatorSpace lam = lambda_space(t, inst.f);
      std::vector<Elt> members;
      for (std::uint64_t j = 0; j < order; ++j)
        if (lam.contains(Elt{std::uint32_t(j)})) members.push_back(Elt{std::uint32_t(j)});
      const bool sample = members.size() > 128;
      auto pick = [&] { return members[rng.below(members.size())]; };
      const std::size_t rounds = sample ? 4096 : members.size() * members.size();
      for (std::size_t r = 0; r < rounds; ++r) {
        Elt a, b;
        if (sample) {
          a = pick();
          b = pick();
        } else {
          a = members[r / members.size()];
          b = members[r % members.size()];
        }
        const Elt s = t.add(a, b);
        if (!lam.contains(s)) check_failed("translator set is not closed under addition");
        if (*lam.value(s) != t.gadd(*lam.value(a), *lam.value(b)))
          check_failed("value map is not additive");
        ++cases;
      }
      for (const Elt a : members)
        for (std::uint32_t c = 0; c < t.q(); ++c) {
          const Elt ca = t.smul(GroundElt{c}, a);
          if (!lam.contains(ca)) check_failed("translator set is not closed under scaling");
          if (*lam.value(ca) != t.gmul(GroundElt{c}, *lam.value(a)))
            check_failed("value map is not homogeneous");
          ++cases;
        }
    }
    return cases;
  });
}

// ------------------------------------------------------------- families

void suite_families(const FieldTower& t, std::uint64_t seed, Harness& h) {
  Rng rng(seed ^ 0xc0de0003ull);
  const std::uint64_t order = t.order();
  const GroundElt minus1 = t.gminus_one();

  auto fiber_histogram = [&](const std::vector<Elt>& table) {
    std::vector<std::uint32_t> fibers(order, 0);
    for (const Elt e : table) ++fibers[e.v];
    return fibers;
  };

  h.run("families/shift-dichotomy", [&] {
    const std::size_t count = std::min<std::size_t>(std::max<std::size_t>(t.q(), 6), 12);
    for (std::size_t i = 0; i < count; ++i) {
      const auto inst = instance_with_value(t, rng, GroundElt{std::uint32_t(i % t.q())});
      const auto result = shift_perm(t, inst.f, inst.gamma, inst.cert);
      if (const auto* perm = std::get_if<PermTable>(&result)) {
        if (inst.cert.value == minus1) check_failed("b = -1 produced a permutation");
        for (const auto c : fiber_histogram(perm->table))
          if (c != 1) check_failed("permutation with a fiber != 1");
      } else {
        const auto& fm = std::get<FiberMap>(result);
        if (inst.cert.value != minus1) check_failed("b != -1 produced a fiber map");
        if (fm.fiber_size != t.q()) check_failed("fiber size is not q");
        std::uint64_t hit = 0;
        for (const auto c : fiber_histogram(fm.table)) {
          if (c != 0 && c != t.q()) check_failed("fiber is neither empty nor of size q");
          hit += (c != 0);
        }
        if (hit * t.q() != order) check_failed("image size times q is not q^n");
      }
    }
    return std::uint64_t(count);
  });

  h.run("families/closed-form-inverse", [&] {
    std::uint64_t cases = 0;
    for (std::uint32_t i = 0; i < std::min<std::uint32_t>(t.q(), 6); ++i) {
      const GroundElt b{i};
      const auto inst = instance_with_value(t, rng, b);
      if (b == minus1) {
        expect_error(Errc::b_is_minus_one, "inverse with b = -1",
                     [&] { shift_perm_inverse(t, inst.f, inst.gamma, inst.cert); });
        continue;
      }
      const PermTable inv = shift_perm_inverse(t, inst.f, inst.gamma, inst.cert);
      std::vector<Elt> fwd(order);
      for (std::uint64_t x = 0; x < order; ++x) {
        const Elt xe{std::uint32_t(x)};
        fwd[x] = t.add(xe, t.smul(inst.f(xe), inst.gamma));
      }
      if (inv.table != inverse_table(fwd))
        check_failed("closed form differs from the table inverse");
      ++cases;
    }
    return cases;
  });

  h.run("families/iteration-coefficients", [&] {
    std::uint64_t cases = 0;
    for (std::uint32_t i = 0; i < std::min<std::uint32_t>(t.q(), 5); ++i) {
      const GroundElt b{i};
      const auto inst = instance_with_value(t, rng, b);
      std::vector<Elt> fwd(order);
      for (std::uint64_t x = 0; x < order; ++x) {
        const Elt xe{std::uint32_t(x)};
        fwd[x] = t.add(xe, t.smul(inst.f(xe), inst.gamma));
      }
      const std::uint64_t bound =
          (b == minus1) ? 3
                        : ((b.v == 0) ? t.p() : t.ground_mult_order(t.gadd(b, t.gone())));
      std::vector<Elt> cur(order);
      for (std::uint64_t x = 0; x < order; ++x) cur[x] = Elt{std::uint32_t(x)};
      for (std::uint64_t k = 1; k <= bound; ++k) {
        for (std::uint64_t x = 0; x < order; ++x) cur[x] = fwd[cur[x].v];
        const auto it = iterate_closed_form(t, inst.f, inst.gamma, inst.cert, k);
        const std::vector<Elt>& table = std::holds_alternative<PermTable>(it)
                                            ? std::get<PermTable>(it).table
                                            : std::get<FiberMap>(it).table;
        if (table != cur) check_failed("closed-form iterate differs from composition at k=" +
                                       std::to_string(k));
        ++cases;
      }
      if (b != minus1) {
        bool ident = true;
        for (std::uint64_t x = 0; x < order; ++x) ident = ident && cur[x].v == x;
        if (!ident) check_failed("F_l is not the identity");
      }
    }
    return cases;
  });

  h.run("families/complete-mappings", [&] {
    if (t.p() == 2) {
      const auto inst = instance_with_value(t, rng, t.gzero());
      expect_error(Errc::even_q, "complete mapping in characteristic 2",
                   [&] { complete_mapping_shift(t, inst.f, inst.gamma, inst.cert); });
      return std::uint64_t(1);
    }
    std::vector<GroundElt> bs{t.gzero(), t.gone(), minus1, t.gneg(t.ground_of_int(2))};
    bs.push_back(GroundElt{std::uint32_t(rng.below(t.q()))});
    std::uint64_t cases = 0;
    for (const GroundElt b : bs) {
      const auto inst = instance_with_value(t, rng, b);
      const auto r = complete_mapping_shift(t, inst.f, inst.gamma, inst.cert);
      const bool expect = b != minus1 && b != t.gneg(t.ground_of_int(2));
      if (r.complete != expect) check_failed("completeness disagrees with b outside {-1,-2}");
      ++cases;
    }
    return cases;
  });

  h.run("families/two-translators", [&] {
    std::uint64_t cases = 0;
    const Elt gamma = t.one();
    auto affine = [&](Elt beta) {
      return ground_fn_from_fn(
          t, [&, beta](Elt x) { return t.trace(t.mul(beta, x)); }, "Tr(beta*x)");
    };
    if (t.n() >= 2) {
      const Elt delta{t.q()};  // the basis element x, independent of 1 over F_q
      auto beta_for = [&](GroundElt wg, GroundElt wd) {
        for (std::uint64_t i = 0; i < order; ++i) {
          const Elt b{std::uint32_t(i)};
          if (t.trace(t.mul(gamma, b)) == wg && t.trace(t.mul(delta, b)) == wd) return b;
        }
        check_failed("no beta realizes the requested trace pair");
      };
      auto run_one = [&](GroundElt b1, GroundElt d1, GroundElt b2, GroundElt d2) {
        const Elt beta1 = beta_for(b1, d1);
        const Elt beta2 = beta_for(b2, d2);
        const GroundFn f = affine(beta1), g = affine(beta2);
        return two_translator_perm(t, f, g, gamma, delta, TranslatorCert{gamma, b1},
                                   TranslatorCert{gamma, b2}, TranslatorCert{delta, d1},
                                   TranslatorCert{delta, d2});
      };
      run_one(t.gzero(), t.gzero(), t.gone(), t.gzero());
      ++cases;
      expect_error(Errc::hypothesis_failed, "b1 = -1",
                   [&] { run_one(minus1, t.gzero(), t.gzero(), t.gzero()); });
      // b1 = 0, d1 = 1, b2 = 1, d2 = 0 makes d2 - d1*b2/(b1+1) = -1
      expect_error(Errc::hypothesis_failed, "chained inequality",
                   [&] { run_one(t.gzero(), t.gone(), t.gone(), t.gzero()); });
      cases += 2;
    }
    for (int i = 0; i < 40 && cases < 12; ++i) {
      const Elt beta1{std::uint32_t(rng.below(order))}, beta2{std::uint32_t(rng.below(order))};
      const Elt delta{std::uint32_t(1 + rng.below(order - 1))};
      const GroundElt b1 = t.trace(t.mul(gamma, beta1)), b2 = t.trace(t.mul(gamma, beta2));
      const GroundElt d1 = t.trace(t.mul(delta, beta1)), d2 = t.trace(t.mul(delta, beta2));
      if (b1 == minus1) continue;
      if (t.gsub(d2, t.gdiv(t.gmul(d1, b2), t.gadd(b1, t.gone()))) == minus1) continue;
      two_translator_perm(t, affine(beta1), affine(beta2), gamma, delta,
                          TranslatorCert{gamma, b1}, TranslatorCert{gamma, b2},
                          TranslatorCert{delta, d1}, TranslatorCert{delta, d2});
      ++cases;
    }
    return cases;
  });

  h.run("families/general-h-iff", [&] {
    std::vector<ScalarFn> hs;
    std::uint64_t qq = 1;
    bool small = true;
    for (std::uint32_t i = 0; i < t.q() && small; ++i) {
      qq *= t.q();
      small = qq <= 256;
    }
    if (small) {
      hs = all_scalar_fns(t);
    } else {
      hs.push_back(identity_scalar(t));
      hs.push_back(zero_scalar(t));
      for (int i = 0; i < 24; ++i) hs.push_back(random_scalar_fn(t, rng));
    }
    std::uint64_t cases = 0;
    for (std::uint32_t i = 0; i < std::min<std::uint32_t>(t.q(), 4); ++i) {
      const auto inst = instance_with_value(t, rng, GroundElt{i});
      for (const auto& hf : hs) {
        general_h_perm(t, inst.f, inst.gamma, inst.cert, hf);  // iff asserted inside
        ++cases;
      }
    }
    return cases;
  });

  h.run("families/linear-general-h-iff", [&] {
    const LinearMap l = random_bijective_linear_map(t, rng);
    std::vector<ScalarFn> hs{identity_scalar(t), zero_scalar(t)};
    for (int i = 0; i < 8; ++i) hs.push_back(random_scalar_fn(t, rng));
    std::uint64_t cases = 0;
    for (std::uint32_t i = 0; i < std::min<std::uint32_t>(t.q(), 3); ++i) {
      const auto inst = instance_with_value(t, rng, GroundElt{i});
      for (const auto& hf : hs) {
        linear_general_h_perm(t, l, inst.f, inst.gamma, inst.cert, hf);
        ++cases;
      }
    }
    std::vector<Elt> sing(t.n());
    sing[1 % t.n()] = t.add(sing[1 % t.n()], t.one());
    sing[0] = t.add(sing[0], t.neg(t.one()));
    const LinearMap bad = linear_map_from_coeffs(t, std::move(sing));
    const auto inst = instance_with_value(t, rng, t.gzero());
    expect_error(Errc::non_bijective_l, "singular L", [&] {
      linear_general_h_perm(t, bad, inst.f, inst.gamma, inst.cert, identity_scalar(t));
    });
    return cases;
  });

  h.run("families/subfield-linear-pp", [&] {
    std::vector<LinearMap> ls;
    {
      std::vector<Elt> id(t.n());
      id[0] = t.one();
      ls.push_back(linear_map_from_coeffs(t, std::move(id)));
    }
    if (t.n() > 1) {
      std::vector<Elt> fr(t.n());
      fr[1] = t.one();
      ls.push_back(linear_map_from_coeffs(t, std::move(fr)));  // x^q
    }
    {
      std::vector<Elt> sc(t.n());
      sc[0] = t.embed(GroundElt{std::uint32_t(1 + rng.below(t.q() - 1))});
      ls.push_back(linear_map_from_coeffs(t, std::move(sc)));
    }
    std::vector<ScalarFn> hs{zero_scalar(t), identity_scalar(t)};
    for (int i = 0; i < 6; ++i) hs.push_back(random_scalar_fn(t, rng));
    std::uint64_t cases = 0;
    for (const auto& l : ls)
      for (const auto& hf : hs) {
        const Elt gamma{std::uint32_t(rng.below(order))};
        marcos_pp(t, l, hf, gamma);  // iff asserted inside
        ++cases;
      }
    if (t.n() > 1) {
      std::vector<Elt> off(t.n());
      off[0] = Elt{t.q()};  // coefficient outside the embedded F_q
      const LinearMap lbad = linear_map_from_coeffs(t, std::move(off));
      expect_error(Errc::coefficients_not_in_subfield, "coefficient outside F_q",
                   [&] { marcos_pp(t, lbad, identity_scalar(t), t.one()); });
    }
    return cases;
  });

  h.run("families/kernel-pp-iff", [&] {
    if (t.n() == 1) return std::uint64_t(0);  // x^q - x degenerates to the zero map
    std::vector<Elt> coeffs(t.n());
    coeffs[1] = t.one();
    coeffs[0] = t.neg(t.one());
    const LinearMap l = linear_map_from_coeffs(t, std::move(coeffs));
    std::uint64_t cases = 0;
    Elt gamma_out = t.zero(), gamma_in = t.zero();
    for (std::uint64_t i = 0; i < order; ++i) {
      const Elt a{std::uint32_t(i)};
      if (t.trace(a).v != 0 && gamma_out.v == 0) gamma_out = a;
      if (i > 0 && t.trace(a).v == 0 && gamma_in.v == 0) gamma_in = a;
    }
    for (const GroundElt b : {t.gzero(), t.gone()}) {
      // affine f with translator value b at alpha = 1
      const auto inst = instance_with_value(t, rng, b);
      // rebuild as f(x) = Tr(beta*x) with Tr(beta) = b so that alpha = 1 certifies
      std::optional<Elt> beta;
      for (std::uint64_t i = 0; i < order && !beta; ++i)
        if (t.trace(Elt{std::uint32_t(i)}) == b) beta = Elt{std::uint32_t(i)};
      const GroundFn f = ground_fn_from_fn(
          t, [&, beta](Elt x) { return t.trace(t.mul(*beta, x)); }, "Tr(beta*x)");
      const ScalarFn hf = random_scalar_permutation(t, rng);
      for (const Elt gamma : {gamma_out, gamma_in}) {
        kernel_perm(t, l, f, TranslatorCert{t.one(), b}, hf, gamma);  // iff asserted inside
        ++cases;
      }
    }
    expect_error(Errc::h_not_bijective, "constant h", [&] {
      kernel_perm(t, l, trace_fn(t), TranslatorCert{t.one(), t.ground_of_int(t.n())},
                  zero_scalar(t), gamma_out);
    });
    std::vector<Elt> id(t.n());
    id[0] = t.one();
    const LinearMap lid = linear_map_from_coeffs(t, std::move(id));
    expect_error(Errc::kernel_not_line, "bijective L has no kernel line", [&] {
      kernel_perm(t, lid, trace_fn(t), TranslatorCert{t.one(), t.ground_of_int(t.n())},
                  random_scalar_permutation(t, rng), gamma_out);
    });
    return cases;
  });

  h.run("families/named-families", [&] {
    std::uint64_t cases = 0;
    auto rnd_nonzero = [&] { return Elt{std::uint32_t(1 + rng.below(order - 1))}; };
    auto rnd = [&] { return Elt{std::uint32_t(rng.below(order))}; };

    {
      FamilyParams ps;
      ps.h_map = random_field_map(t, rng);
      ps.gamma = rnd_nonzero();
      ps.beta = rnd();
      build_named_family(t, Family::lai_shift, ps);
      ++cases;
      // steer the criterion to fail: Tr(gamma*beta) = -1
      std::optional<Elt> y;
      for (std::uint64_t i = 0; i < order && !y; ++i)
        if (t.trace(Elt{std::uint32_t(i)}) == minus1) y = Elt{std::uint32_t(i)};
      ps.beta = t.div(*y, *ps.gamma);
      const auto res = build_named_family(t, Family::lai_shift, ps);
      if (res.criterion.holds || res.verdict != Verdict::q_to_1)
        check_failed("failing criterion must give a q-to-1 verdict");
      ++cases;
    }

    if (t.n() % 2 == 1 && t.p() != 2) {
      for (const Family fam : {Family::qplus_shift_a, Family::qplus_shift_b}) {
        FamilyParams ps;
        ps.h_map = random_field_map(t, rng);
        ps.gamma = rnd_nonzero();
        ps.beta = rnd();
        build_named_family(t, fam, ps);
        ++cases;
      }
    } else {
      FamilyParams ps;
      ps.gamma = rnd_nonzero();
      ps.beta = rnd();
      expect_error(Errc::family_precondition_failed, "qplus preconditions",
                   [&] { build_named_family(t, Family::qplus_shift_a, ps); });
      ++cases;
    }

    if (t.n() >= 2) {
      FamilyParams ps;
      ps.alpha = Elt{std::uint32_t(t.q() + rng.below(order - t.q()))};
      ps.beta = rnd();
      ps.beta2 = rnd();
      ps.h_map = random_field_map(t, rng);
      ps.h2_map = random_field_map(t, rng);
      build_named_family(t, Family::double_coord, ps);
      ++cases;
      FamilyParams inside = ps;
      inside.alpha = t.one();
      expect_error(Errc::family_precondition_failed, "alpha inside F_q",
                   [&] { build_named_family(t, Family::double_coord, inside); });
      ++cases;
    }

    if (t.p() != 2 && t.n() % 4 == 0) {
      const MonomialFn mono = monom_construct(t, t.zero());
      FamilyParams ps;
      ps.gamma = mono.gamma_coset[rng.below(mono.gamma_coset.size())];
      ps.beta = rnd();
      ps.t = 1;
      const auto res = build_named_family(t, Family::monom_t, ps);
      if (res.verdict != Verdict::permutation) check_failed("coset instance must permute");
      ++cases;
      ps.t = smallest_extra_t(t.q());
      build_named_family(t, Family::monom_t, ps);
      ++cases;
      FamilyParams bad = ps;
      bad.gamma = t.one();  // 1^(q^2-1) = 1 != -1
      expect_error(Errc::family_precondition_failed, "gamma outside the coset",
                   [&] { build_named_family(t, Family::monom_t, bad); });
      if (t.q() > 2) {
        FamilyParams badt = ps;
        badt.t = t.q() - 1;
        expect_error(Errc::family_precondition_failed, "t not coprime to q-1",
                     [&] { build_named_family(t, Family::monom_t, badt); });
      }
      cases += 2;
    } else if (t.p() != 2) {
      FamilyParams ps;
      ps.gamma = t.one();
      ps.beta = rnd();
      expect_error(Errc::family_precondition_failed, "n not divisible by 4",
                   [&] { build_named_family(t, Family::monom_t, ps); });
      ++cases;
    }

    {
      Elt tr_zero = t.zero(), tr_nonzero = t.zero();
      for (std::uint64_t i = 1; i < order && (tr_zero.v == 0 || tr_nonzero.v == 0); ++i) {
        const Elt a{std::uint32_t(i)};
        if (t.trace(a).v == 0 && tr_zero.v == 0) tr_zero = a;
        if (t.trace(a).v != 0 && tr_nonzero.v == 0) tr_nonzero = a;
      }
      if (tr_zero.v == 0) tr_zero = t.zero();  // n = 1: only 0 has zero trace
      for (const Elt gamma : {tr_zero, tr_nonzero})
        for (const Elt beta : {tr_zero, tr_nonzero}) {
          FamilyParams ps;
          ps.h_map = random_field_map(t, rng);
          ps.gamma = gamma;
          ps.beta = beta;
          ps.t = 1;
          build_named_family(t, Family::artin_schreier_t, ps);
          ++cases;
        }
      FamilyParams ps;
      ps.gamma = tr_nonzero;
      ps.beta = tr_nonzero;
      ps.t = smallest_extra_t(t.q());
      build_named_family(t, Family::artin_schreier_t, ps);
      ++cases;
      if (t.q() > 2) {
        ps.t = t.q() - 1;
        expect_error(Errc::family_precondition_failed, "t not coprime to q-1",
                     [&] { build_named_family(t, Family::artin_schreier_t, ps); });
        ++cases;
      }
    }

    expect_error(Errc::bad_spec, "unknown family name",
                 [&] { family_from_name("no_such_family"); });
    expect_error(Errc::bad_spec, "missing parameter", [&] {
      FamilyParams empty;
      build_named_family(t, Family::lai_shift, empty);
    });
    return cases;
  });
}

// ------------------------------------------------------------- analysis

void suite_analysis(const FieldTower& t, std::uint64_t seed, Harness& h) {
  Rng rng(seed ^ 0xc0de0004ull);
  const std::uint64_t order = t.order();
  const GroundElt minus1 = t.gminus_one();

  h.run("analysis/cycles-closed-vs-brute", [&] {
    std::uint64_t cases = 0;
    for (std::uint32_t i = 0; i < std::min<std::uint32_t>(t.q(), 5); ++i) {
      const GroundElt b{i};
      const auto inst = instance_with_value(t, rng, b);
      if (b == minus1) {
        expect_error(Errc::b_is_minus_one, "cycles with b = -1", [&] {
          cycle_structure_closed_form(t, inst.f, inst.gamma, inst.cert);
        });
        continue;
      }
      const auto closed = cycle_structure_closed_form(t, inst.f, inst.gamma, inst.cert);
      std::vector<Elt> fwd(order);
      std::uint64_t zeros = 0;
      for (std::uint64_t x = 0; x < order; ++x) {
        const Elt xe{std::uint32_t(x)};
        fwd[x] = t.add(xe, t.smul(inst.f(xe), inst.gamma));
        zeros += inst.f(xe).v == 0;
      }
      const auto brute = cycle_structure_brute(perm_from_table(fwd, "oracle"));
      if (closed.length_multiset() != brute.length_multiset())
        check_failed("cycle length multisets differ");
      if (closed.fixed_points != brute.fixed_points) check_failed("fixed point sets differ");
      if (closed.fixed_count() != zeros) check_failed("fixed points are not the zeros of f");
      std::uint64_t covered = closed.fixed_count();
      for (const auto& c : closed.cycles) covered += c.size();
      if (covered != order) check_failed("cycles do not partition the field");
      ++cases;
    }
    return cases;
  });

  h.run("analysis/mob-parallel-vs-serial", [&] {
    std::vector<FieldMap> hs{trace_map(t), identity_map(t), zero_map(t),
                             random_field_map(t, rng), random_field_map(t, rng)};
    for (const auto& hm : hs)
      if (mob_set(t, hm).members != mob_set_serial(t, hm).members)
        check_failed("parallel and serial multiplier sets differ");
    return hs.size();
  });

  h.run("analysis/mob-trace-count", [&] {
    const auto mob = mob_set(t, trace_map(t));
    const std::uint64_t expect = order - order / t.q() - 1;
    if (mob.members.size() != expect)
      check_failed("|M(Tr)| = " + std::to_string(mob.members.size()) + ", expected " +
                   std::to_string(expect));
    for (std::uint64_t i = 0; i < order; ++i) {
      const Elt c{std::uint32_t(i)};
      const bool member = i != 0 && t.trace(t.inv(c)) != minus1;
      if (mob.contains(c) != member)
        check_failed("membership differs from Tr(1/c) != -1 at " + std::to_string(i));
    }
    return order;
  });

  h.run("analysis/mob-trivial-maps", [&] {
    const auto zero = mob_set(t, zero_map(t));
    if (zero.members.size() != order - 1 || zero.contains(t.zero()))
      check_failed("M(0) must be every nonzero c");
    const auto ident = mob_set(t, identity_map(t));
    if (ident.members.size() != order - 1 || ident.contains(t.neg(t.one())))
      check_failed("M(id) must be everything except -1");
    return 2 * order;
  });

  h.run("analysis/directions", [&] {
    std::vector<FieldMap> hs{trace_map(t), random_field_map(t, rng)};
    for (const auto& hm : hs)
      if (direction_set(t, hm).members != direction_set_serial(t, hm).members)
        check_failed("parallel and serial direction sets differ");
    const FieldMap constant = field_map_from_fn(t, [&](Elt) { return t.one(); }, "const 1");
    const auto dc = direction_set(t, constant);
    if (dc.members.size() != 1 || dc.members[0].v != 0)
      check_failed("constant map must determine exactly direction 0");
    const auto di = direction_set(t, identity_map(t));
    if (di.members.size() != 1 || di.members[0] != t.one())
      check_failed("identity must determine exactly direction 1");
    return hs.size() + 2;
  });

  h.run("analysis/duality", [&] {
    std::vector<FieldMap> hs{trace_map(t), identity_map(t), random_field_map(t, rng),
                             random_field_map(t, rng), random_field_map(t, rng)};
    std::uint64_t cases = 0;
    for (const auto& hm : hs) {
      const auto r = duality_check(t, hm);
      if (!r.pass())
        check_failed(std::to_string(r.violations) + " duality violations");
      cases += r.checked;
    }
    return cases;
  });

  h.run("analysis/translator-multiplier-inclusion", [&] {
    const GroundFn zero = ground_fn_from_fn(t, [&](Elt) { return t.gzero(); }, "0");
    const auto rz = translator_direction_inclusion(t, zero);
    if (rz.subset.size() != order - 1 || rz.mob_size != order - 1)
      check_failed("for f = 0 both sides must be all nonzero elements");
    translator_direction_inclusion(t, trace_fn(t));
    translator_direction_inclusion(t, random_certified_instance(t, rng).f);
    translator_direction_inclusion(t, random_ground_fn(t, rng));
    return std::uint64_t(4);
  });

  h.run("analysis/multiplier-lower-bound", [&] {
    std::uint64_t cases = 0;
    const Elt alpha{std::uint32_t(1 + rng.below(order - 1))};
    th_dir_bound(t, zero_scalar(t), t.one());
    ++cases;
    if (t.p() != 2) {
      // largest power of two dividing q - 1 gives a valid power map
      std::uint32_t i = 0;
      std::uint32_t d = t.q() - 1;
      while (d % 2 == 0) {
        d /= 2;
        ++i;
      }
      const ScalarFn g = power_scalar(t, 1u << i);
      th_dir_bound(t, g, t.one());
      th_dir_bound(t, g, alpha);
      cases += 2;
    }
    for (int k = 0; k < 3; ++k) {
      std::vector<GroundElt> tab(t.q());
      tab[0] = t.gzero();
      for (std::uint32_t u = 1; u < t.q(); ++u) {
        GroundElt v;
        do
          v = GroundElt{std::uint32_t(rng.below(t.q()))};
        while (v == minus1);
        tab[u] = v;
      }
      th_dir_bound(t, ScalarFn{std::move(tab), "random admissible g"}, alpha);
      ++cases;
    }
    expect_error(Errc::g_violates_hypotheses, "-1 in the image", [&] {
      std::vector<GroundElt> tab(t.q(), minus1);
      tab[0] = t.gzero();
      th_dir_bound(t, ScalarFn{std::move(tab), "bad g"}, t.one());
    });
    expect_error(Errc::g_violates_hypotheses, "g(0) != 0", [&] {
      std::vector<GroundElt> tab(t.q(), t.gzero());
      tab[0] = t.gone();
      th_dir_bound(t, ScalarFn{std::move(tab), "bad g"}, t.one());
    });
    expect_error(Errc::zero_alpha, "alpha = 0",
                 [&] { th_dir_bound(t, zero_scalar(t), t.zero()); });
    return cases;
  });
}

}  // namespace

RunReport run_verify(const FieldTower& t, Suite suite, std::uint64_t seed) {
  RunReport r;
  r.field = format_field_spec(t);
  r.suite = suite_name(suite);
  r.seed = seed;
  Harness h{&r};
  const auto start = std::chrono::steady_clock::now();
  if (suite == Suite::core || suite == Suite::all) suite_core(t, seed, h);
  if (suite == Suite::translators || suite == Suite::all) suite_translators(t, seed, h);
  if (suite == Suite::families || suite == Suite::all) suite_families(t, seed, h);
  if (suite == Suite::analysis || suite == Suite::all) suite_analysis(t, seed, h);
  const auto stop = std::chrono::steady_clock::now();
  r.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return r;
}

std::string report_to_json(const RunReport& r, bool include_timing) {
  nlohmann::json j;
  j["field"] = r.field;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["status"] = r.pass() ? "pass" : "fail";
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json jc;
    jc["name"] = c.name;
    jc["cases"] = c.cases;
    jc["passed"] = c.passed;
    if (!c.detail.empty()) jc["detail"] = c.detail;
    checks.push_back(std::move(jc));
  }
  j["checks"] = std::move(checks);
  j["counterexamples"] = r.counterexamples;
  if (include_timing) j["elapsed_ms"] = r.elapsed_ms;
  return j.dump(2) + "\n";
}

}  // namespace gfperm
