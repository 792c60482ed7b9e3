#include <cstdint>
#include <functional>
#include <vector>

#include "doctest.h"

#include "gfperm/error.hpp"
#include "gfperm/field_spec.hpp"
#include "gfperm/field_tower.hpp"

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

TEST_CASE("tower shape and indexing") {
  const FieldTower t = FieldTower::make(3, 2, 2);
  CHECK(t.p() == 3);
  CHECK(t.q() == 9);
  CHECK(t.order() == 81);
  CHECK(t.ground_modulus().size() == 3);
  CHECK(t.ext_modulus().size() == 3);

  for (std::uint64_t i = 0; i < t.order(); ++i) {
    CHECK(t.index_of(t.element_of(i)) == i);
    CHECK(t.from_coords(t.coords(t.element_of(i))).v == i);
  }
  // the canonical encoding writes coordinates base q
  const Elt a = t.element_of(5 + 7 * 9);
  const auto c = t.coords(a);
  CHECK(c[0].v == 5);
  CHECK(c[1].v == 7);
}

TEST_CASE("construction errors") {
  CHECK(throws_code(Errc::not_prime, [] { FieldTower::make(4, 1, 2); }));
  CHECK(throws_code(Errc::not_prime, [] { FieldTower::make(1, 1, 2); }));
  CHECK(throws_code(Errc::bad_spec, [] { FieldTower::make(3, 0, 2); }));
  CHECK(throws_code(Errc::budget_exceeded, [] { FieldTower::make(3, 1, 9, 1000); }));
  // wrong length, non-monic, and reducible explicit moduli
  CHECK(throws_code(Errc::bad_spec, [] {
    FieldTower::make(2, 2, 2, std::vector<std::uint32_t>{1, 1}, std::nullopt);
  }));
  CHECK(throws_code(Errc::bad_spec, [] {
    // x^2 + 1 = (x+1)^2 over F_2
    FieldTower::make(2, 2, 2, std::vector<std::uint32_t>{1, 0, 1}, std::nullopt);
  }));
}

TEST_CASE("field axioms on mixed towers") {
  for (const char* spec : {"p=2,m=1,n=3", "p=5,m=1,n=2", "p=2,m=2,n=2"}) {
    const FieldTower t = tower_from_spec(spec);
    const std::uint64_t order = t.order();
    for (std::uint64_t i = 0; i < order; ++i) {
      const Elt a{std::uint32_t(i)};
      CHECK(t.add(a, t.zero()) == a);
      CHECK(t.mul(a, t.one()) == a);
      CHECK(t.add(a, t.neg(a)).v == 0);
      if (i != 0) {
        CHECK(t.mul(a, t.inv(a)) == t.one());
        CHECK(t.pow(a, std::int64_t(order) - 1) == t.one());
      }
    }
    // spot-check associativity/distributivity on a lattice of triples
    for (std::uint64_t i = 0; i < order; i += 3)
      for (std::uint64_t j = 1; j < order; j += 5)
        for (std::uint64_t k = 2; k < order; k += 7) {
          const Elt a{std::uint32_t(i)}, b{std::uint32_t(j)}, c{std::uint32_t(k)};
          CHECK(t.mul(t.mul(a, b), c) == t.mul(a, t.mul(b, c)));
          CHECK(t.mul(a, t.add(b, c)) == t.add(t.mul(a, b), t.mul(a, c)));
        }
  }
}

TEST_CASE("pow edge cases") {
  const FieldTower t = FieldTower::make(3, 1, 2);
  CHECK(t.pow(t.zero(), 0) == t.one());
  CHECK(t.pow(t.zero(), 4).v == 0);
  const Elt a = t.element_of(5);
  CHECK(t.pow(a, -1) == t.inv(a));
  CHECK(t.pow(a, -5) == t.inv(t.pow(a, 5)));
  CHECK(throws_code(Errc::division_by_zero, [&] { t.pow(t.zero(), -2); }));
  CHECK(throws_code(Errc::division_by_zero, [&] { t.inv(t.zero()); }));
}

TEST_CASE("trace against the powering oracle") {
  for (const char* spec : {"p=3,m=1,n=2", "p=2,m=2,n=2", "p=2,m=1,n=4"}) {
    const FieldTower t = tower_from_spec(spec);
    std::vector<std::uint64_t> fibers(t.q(), 0);
    for (std::uint64_t i = 0; i < t.order(); ++i) {
      const Elt a{std::uint32_t(i)};
      Elt acc = t.zero();
      std::int64_t e = 1;
      for (std::uint32_t k = 0; k < t.n(); ++k) {
        acc = t.add(acc, t.pow(a, e));
        e *= t.q();
      }
      REQUIRE(t.in_ground(acc));
      CHECK(t.project(acc) == t.trace(a));
      ++fibers[t.trace(a).v];
    }
    for (const auto f : fibers) CHECK(f == t.order() / t.q());
  }
}

TEST_CASE("frobenius fixes exactly the embedded subfield") {
  const FieldTower t = FieldTower::make(2, 2, 3);  // F_64 over F_4
  std::uint64_t fixed = 0;
  for (std::uint64_t i = 0; i < t.order(); ++i) {
    const Elt a{std::uint32_t(i)};
    CHECK(t.frobenius(a, 1) == t.pow(a, t.q()));
    CHECK(t.frobenius(a, t.n()) == a);
    if (t.frobenius(a, 1) == a) {
      ++fixed;
      CHECK(t.in_ground(a));
    }
  }
  CHECK(fixed == t.q());
}

TEST_CASE("embedding is a ring homomorphism") {
  const FieldTower t = FieldTower::make(3, 2, 2);
  for (std::uint32_t c = 0; c < t.q(); ++c) {
    CHECK(t.project(t.embed(GroundElt{c})) == GroundElt{c});
    for (std::uint32_t d = 0; d < t.q(); ++d) {
      CHECK(t.embed(t.gadd(GroundElt{c}, GroundElt{d})) ==
            t.add(t.embed(GroundElt{c}), t.embed(GroundElt{d})));
      CHECK(t.embed(t.gmul(GroundElt{c}, GroundElt{d})) ==
            t.mul(t.embed(GroundElt{c}), t.embed(GroundElt{d})));
    }
  }
  CHECK(throws_code(Errc::not_in_subfield, [&] { t.project(Elt{t.q()}); }));
}

TEST_CASE("primitive element and multiplicative orders") {
  const FieldTower t = FieldTower::make(5, 1, 2);  // F_25
  const Elt lam = t.primitive_element();
  CHECK(t.mult_order(lam) == t.order() - 1);
  for (std::uint32_t i = 1; i < lam.v; ++i) CHECK(t.mult_order(Elt{i}) < t.order() - 1);
  for (std::uint64_t i = 1; i < t.order(); ++i) {
    const std::uint64_t o = t.mult_order(Elt{std::uint32_t(i)});
    CHECK((t.order() - 1) % o == 0);
    CHECK(t.pow(Elt{std::uint32_t(i)}, std::int64_t(o)) == t.one());
  }
}

TEST_CASE("same_tower distinguishes moduli") {
  const FieldTower a = FieldTower::make(3, 1, 2);
  const FieldTower b = FieldTower::make(3, 1, 2);
  const FieldTower c = FieldTower::make(3, 1, 3);
  CHECK(same_tower(a, b));
  CHECK(!same_tower(a, c));
}
