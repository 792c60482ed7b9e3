#include <cstdint>
#include <functional>
#include <vector>

#include "doctest.h"

#include "gfperm/analysis.hpp"
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

TEST_CASE("closed-form cycles match orbit walking") {
  for (const char* spec : {"p=3,m=1,n=2", "p=2,m=2,n=2"}) {
    const FieldTower t = tower_from_spec(spec);
    Rng rng(211);
    for (std::uint32_t b = 0; b < t.q(); ++b) {
      const auto inst = instance_with_value(t, rng, GroundElt{b});
      if (b == t.gminus_one().v) {
        CHECK(throws_code(Errc::b_is_minus_one, [&] {
          cycle_structure_closed_form(t, inst.f, inst.gamma, inst.cert);
        }));
        continue;
      }
      const auto closed = cycle_structure_closed_form(t, inst.f, inst.gamma, inst.cert);
      const auto fwd = oracles::shift_table(t, inst.f, inst.gamma);
      const auto oracle = oracles::cycles(t, fwd);
      CHECK(closed.length_multiset() == oracle.lengths);
      CHECK(closed.fixed_count() == oracle.fixed);
      std::uint64_t zeros = 0;
      for (std::uint64_t i = 0; i < t.order(); ++i) zeros += inst.f(Elt{std::uint32_t(i)}).v == 0;
      CHECK(closed.fixed_count() == zeros);
      // all moving cycles share one length: p for b = 0, ord(b+1) otherwise
      const std::uint64_t ell =
          (b == 0) ? t.p() : t.ground_mult_order(t.gadd(GroundElt{b}, t.gone()));
      for (const auto& c : closed.cycles) CHECK(c.size() == ell);
      CHECK((t.order() - closed.fixed_count()) % ell == 0);
      CHECK(closed.cycles.size() == (t.order() - closed.fixed_count()) / ell);
    }
  }
}

TEST_CASE("brute-force decomposition of an arbitrary permutation") {
  const FieldTower t = FieldTower::make(2, 1, 3);
  // 0 fixed; (1 2); (3 4 5 6 7)
  std::vector<Elt> table{Elt{0}, Elt{2}, Elt{1}, Elt{4}, Elt{5}, Elt{6}, Elt{7}, Elt{3}};
  const auto cd = cycle_structure_brute(perm_from_table(table, "handmade"));
  CHECK(cd.fixed_points == std::vector<Elt>{Elt{0}});
  CHECK(cd.length_multiset() == std::vector<std::uint64_t>{2, 5});
}

TEST_CASE("multiplier set of the trace matches the closed count") {
  for (const char* spec : {"p=3,m=1,n=2", "p=3,m=1,n=3", "p=2,m=1,n=4", "p=5,m=1,n=2"}) {
    const FieldTower t = tower_from_spec(spec);
    const auto mob = mob_set(t, trace_map(t));
    CHECK(mob.members.size() == t.order() - t.order() / t.q() - 1);
    for (std::uint64_t i = 0; i < t.order(); ++i) {
      const Elt c{std::uint32_t(i)};
      const bool want = i != 0 && t.trace(t.inv(c)) != t.gminus_one();
      CHECK(mob.contains(c) == want);
    }
  }
}

TEST_CASE("multiplier sets of trivial maps") {
  const FieldTower t = FieldTower::make(3, 1, 2);
  const auto z = mob_set(t, zero_map(t));
  CHECK(z.members.size() == t.order() - 1);
  CHECK(!z.contains(t.zero()));
  const auto id = mob_set(t, identity_map(t));
  CHECK(id.members.size() == t.order() - 1);
  CHECK(!id.contains(t.neg(t.one())));
  CHECK(mob_set(t, identity_map(t)).members == mob_set_serial(t, identity_map(t)).members);
}

TEST_CASE("direction sets") {
  const FieldTower t = FieldTower::make(5, 1, 1);
  // squaring: (x^2 - y^2)/(x - y) = x + y covers everything
  const FieldMap sq = field_map_from_fn(t, [&](Elt x) { return t.mul(x, x); }, "x^2");
  const auto d = direction_set(t, sq);
  CHECK(d.members.size() == t.order());
  const auto di = direction_set(t, identity_map(t));
  CHECK(di.members == std::vector<Elt>{t.one()});
  CHECK(direction_set(t, sq).members == direction_set_serial(t, sq).members);
}

TEST_CASE("multipliers are the complement of negated directions") {
  for (const char* spec : {"p=3,m=1,n=2", "p=2,m=1,n=4"}) {
    const FieldTower t = tower_from_spec(spec);
    Rng rng(223);
    for (int round = 0; round < 5; ++round) {
      const auto r = duality_check(t, random_field_map(t, rng));
      CHECK(r.violations == 0);
      CHECK(r.checked == t.order());
    }
    CHECK(duality_check(t, trace_map(t)).pass());
    CHECK(duality_check(t, identity_map(t)).pass());
  }
}

TEST_CASE("translator directions enter the multiplier set") {
  const FieldTower t = FieldTower::make(3, 1, 2);
  Rng rng(227);
  const GroundFn zero = ground_fn_from_fn(t, [&](Elt) { return t.gzero(); }, "0");
  const auto rz = translator_direction_inclusion(t, zero);
  CHECK(rz.subset.size() == t.order() - 1);
  CHECK(rz.mob_size == t.order() - 1);
  const auto inst = random_certified_instance(t, rng);
  const auto ri = translator_direction_inclusion(t, inst.f);
  CHECK(ri.subset.size() <= ri.mob_size);
}

TEST_CASE("trace-composed scalar functions bound the multiplier set") {
  const FieldTower t = FieldTower::make(3, 1, 2);
  // q = 3: q - 1 = 2, so squaring avoids -1 and fixes 0
  const auto r = th_dir_bound(t, power_scalar(t, 2), t.one());
  CHECK(r.bound == t.order() / t.q() - 1);
  CHECK(r.subset.size() == r.bound);
  CHECK(r.mob_size >= r.bound);
  // independent recomputation of the witness subset
  for (const Elt d : r.subset) {
    CHECK(d.v != 0);
    CHECK(t.trace(t.inv(d)).v == 0);
  }
  CHECK(throws_code(Errc::g_violates_hypotheses, [&] {
    th_dir_bound(t, identity_scalar(t), t.one());  // -1 is in the image of u -> u
  }));
  CHECK(throws_code(Errc::zero_alpha, [&] { th_dir_bound(t, zero_scalar(t), t.zero()); }));
}
