#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "doctest.h"

#include "gfperm/error.hpp"
#include "gfperm/field_spec.hpp"
#include "gfperm/maps.hpp"
#include "gfperm/rng.hpp"
#include "gfperm/table_io.hpp"
#include "gfperm/verify.hpp"

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

TEST_CASE("field spec grammar") {
  const FieldSpec s = parse_field_spec("p=3,m=2,n=2");
  CHECK(s.p == 3);
  CHECK(s.m == 2);
  CHECK(s.n == 2);
  CHECK(!s.g.has_value());
  CHECK(!s.h.has_value());

  const FieldSpec full = parse_field_spec("p=2,m=2,n=2,g=1,1,1,h=2,1,1");
  REQUIRE(full.g.has_value());
  CHECK(*full.g == std::vector<std::uint32_t>{1, 1, 1});
  REQUIRE(full.h.has_value());
  CHECK(full.h->size() == 3);

  CHECK(throws_code(Errc::bad_spec, [] { parse_field_spec("p=3,m=1"); }));
  CHECK(throws_code(Errc::bad_spec, [] { parse_field_spec("p=3,p=5,m=1,n=1"); }));
  CHECK(throws_code(Errc::bad_spec, [] { parse_field_spec("p=3,m=1,n=two"); }));
  CHECK(throws_code(Errc::bad_spec, [] { parse_field_spec("3,m=1,n=2"); }));
  CHECK(throws_code(Errc::bad_spec, [] { parse_field_spec(""); }));
}

TEST_CASE("canonical spec round trips to the same tower") {
  for (const char* spec : {"p=3,m=1,n=2", "p=2,m=2,n=2", "p=5,m=1,n=2"}) {
    const FieldTower t = tower_from_spec(spec);
    const std::string canon = format_field_spec(t);
    const FieldTower again = tower_from_spec(canon);
    CHECK(same_tower(t, again));
    CHECK(format_field_spec(again) == canon);
  }
}

TEST_CASE("table files round trip") {
  const FieldTower t = FieldTower::make(3, 1, 2);
  Rng rng(307);
  const FieldMap m = random_field_map(t, rng);
  const std::string text = field_map_to_json(t, m);
  CHECK(embedded_field_spec(text) == format_field_spec(t));
  const FieldMap back = field_map_from_json(t, text);
  CHECK(back.table == m.table);
  CHECK(back.origin == m.origin);

  const GroundFn f = random_ground_fn(t, rng);
  const GroundFn fback = ground_fn_from_json(t, ground_fn_to_json(t, f));
  CHECK(fback.table == f.table);
}

TEST_CASE("table files validate field, kind, and entries") {
  const FieldTower t = FieldTower::make(3, 1, 2);
  const FieldTower other = FieldTower::make(2, 1, 3);
  const std::string text = field_map_to_json(t, identity_map(t));
  CHECK(throws_code(Errc::bad_spec, [&] { field_map_from_json(other, text); }));
  // the identity leaves the embedded subfield, so it cannot project down
  CHECK(throws_code(Errc::not_in_subfield, [&] { ground_fn_from_json(t, text); }));
  CHECK(throws_code(Errc::bad_spec, [&] { field_map_from_json(t, "not json at all"); }));
  CHECK(throws_code(Errc::bad_spec, [&] { field_map_from_json(t, R"({"table": [0]})"); }));

  // out-of-range entry
  std::string tampered = text;
  const auto pos = tampered.find("[");
  REQUIRE(pos != std::string::npos);
  tampered.replace(pos + 1, tampered.find_first_of(",]", pos) - pos - 1, "99");
  CHECK(throws_code(Errc::index_out_of_range, [&] { field_map_from_json(t, tampered); }));
}

TEST_CASE("subfield-valued field maps project to ground functions") {
  const FieldTower t = FieldTower::make(3, 1, 2);
  const GroundFn f = ground_fn_from_json(t, field_map_to_json(t, trace_map(t)));
  for (std::uint64_t i = 0; i < t.order(); ++i)
    CHECK(f(Elt{std::uint32_t(i)}) == t.trace(Elt{std::uint32_t(i)}));
}

TEST_CASE("missing files surface as spec errors") {
  CHECK(throws_code(Errc::bad_spec, [] { read_text_file("/nonexistent/path/table.json"); }));
}
