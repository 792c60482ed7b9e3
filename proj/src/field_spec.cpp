#include "gfperm/field_spec.hpp"

#include <charconv>
#include <sstream>

namespace gfperm {

namespace {

std::uint32_t parse_u32(const std::string& s, const std::string& key) {
  std::uint32_t out = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last)
    fail(Errc::bad_spec, "field spec: '" + s + "' is not a valid value for " + key);
  return out;
}

}  // namespace

FieldSpec parse_field_spec(const std::string& text) {
  FieldSpec spec;
  bool have_p = false, have_m = false, have_n = false;
  std::string csv_key;  // "g" or "h" while collecting continuation tokens
  std::vector<std::uint32_t> csv;

  auto flush_csv = [&] {
    if (csv_key.empty()) return;
    if (csv.empty()) fail(Errc::bad_spec, "field spec: empty list for " + csv_key);
    if (csv_key == "g") {
      if (spec.g) fail(Errc::bad_spec, "field spec: duplicate key g");
      spec.g = csv;
    } else {
      if (spec.h) fail(Errc::bad_spec, "field spec: duplicate key h");
      std::vector<GroundElt> h(csv.size());
      for (std::size_t i = 0; i < csv.size(); ++i) h[i] = GroundElt{csv[i]};
      spec.h = std::move(h);
    }
    csv_key.clear();
    csv.clear();
  };

  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) {
      if (csv_key.empty())
        fail(Errc::bad_spec, "field spec: unexpected token '" + token + "'");
      csv.push_back(parse_u32(token, csv_key));
      continue;
    }
    flush_csv();
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "p") {
      if (have_p) fail(Errc::bad_spec, "field spec: duplicate key p");
      spec.p = parse_u32(value, key);
      have_p = true;
    } else if (key == "m") {
      if (have_m) fail(Errc::bad_spec, "field spec: duplicate key m");
      spec.m = parse_u32(value, key);
      have_m = true;
    } else if (key == "n") {
      if (have_n) fail(Errc::bad_spec, "field spec: duplicate key n");
      spec.n = parse_u32(value, key);
      have_n = true;
    } else if (key == "g" || key == "h") {
      csv_key = key;
      csv.push_back(parse_u32(value, key));
    } else {
      fail(Errc::bad_spec, "field spec: unknown key '" + key + "'");
    }
  }
  flush_csv();
  if (!have_p || !have_m || !have_n)
    fail(Errc::bad_spec, "field spec: p, m and n are all required");
  return spec;
}

std::string format_field_spec(const FieldTower& t) {
  std::string out = "p=" + std::to_string(t.p()) + ",m=" + std::to_string(t.m()) +
                    ",n=" + std::to_string(t.n()) + ",g=";
  const auto& g = t.ground_modulus();
  for (std::size_t i = 0; i < g.size(); ++i)
    out += (i ? "," : "") + std::to_string(g[i]);
  out += ",h=";
  const auto& h = t.ext_modulus();
  for (std::size_t i = 0; i < h.size(); ++i)
    out += (i ? "," : "") + std::to_string(h[i].v);
  return out;
}

FieldTower tower_from_spec(const FieldSpec& spec, std::uint64_t budget) {
  return FieldTower::make(spec.p, spec.m, spec.n, spec.g, spec.h, budget);
}

FieldTower tower_from_spec(const std::string& text, std::uint64_t budget) {
  return tower_from_spec(parse_field_spec(text), budget);
}

}  // namespace gfperm
