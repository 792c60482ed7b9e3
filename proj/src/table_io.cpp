#include "gfperm/table_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "gfperm/field_spec.hpp"

namespace gfperm {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(Errc::bad_spec, "table file is not valid JSON");
  if (!j.is_object()) fail(Errc::bad_spec, "table file must be a JSON object");
  return j;
}

void check_field(const FieldTower& t, const json& j) {
  if (!j.contains("field") || !j["field"].is_string())
    fail(Errc::bad_spec, "table file is missing the \"field\" string");
  const FieldTower other = tower_from_spec(j["field"].get<std::string>());
  if (!same_tower(t, other))
    fail(Errc::bad_spec, "table file was written for field " +
                             format_field_spec(other) + ", expected " + format_field_spec(t));
}

std::vector<std::uint64_t> read_table(const json& j, std::uint64_t size,
                                      std::uint64_t entry_limit) {
  if (!j.contains("table") || !j["table"].is_array())
    fail(Errc::bad_spec, "table file is missing the \"table\" array");
  const auto& arr = j["table"];
  if (arr.size() != size)
    fail(Errc::length_mismatch, "table has " + std::to_string(arr.size()) +
                                    " entries, expected " + std::to_string(size));
  std::vector<std::uint64_t> out(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number_unsigned())
      fail(Errc::bad_spec, "table entry " + std::to_string(i) + " is not a nonnegative integer");
    out[i] = arr[i].get<std::uint64_t>();
    if (out[i] >= entry_limit)
      fail(Errc::index_out_of_range,
           "table entry " + std::to_string(i) + " = " + std::to_string(out[i]) +
               " is out of range");
  }
  return out;
}

std::string origin_of(const json& j) {
  if (j.contains("origin") && j["origin"].is_string()) return j["origin"].get<std::string>();
  return "imported";
}

}  // namespace

std::string field_map_to_json(const FieldTower& t, const FieldMap& m) {
  json j;
  j["field"] = format_field_spec(t);
  j["kind"] = "field_map";
  j["origin"] = m.origin;
  json arr = json::array();
  for (const Elt e : m.table) arr.push_back(e.v);
  j["table"] = std::move(arr);
  return j.dump(2) + "\n";
}

std::string ground_fn_to_json(const FieldTower& t, const GroundFn& f) {
  json j;
  j["field"] = format_field_spec(t);
  j["kind"] = "ground_fn";
  j["origin"] = f.origin;
  json arr = json::array();
  for (const GroundElt e : f.table) arr.push_back(e.v);
  j["table"] = std::move(arr);
  return j.dump(2) + "\n";
}

FieldMap field_map_from_json(const FieldTower& t, const std::string& text) {
  const json j = parse_json(text);
  check_field(t, j);
  if (j.contains("kind") && j["kind"] != "field_map")
    fail(Errc::bad_spec, "expected a field_map table file");
  const auto raw = read_table(j, t.order(), t.order());
  std::vector<Elt> table(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) table[i] = Elt{std::uint32_t(raw[i])};
  return field_map_from_table(t, std::move(table), origin_of(j));
}

GroundFn ground_fn_from_json(const FieldTower& t, const std::string& text) {
  const json j = parse_json(text);
  check_field(t, j);
  const bool is_field_map = j.contains("kind") && j["kind"] == "field_map";
  if (j.contains("kind") && j["kind"] != "ground_fn" && !is_field_map)
    fail(Errc::bad_spec, "expected a ground_fn table file");
  if (is_field_map) {
    // a field map that lands inside the embedded subfield projects down
    const auto raw = read_table(j, t.order(), t.order());
    std::vector<GroundElt> table(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] >= t.q())
        fail(Errc::not_in_subfield, "table entry " + std::to_string(i) + " = " +
                                        std::to_string(raw[i]) +
                                        " lies outside the embedded subfield");
      table[i] = GroundElt{std::uint32_t(raw[i])};
    }
    return ground_fn_from_table(t, std::move(table), origin_of(j));
  }
  const auto raw = read_table(j, t.order(), t.q());
  std::vector<GroundElt> table(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) table[i] = GroundElt{std::uint32_t(raw[i])};
  return ground_fn_from_table(t, std::move(table), origin_of(j));
}

std::string embedded_field_spec(const std::string& text) {
  const json j = parse_json(text);
  if (!j.contains("field") || !j["field"].is_string())
    fail(Errc::bad_spec, "table file is missing the \"field\" string");
  return j["field"].get<std::string>();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::bad_spec, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::bad_spec, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) fail(Errc::bad_spec, "failed writing '" + path + "'");
}

}  // namespace gfperm
