#pragma once

#include <string>

#include "gfperm/field_tower.hpp"
#include "gfperm/maps.hpp"

namespace gfperm {

// JSON table files look like
//   {"field": "p=3,m=1,n=2,g=0,1,h=1,0,1", "kind": "field_map", "table": [ ... ]}
// with entries in the canonical index encoding. "kind" and "origin" are
// optional on input; the embedded field must describe the same tower the
// caller is working in.

std::string field_map_to_json(const FieldTower& t, const FieldMap& m);
std::string ground_fn_to_json(const FieldTower& t, const GroundFn& f);

FieldMap field_map_from_json(const FieldTower& t, const std::string& text);
GroundFn ground_fn_from_json(const FieldTower& t, const std::string& text);

// the "field" value, so a caller can build the tower before loading
std::string embedded_field_spec(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace gfperm
