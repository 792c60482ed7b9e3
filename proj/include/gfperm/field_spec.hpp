#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gfperm/field_tower.hpp"

namespace gfperm {

// Textual tower description: "p=<int>,m=<int>,n=<int>[,g=<csv>,h=<csv>]".
// The csv values after g= / h= run until the next key=value token, so
// "p=3,m=2,n=2,g=2,1,1" parses g as the residue list {2,1,1}.
struct FieldSpec {
  std::uint32_t p = 0, m = 0, n = 0;
  std::optional<std::vector<std::uint32_t>> g;  // length m+1, residues mod p
  std::optional<std::vector<GroundElt>> h;      // length n+1, ground indices
};

FieldSpec parse_field_spec(const std::string& text);  // throws bad_spec

// Canonical form always spells out both moduli, so it round-trips to the
// identical tower even across default-choice changes.
std::string format_field_spec(const FieldTower& t);

FieldTower tower_from_spec(const FieldSpec& spec,
                           std::uint64_t budget = FieldTower::kDefaultBudget);
FieldTower tower_from_spec(const std::string& text,
                           std::uint64_t budget = FieldTower::kDefaultBudget);

}  // namespace gfperm
