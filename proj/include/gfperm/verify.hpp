#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gfperm/field_tower.hpp"
#include "gfperm/maps.hpp"
#include "gfperm/rng.hpp"
#include "gfperm/translators.hpp"

namespace gfperm {

enum class Suite { core, translators, families, analysis, all };

Suite suite_from_name(const std::string& name);  // throws bad_spec
const char* suite_name(Suite s);

struct CheckResult {
  std::string name;
  std::uint64_t cases = 0;
  bool passed = false;
  std::string detail;  // failure message when !passed
};

struct RunReport {
  std::string field;  // canonical spec
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  std::vector<std::string> counterexamples;
  double elapsed_ms = 0.0;

  bool pass() const { return counterexamples.empty(); }
};

// Runs the property checks of one suite (or all of them) on the given tower.
// Check failures are collected, never thrown; the report is deterministic for
// a fixed (tower, seed) apart from elapsed_ms.
RunReport run_verify(const FieldTower& t, Suite suite, std::uint64_t seed);

std::string report_to_json(const RunReport& r, bool include_timing = true);

// ---- seeded generators shared by suites, tests and benchmarks ----

GroundFn random_ground_fn(const FieldTower& t, Rng& rng);
FieldMap random_field_map(const FieldTower& t, Rng& rng);
ScalarFn random_scalar_fn(const FieldTower& t, Rng& rng);
ScalarFn random_scalar_permutation(const FieldTower& t, Rng& rng);
LinearMap random_bijective_linear_map(const FieldTower& t, Rng& rng);

// f with a certified translator, manufactured from a random table so the
// instance is otherwise unstructured.
struct CertifiedInstance {
  GroundFn f;
  Elt gamma;
  TranslatorCert cert;
};

CertifiedInstance random_certified_instance(const FieldTower& t, Rng& rng);
// same, with the translator value steered to b
CertifiedInstance instance_with_value(const FieldTower& t, Rng& rng, GroundElt b);

// every h : F_q -> F_q as a table, ordered by base-q digits; q^q of them
// (throws budget_exceeded when q^q would be unreasonably large)
std::vector<ScalarFn> all_scalar_fns(const FieldTower& t);

}  // namespace gfperm
