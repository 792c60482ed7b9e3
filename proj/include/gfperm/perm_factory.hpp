#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gfperm/translators.hpp"

namespace gfperm {

// Bijection of F_{q^n}, validated on construction.
struct PermTable {
  std::vector<Elt> table;
  std::string provenance;
  std::optional<std::vector<Elt>> inverse;  // optional cache

  Elt operator()(Elt x) const { return table[x.v]; }
};
PermTable perm_from_table(std::vector<Elt> table, std::string provenance);

// Map whose every image point has exactly fiber_size preimages.
struct FiberMap {
  std::vector<Elt> table;
  std::uint32_t fiber_size = 0;
  std::string provenance;

  Elt operator()(Elt x) const { return table[x.v]; }
};

using PermOrFiber = std::variant<PermTable, FiberMap>;

// F(x) = x + gamma * f(x) for a b-translator gamma of f. A permutation
// exactly when b != -1; exactly q-to-1 when b = -1. The certificate and the
// resulting dichotomy are both verified.
PermOrFiber shift_perm(const FieldTower& t, const GroundFn& f, Elt gamma,
                       const TranslatorCert& cert);

// F^{-1}(x) = x - (gamma / (b+1)) * f(x); composition with F is asserted to
// be the identity. Requires b != -1.
PermTable shift_perm_inverse(const FieldTower& t, const GroundFn& f, Elt gamma,
                             const TranslatorCert& cert);

// B_k = k*1 when b = 0, otherwise ((b+1)^k - 1)/b.
struct BkCoefficient {
  std::uint64_t k = 0;
  GroundElt b;
  GroundElt value;
};
BkCoefficient bk(const FieldTower& t, std::uint64_t k, GroundElt b);

// k-th iterate in closed form: F_k(x) = x + B_k * gamma * f(x).
PermOrFiber iterate_closed_form(const FieldTower& t, const GroundFn& f, Elt gamma,
                                const TranslatorCert& cert, std::uint64_t k);

// F(x) = L(x) + L(gamma) * f(x) for bijective q-polynomial L; equals the
// composition L o (x + gamma f(x)), which is asserted.
PermOrFiber linear_compose_perm(const FieldTower& t, const LinearMap& l, const GroundFn& f,
                                Elt gamma, const TranslatorCert& cert);

// F(x) = x + gamma*f(x) + delta*g(x), where gamma is a b1-translator of f and
// a b2-translator of g, delta a d1-translator of f and a d2-translator of g.
// Permutation when b1 != -1 and d2 - d1*b2/(b1+1) != -1; both hypotheses are
// required and the result is verified bijective.
PermTable two_translator_perm(const FieldTower& t, const GroundFn& f, const GroundFn& g,
                              Elt gamma, Elt delta, const TranslatorCert& b1_cert,
                              const TranslatorCert& b2_cert, const TranslatorCert& d1_cert,
                              const TranslatorCert& d2_cert);

struct Criterion {
  std::string name;
  bool holds = false;
  bool sufficient_only = false;  // criterion implies permutation but not conversely
  std::string detail;
};

struct FamilyResult {
  FieldMap map;
  Verdict verdict = Verdict::not_permutation;
  Criterion criterion;
  std::optional<PermTable> perm;     // when verdict == permutation
  std::optional<FiberMap> fibers;    // when verdict == q_to_1
};

// F(x) = x + gamma * h(f(x)); permutation iff u -> b*h(u) + u permutes F_q.
FamilyResult general_h_perm(const FieldTower& t, const GroundFn& f, Elt gamma,
                            const TranslatorCert& cert, const ScalarFn& h);

// G(x) = L(x) + L(gamma) * h(f(x)) for bijective L; same criterion, and the
// table is asserted equal to L composed with the ungraded shift.
FamilyResult linear_general_h_perm(const FieldTower& t, const LinearMap& l, const GroundFn& f,
                                   Elt gamma, const TranslatorCert& cert, const ScalarFn& h);

// G(x) = L(x) + gamma * h(Tr(x)) for bijective L with coefficients in the
// embedded F_q; permutation iff u -> L(1)*u + Tr(gamma)*h(u) permutes F_q.
FamilyResult marcos_pp(const FieldTower& t, const LinearMap& l, const ScalarFn& h, Elt gamma);

// G(x) = L(x) + gamma * h(f(x)) for L with kernel alpha*F_q and bijective h;
// permutation iff b != 0 and gamma is outside the image of L.
FamilyResult kernel_perm(const FieldTower& t, const LinearMap& l, const GroundFn& f,
                         const TranslatorCert& alpha_cert, const ScalarFn& h, Elt gamma);

// Closed-form families, keyed by the CLI names.
enum class Family {
  lai_shift,         // x + gamma Tr(H(x^q - gamma^(q-1) x) + beta x)
  qplus_shift_a,     // x^q + x + (gamma^q + gamma) f(x), n odd, odd q
  qplus_shift_b,     // alternating-inverse variant of the same, n odd, odd q
  double_coord,      // x + Tr(H1(M(x)) + beta1 x) + alpha Tr(H2(M(x)) + beta2 x)
  monom_t,           // x + gamma Tr(gamma beta)^(q-2) (f^t - f), n = 4k
  artin_schreier_t,  // x^q - x + gamma (Tr(H(x^q - x) + beta x))^t
};
Family family_from_name(const std::string& name);
const char* family_name(Family f);

struct FamilyParams {
  std::optional<FieldMap> h_map;   // H; zero map when absent
  std::optional<FieldMap> h2_map;  // second H for double_coord
  std::optional<Elt> gamma;
  std::optional<Elt> beta;
  std::optional<Elt> beta2;
  std::optional<Elt> alpha;
  std::uint64_t t = 1;
};

FamilyResult build_named_family(const FieldTower& t, Family family, const FamilyParams& params);

// F(x) = x + gamma f(x) as a complete mapping candidate: for odd q, both F
// and F(x) + x are permutations exactly when b is outside {-1, -2}.
struct CompleteMappingResult {
  FieldMap map;
  bool complete = false;
  Criterion criterion;
  std::optional<PermTable> perm;  // F itself, when it is a permutation
};
CompleteMappingResult complete_mapping_shift(const FieldTower& t, const GroundFn& f, Elt gamma,
                                             const TranslatorCert& cert);

}  // namespace gfperm
