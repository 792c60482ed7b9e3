#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gfperm/maps.hpp"

namespace gfperm {

// Witness that alpha is a translator of some f: f(x + u*alpha) - f(x) =
// u * value for every x in F_{q^n} and every u in F_q. The pair is only
// meaningful next to the f it was issued for; check_cert re-verifies it.
struct TranslatorCert {
  Elt alpha;
  GroundElt value;
};

// Full (x, u) scan of the defining identity.
bool check_cert(const FieldTower& t, const GroundFn& f, const TranslatorCert& cert);

// Translator value of alpha for f, or nullopt. The fast path only tests u on
// an F_p-basis of F_q: the set of u satisfying the identity for all x is
// closed under addition and F_p-scaling, so a basis decides everything.
std::optional<GroundElt> translator_value(const FieldTower& t, const GroundFn& f, Elt alpha);
// Same answer via all u in F_q; kept as the oracle for the fast path.
std::optional<GroundElt> translator_value_full(const FieldTower& t, const GroundFn& f, Elt alpha);

// The translator set of f together with 0. Always an F_q-subspace, and the
// value map is F_q-linear on it; both facts are re-verified on construction.
struct TranslatorSpace {
  std::vector<Elt> basis;               // canonical greedy basis, ascending
  std::vector<GroundElt> basis_values;
  std::vector<std::int64_t> value_of;   // index -> value index, -1 if not a member
  std::uint32_t q = 0;

  bool contains(Elt a) const { return value_of[a.v] >= 0; }
  std::optional<GroundElt> value(Elt a) const {
    if (value_of[a.v] < 0) return std::nullopt;
    return GroundElt{std::uint32_t(value_of[a.v])};
  }
  std::size_t dimension() const { return basis.size(); }
  std::uint64_t size() const {
    std::uint64_t s = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) s *= q;
    return s;
  }
};

TranslatorSpace lambda_space(const FieldTower& t, const GroundFn& f);         // OpenMP scan
TranslatorSpace lambda_space_serial(const FieldTower& t, const GroundFn& f);  // reference

// f(x) = Tr(H(x^q - gamma^(q-1) x) + beta x); gamma is a Tr(beta*gamma)-
// translator. The certificate is re-verified exhaustively before returning.
struct ConstructedFn {
  GroundFn f;
  TranslatorCert cert;
};
ConstructedFn lai_construct(const FieldTower& t, const FieldMap& h_map, Elt gamma, Elt beta);

// f(x) = sum_{u in F_q} g(x + u*alpha); every c*alpha, c != 0, is a
// 0-translator.
struct DerivedFn {
  GroundFn f;
  std::vector<TranslatorCert> certs;  // one per c in F_q*
};
DerivedFn deriv_construct(const FieldTower& t, const GroundFn& g, Elt alpha);

// f(x) = Tr(x^(q+1) + beta x) on a tower with n = 4k referring to odd p;
// every gamma in the coset lambda^((q^n-1)/(2(q^2-1))) * F_{q^2}^* is a
// Tr(beta*gamma)-translator. The proof identities gamma^(q^2) = -gamma and
// Tr(gamma^(q+1)) = 0 are asserted for every coset member.
struct MonomialFn {
  GroundFn f;
  std::vector<Elt> gamma_coset;        // ascending
  std::vector<TranslatorCert> certs;   // aligned with gamma_coset
};
MonomialFn monom_construct(const FieldTower& t, Elt beta);

// f(x) = Tr(H(L(x)) + beta x) for non-bijective L; every nonzero kernel
// element of L is a Tr(beta*kappa)-translator, so ker L lies in the
// translator space. Returns the per-element certificates.
struct KernelTranslatorReport {
  GroundFn f;
  std::vector<TranslatorCert> kernel_certs;  // nonzero kernel elements, ascending
};
KernelTranslatorReport verify_kernel_in_lambda(const FieldTower& t, const LinearMap& l,
                                               const FieldMap& h_map, Elt beta);

}  // namespace gfperm
