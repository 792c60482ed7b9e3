#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gfperm/error.hpp"

namespace gfperm {

// An element of the top field F_{q^n}, stored as its canonical index:
//   index = sum_i c_i * q^i
// where c_i is the canonical index of the i-th coordinate over the basis
// 1, x, ..., x^{n-1} of F_q[x]/(h).
struct Elt {
  std::uint32_t v = 0;
  friend constexpr bool operator==(Elt, Elt) = default;
  friend constexpr auto operator<=>(Elt, Elt) = default;
};

// An element of the ground field F_q = F_p[y]/(g), stored as its canonical
// index: sum_j d_j * p^j over the residue coordinates d_j.
struct GroundElt {
  std::uint32_t v = 0;
  friend constexpr bool operator==(GroundElt, GroundElt) = default;
  friend constexpr auto operator<=>(GroundElt, GroundElt) = default;
};

// The tower F_p < F_q < F_{q^n}, q = p^m. Immutable once built; every method
// is const and safe to share across threads.
//
// Moduli are the lexicographically smallest monic irreducibles of the right
// degree (coefficient lists compared low-degree-first as base-p / base-q
// integers) unless explicit ones are supplied. Multiplication, inversion and
// powers run off discrete-log tables built on the smallest primitive element,
// so they are O(1) per call; addition is digit arithmetic (XOR when p = 2).
class FieldTower {
 public:
  static constexpr std::uint64_t kDefaultBudget = 1ull << 20;
  // hard ceiling regardless of budget: index arithmetic and table memory
  static constexpr std::uint64_t kMaxOrder = 1ull << 26;

  static FieldTower make(std::uint32_t p, std::uint32_t m, std::uint32_t n,
                         std::uint64_t budget = kDefaultBudget);
  // g: monic modulus for F_q over F_p, residues low-degree-first, length m+1.
  // h: monic modulus for F_{q^n} over F_q, ground indices, length n+1.
  // Either may be std::nullopt to use the deterministic choice. Supplied
  // moduli are validated for irreducibility.
  static FieldTower make(std::uint32_t p, std::uint32_t m, std::uint32_t n,
                         std::optional<std::vector<std::uint32_t>> g,
                         std::optional<std::vector<GroundElt>> h,
                         std::uint64_t budget = kDefaultBudget);

  std::uint32_t p() const { return p_; }
  std::uint32_t m() const { return m_; }
  std::uint32_t n() const { return n_; }
  std::uint32_t q() const { return q_; }
  std::uint64_t order() const { return order_; }
  const std::vector<std::uint32_t>& ground_modulus() const { return g_; }
  const std::vector<GroundElt>& ext_modulus() const { return h_; }

  // ---- canonical encodings ----
  Elt element_of(std::uint64_t index) const;  // throws index_out_of_range
  std::uint64_t index_of(Elt a) const { return a.v; }
  GroundElt ground_of(std::uint64_t index) const;
  std::vector<GroundElt> coords(Elt a) const;                  // length n
  Elt from_coords(std::span<const GroundElt> c) const;         // length n
  std::vector<std::uint32_t> ground_coords(GroundElt d) const; // length m
  GroundElt ground_from_coords(std::span<const std::uint32_t> c) const;
  // k * 1 in F_q, i.e. the residue k mod p as a constant
  GroundElt ground_of_int(std::uint64_t k) const { return GroundElt{std::uint32_t(k % p_)}; }

  // ---- ground field arithmetic ----
  GroundElt gadd(GroundElt a, GroundElt b) const;
  GroundElt gsub(GroundElt a, GroundElt b) const { return gadd(a, gneg(b)); }
  GroundElt gneg(GroundElt a) const;
  GroundElt gmul(GroundElt a, GroundElt b) const;
  GroundElt ginv(GroundElt a) const;  // throws division_by_zero
  GroundElt gdiv(GroundElt a, GroundElt b) const;
  GroundElt gpow(GroundElt a, std::int64_t e) const;  // 0^0 = 1
  GroundElt gzero() const { return {}; }
  GroundElt gone() const { return GroundElt{1}; }
  GroundElt gminus_one() const { return GroundElt{p_ - 1}; }
  std::uint64_t ground_mult_order(GroundElt a) const;

  // ---- top field arithmetic ----
  Elt add(Elt a, Elt b) const;
  Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
  Elt neg(Elt a) const;
  Elt mul(Elt a, Elt b) const;
  Elt inv(Elt a) const;  // throws division_by_zero
  Elt div(Elt a, Elt b) const;
  Elt pow(Elt a, std::int64_t e) const;  // exponents reduced mod q^n - 1; 0^0 = 1
  Elt zero() const { return {}; }
  Elt one() const { return Elt{1}; }

  Elt frobenius(Elt a, std::int64_t i) const;  // a^(q^i), i taken mod n
  GroundElt trace(Elt a) const { return GroundElt{trace_[a.v]}; }

  // smallest canonical index whose multiplicative order is q^n - 1
  Elt primitive_element() const { return Elt{lambda_}; }
  std::uint64_t mult_order(Elt a) const;

  // F_q sits inside F_{q^n} as the constant polynomials, so embedding is the
  // identity on indices and membership is just index < q.
  Elt embed(GroundElt c) const { return Elt{c.v}; }
  GroundElt project(Elt a) const;  // throws not_in_subfield
  bool in_ground(Elt a) const { return a.v < q_; }
  Elt smul(GroundElt c, Elt a) const { return mul(Elt{c.v}, a); }

 private:
  FieldTower() = default;
  void build(std::optional<std::vector<std::uint32_t>> g,
             std::optional<std::vector<GroundElt>> h);

  std::uint32_t p_ = 0, m_ = 0, n_ = 0, q_ = 0;
  std::uint64_t order_ = 0;
  std::vector<std::uint32_t> g_;
  std::vector<GroundElt> h_;

  std::vector<std::uint32_t> fq_exp_, fq_log_;  // exp doubled to skip a mod
  std::vector<std::uint32_t> fq_add_;           // q*q, only for small q
  std::vector<std::uint32_t> exp_, log_;
  std::vector<std::uint32_t> trace_;            // element index -> ground index
  std::vector<std::uint64_t> q_pow_mod_;        // q^i mod (order-1)
  std::vector<std::uint64_t> fq_factors_, ext_factors_;  // prime factors of q-1, q^n-1
  std::uint32_t fq_gen_ = 0, lambda_ = 0;
};

inline bool same_tower(const FieldTower& a, const FieldTower& b) {
  return a.p() == b.p() && a.m() == b.m() && a.n() == b.n() &&
         a.ground_modulus() == b.ground_modulus() && a.ext_modulus() == b.ext_modulus();
}

}  // namespace gfperm
