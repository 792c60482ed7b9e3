#include "gfperm/field_tower.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace gfperm {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::bad_spec: return "BadSpec";
    case Errc::not_prime: return "NotPrime";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::not_in_subfield: return "NotInSubfield";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::exponent_out_of_range: return "ExponentOutOfRange";
    case Errc::zero_alpha: return "ZeroAlpha";
    case Errc::zero_gamma: return "ZeroGamma";
    case Errc::bad_degree: return "BadDegree";
    case Errc::even_characteristic: return "EvenCharacteristic";
    case Errc::bijective_l: return "BijectiveL";
    case Errc::non_bijective_l: return "NonBijectiveL";
    case Errc::cert_mismatch: return "CertMismatch";
    case Errc::b_is_minus_one: return "BIsMinusOne";
    case Errc::hypothesis_failed: return "HypothesisFailed";
    case Errc::family_precondition_failed: return "FamilyPreconditionFailed";
    case Errc::coefficients_not_in_subfield: return "CoefficientsNotInSubfield";
    case Errc::kernel_not_line: return "KernelNotLine";
    case Errc::h_not_bijective: return "HNotBijective";
    case Errc::even_q: return "EvenQ";
    case Errc::g_violates_hypotheses: return "GViolatesHypotheses";
    case Errc::no_irreducible: return "NoIrreducible";
    case Errc::not_linear: return "NotLinear";
    case Errc::cert_failed: return "CertFailed";
    case Errc::invariant_violation: return "InvariantViolation";
  }
  return "Error";
}

namespace {

bool is_prime_u32(std::uint32_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t x) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= x; ++d) {
    if (x % d == 0) {
      out.push_back(d);
      while (x % d == 0) x /= d;
    }
  }
  if (x > 1) out.push_back(x);
  return out;
}

// Construction-time arithmetic on element indices of one field layer. The
// std::function indirection only lives while tables are being built.
struct CField {
  std::uint64_t size = 0;
  std::function<std::uint32_t(std::uint32_t, std::uint32_t)> add, sub, mul;
};

std::uint32_t cf_pow(const CField& k, std::uint32_t a, std::uint64_t e) {
  std::uint32_t r = 1;
  while (e) {
    if (e & 1) r = k.mul(r, a);
    a = k.mul(a, a);
    e >>= 1;
  }
  return r;
}

CField prime_field(std::uint32_t p) {
  CField k;
  k.size = p;
  k.add = [p](std::uint32_t a, std::uint32_t b) { std::uint32_t s = a + b; return s >= p ? s - p : s; };
  k.sub = [p](std::uint32_t a, std::uint32_t b) { return a >= b ? a - b : a + p - b; };
  k.mul = [p](std::uint32_t a, std::uint32_t b) { return std::uint32_t(std::uint64_t(a) * b % p); };
  return k;
}

std::vector<std::uint32_t> digits_of(std::uint64_t idx, std::uint64_t base, std::uint32_t len) {
  std::vector<std::uint32_t> d(len);
  for (std::uint32_t i = 0; i < len; ++i) {
    d[i] = std::uint32_t(idx % base);
    idx /= base;
  }
  return d;
}

std::uint64_t index_of_digits(std::span<const std::uint32_t> d, std::uint64_t base) {
  std::uint64_t idx = 0;
  for (std::size_t i = d.size(); i-- > 0;) idx = idx * base + d[i];
  return idx;
}

// Arithmetic for base^deg elements as polynomials modulo `mod` (monic, low
// degree first, length deg+1) over the base layer.
CField extension_field(const CField& base, std::vector<std::uint32_t> mod) {
  const std::uint32_t deg = std::uint32_t(mod.size() - 1);
  const std::uint64_t bs = base.size;
  CField k;
  std::uint64_t size = 1;
  for (std::uint32_t i = 0; i < deg; ++i) size *= bs;
  k.size = size;
  k.add = [base, bs, deg](std::uint32_t a, std::uint32_t b) {
    auto da = digits_of(a, bs, deg), db = digits_of(b, bs, deg);
    for (std::uint32_t i = 0; i < deg; ++i) da[i] = base.add(da[i], db[i]);
    return std::uint32_t(index_of_digits(da, bs));
  };
  k.sub = [base, bs, deg](std::uint32_t a, std::uint32_t b) {
    auto da = digits_of(a, bs, deg), db = digits_of(b, bs, deg);
    for (std::uint32_t i = 0; i < deg; ++i) da[i] = base.sub(da[i], db[i]);
    return std::uint32_t(index_of_digits(da, bs));
  };
  k.mul = [base, bs, deg, mod](std::uint32_t a, std::uint32_t b) {
    auto da = digits_of(a, bs, deg), db = digits_of(b, bs, deg);
    std::vector<std::uint32_t> prod(2 * deg - 1, 0);
    for (std::uint32_t i = 0; i < deg; ++i) {
      if (da[i] == 0) continue;
      for (std::uint32_t j = 0; j < deg; ++j)
        prod[i + j] = base.add(prod[i + j], base.mul(da[i], db[j]));
    }
    for (std::size_t i = prod.size(); i-- > deg;) {
      const std::uint32_t c = prod[i];
      if (c == 0) continue;
      prod[i] = 0;
      for (std::uint32_t j = 0; j < deg; ++j)
        prod[i - deg + j] = base.sub(prod[i - deg + j], base.mul(c, mod[j]));
    }
    prod.resize(deg);
    return std::uint32_t(index_of_digits(prod, bs));
  };
  return k;
}

// ---- polynomials over a CField: index vectors, low degree first ----

std::uint32_t poly_eval(const CField& k, std::span<const std::uint32_t> poly, std::uint32_t x) {
  std::uint32_t r = 0;
  for (std::size_t i = poly.size(); i-- > 0;) r = k.add(k.mul(r, x), poly[i]);
  return r;
}

// remainder of num by monic den
std::vector<std::uint32_t> poly_rem(const CField& k, std::vector<std::uint32_t> num,
                                    std::span<const std::uint32_t> den) {
  const std::size_t dd = den.size() - 1;
  while (num.size() > dd) {
    const std::uint32_t c = num.back();
    num.pop_back();
    if (c == 0) continue;
    for (std::size_t j = 0; j < dd; ++j) {
      const std::size_t pos = num.size() - dd + j;
      num[pos] = k.sub(num[pos], k.mul(c, den[j]));
    }
  }
  return num;
}

bool poly_is_zero(std::span<const std::uint32_t> p) {
  return std::all_of(p.begin(), p.end(), [](std::uint32_t c) { return c == 0; });
}

// Irreducibility by exhaustive root absence plus trial division by all monic
// irreducibles of lower degree. cache[d] holds the monic irreducibles of
// degree d, filled on demand.
bool is_irreducible(const CField& k, std::span<const std::uint32_t> poly,
                    std::vector<std::vector<std::vector<std::uint32_t>>>& cache);

void fill_irreducibles(const CField& k, std::uint32_t deg,
                       std::vector<std::vector<std::vector<std::uint32_t>>>& cache) {
  if (cache.size() > deg && !cache[deg].empty()) return;
  if (cache.size() <= deg) cache.resize(deg + 1);
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < deg; ++i) count *= k.size;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    auto poly = digits_of(idx, k.size, deg);
    poly.push_back(1);
    if (is_irreducible(k, poly, cache)) cache[deg].push_back(std::move(poly));
  }
}

bool is_irreducible(const CField& k, std::span<const std::uint32_t> poly,
                    std::vector<std::vector<std::vector<std::uint32_t>>>& cache) {
  const std::uint32_t deg = std::uint32_t(poly.size() - 1);
  if (deg == 1) return true;
  for (std::uint64_t x = 0; x < k.size; ++x)
    if (poly_eval(k, poly, std::uint32_t(x)) == 0) return false;
  for (std::uint32_t d = 2; d <= deg / 2; ++d) {
    fill_irreducibles(k, d, cache);
    for (const auto& div : cache[d]) {
      auto rem = poly_rem(k, {poly.begin(), poly.end()}, div);
      if (poly_is_zero(rem)) return false;
    }
  }
  return true;
}

// smallest monic irreducible of the given degree, coefficient lists ordered
// low-degree-first as base-(field size) integers
std::vector<std::uint32_t> smallest_monic_irreducible(const CField& k, std::uint32_t deg) {
  std::vector<std::vector<std::vector<std::uint32_t>>> cache;
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < deg; ++i) count *= k.size;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    auto poly = digits_of(idx, k.size, deg);
    poly.push_back(1);
    if (is_irreducible(k, poly, cache)) return poly;
  }
  fail(Errc::no_irreducible, "no monic irreducible of degree " + std::to_string(deg));
}

// Finds the smallest-index generator of the multiplicative group and fills a
// doubled exp table plus the log table. Also double-checks that exp really
// enumerates every nonzero element, which would only fail if the modulus
// slipped through the irreducibility check.
void build_exp_log(const CField& k, const std::vector<std::uint64_t>& factors,
                   std::vector<std::uint32_t>& exp_out, std::vector<std::uint32_t>& log_out,
                   std::uint32_t& gen_out) {
  const std::uint64_t go = k.size - 1;  // group order
  std::uint32_t gen = 0;
  for (std::uint64_t c = 1; c < k.size; ++c) {
    bool ok = true;
    for (std::uint64_t f : factors) {
      if (cf_pow(k, std::uint32_t(c), go / f) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      gen = std::uint32_t(c);
      break;
    }
  }
  if (gen == 0) fail(Errc::invariant_violation, "no generator found; modulus not irreducible?");
  exp_out.assign(2 * go, 1);
  log_out.assign(k.size, 0);
  std::vector<bool> seen(k.size, false);
  std::uint32_t cur = 1;
  for (std::uint64_t i = 0; i < go; ++i) {
    exp_out[i] = cur;
    exp_out[i + go] = cur;
    log_out[cur] = std::uint32_t(i);
    if (cur == 0 || seen[cur]) fail(Errc::invariant_violation, "exp table is not a bijection");
    seen[cur] = true;
    cur = k.mul(cur, gen);
  }
  if (cur != 1) fail(Errc::invariant_violation, "generator order mismatch");
  gen_out = gen;
}

}  // namespace

FieldTower FieldTower::make(std::uint32_t p, std::uint32_t m, std::uint32_t n,
                            std::uint64_t budget) {
  return make(p, m, n, std::nullopt, std::nullopt, budget);
}

FieldTower FieldTower::make(std::uint32_t p, std::uint32_t m, std::uint32_t n,
                            std::optional<std::vector<std::uint32_t>> g,
                            std::optional<std::vector<GroundElt>> h, std::uint64_t budget) {
  if (!is_prime_u32(p)) fail(Errc::not_prime, "p = " + std::to_string(p) + " is not prime");
  if (m == 0 || n == 0) fail(Errc::bad_spec, "m and n must be positive");

  std::uint64_t order = 1;
  const std::uint64_t cap = std::min(budget, kMaxOrder);
  for (std::uint64_t i = 0; i < std::uint64_t(m) * n; ++i) {
    order *= p;
    if (order > cap)
      fail(Errc::budget_exceeded, "p^(m*n) exceeds the enumeration budget of " +
                                      std::to_string(cap) + " elements");
  }

  FieldTower t;
  t.p_ = p;
  t.m_ = m;
  t.n_ = n;
  t.order_ = order;
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < m; ++i) q *= p;
  t.q_ = std::uint32_t(q);
  t.build(std::move(g), std::move(h));
  return t;
}

void FieldTower::build(std::optional<std::vector<std::uint32_t>> g,
                       std::optional<std::vector<GroundElt>> h) {
  const CField fp = prime_field(p_);

  // ground modulus
  if (g) {
    if (g->size() != m_ + 1) fail(Errc::bad_spec, "g must have m+1 coefficients");
    for (auto c : *g)
      if (c >= p_) fail(Errc::bad_spec, "g coefficient out of range");
    if (g->back() != 1) fail(Errc::bad_spec, "g must be monic");
    std::vector<std::vector<std::vector<std::uint32_t>>> cache;
    if (!is_irreducible(fp, *g, cache)) fail(Errc::bad_spec, "g is not irreducible over F_p");
    g_ = std::move(*g);
  } else {
    g_ = smallest_monic_irreducible(fp, m_);
  }

  // ground field tables
  fq_factors_ = distinct_prime_factors(std::uint64_t(q_) - 1);
  {
    const CField fq_boot = (m_ == 1) ? fp : extension_field(fp, g_);
    build_exp_log(fq_boot, fq_factors_, fq_exp_, fq_log_, fq_gen_);
  }
  if (q_ <= 512 && m_ > 1 && p_ != 2) {
    fq_add_.resize(std::size_t(q_) * q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
      const auto da = digits_of(a, p_, m_);
      for (std::uint32_t b = 0; b < q_; ++b) {
        auto db = digits_of(b, p_, m_);
        for (std::uint32_t i = 0; i < m_; ++i) db[i] = fp.add(da[i], db[i]);
        fq_add_[std::size_t(a) * q_ + b] = std::uint32_t(index_of_digits(db, p_));
      }
    }
  }

  // ground field as a fast CField for the extension layer
  CField fq;
  fq.size = q_;
  fq.add = [this](std::uint32_t a, std::uint32_t b) { return gadd(GroundElt{a}, GroundElt{b}).v; };
  fq.sub = [this](std::uint32_t a, std::uint32_t b) { return gsub(GroundElt{a}, GroundElt{b}).v; };
  fq.mul = [this](std::uint32_t a, std::uint32_t b) { return gmul(GroundElt{a}, GroundElt{b}).v; };

  // extension modulus
  if (h) {
    if (h->size() != n_ + 1) fail(Errc::bad_spec, "h must have n+1 coefficients");
    std::vector<std::uint32_t> raw(h->size());
    for (std::size_t i = 0; i < h->size(); ++i) {
      if ((*h)[i].v >= q_) fail(Errc::bad_spec, "h coefficient out of range");
      raw[i] = (*h)[i].v;
    }
    if (raw.back() != 1) fail(Errc::bad_spec, "h must be monic");
    std::vector<std::vector<std::vector<std::uint32_t>>> cache;
    if (!is_irreducible(fq, raw, cache)) fail(Errc::bad_spec, "h is not irreducible over F_q");
    h_ = std::move(*h);
  } else {
    auto raw = smallest_monic_irreducible(fq, n_);
    h_.resize(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) h_[i] = GroundElt{raw[i]};
  }

  // top field tables
  ext_factors_ = distinct_prime_factors(order_ - 1);
  {
    std::vector<std::uint32_t> raw(h_.size());
    for (std::size_t i = 0; i < h_.size(); ++i) raw[i] = h_[i].v;
    const CField top = (n_ == 1) ? fq : extension_field(fq, raw);
    build_exp_log(top, ext_factors_, exp_, log_, lambda_);
  }

  // frobenius exponents q^i mod (q^n - 1)
  const std::uint64_t go = order_ - 1;
  q_pow_mod_.resize(n_);
  std::uint64_t qp = 1 % std::max<std::uint64_t>(go, 1);
  for (std::uint32_t i = 0; i < n_; ++i) {
    q_pow_mod_[i] = qp;
    qp = qp * q_ % std::max<std::uint64_t>(go, 1);
  }

  // trace table; every value must land in the embedded ground field
  trace_.resize(order_);
  for (std::uint64_t idx = 0; idx < order_; ++idx) {
    Elt acc{std::uint32_t(idx)};
    Elt t{std::uint32_t(idx)};
    for (std::uint32_t i = 1; i < n_; ++i) {
      t = frobenius(t, 1);
      acc = add(acc, t);
    }
    if (acc.v >= q_) fail(Errc::invariant_violation, "trace value outside the ground field");
    trace_[idx] = acc.v;
  }
}

// ---- encodings ----

Elt FieldTower::element_of(std::uint64_t index) const {
  if (index >= order_) fail(Errc::index_out_of_range, "element index " + std::to_string(index));
  return Elt{std::uint32_t(index)};
}

GroundElt FieldTower::ground_of(std::uint64_t index) const {
  if (index >= q_) fail(Errc::index_out_of_range, "ground index " + std::to_string(index));
  return GroundElt{std::uint32_t(index)};
}

std::vector<GroundElt> FieldTower::coords(Elt a) const {
  std::vector<GroundElt> c(n_);
  std::uint32_t v = a.v;
  for (std::uint32_t i = 0; i < n_; ++i) {
    c[i] = GroundElt{v % q_};
    v /= q_;
  }
  return c;
}

Elt FieldTower::from_coords(std::span<const GroundElt> c) const {
  if (c.size() != n_) fail(Errc::length_mismatch, "expected n coordinates");
  std::uint64_t idx = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i].v >= q_) fail(Errc::index_out_of_range, "coordinate out of range");
    idx = idx * q_ + c[i].v;
  }
  return Elt{std::uint32_t(idx)};
}

std::vector<std::uint32_t> FieldTower::ground_coords(GroundElt d) const {
  std::vector<std::uint32_t> c(m_);
  std::uint32_t v = d.v;
  for (std::uint32_t i = 0; i < m_; ++i) {
    c[i] = v % p_;
    v /= p_;
  }
  return c;
}

GroundElt FieldTower::ground_from_coords(std::span<const std::uint32_t> c) const {
  if (c.size() != m_) fail(Errc::length_mismatch, "expected m residues");
  std::uint64_t idx = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] >= p_) fail(Errc::index_out_of_range, "residue out of range");
    idx = idx * p_ + c[i];
  }
  return GroundElt{std::uint32_t(idx)};
}

// ---- ground arithmetic ----

GroundElt FieldTower::gadd(GroundElt a, GroundElt b) const {
  if (p_ == 2) return GroundElt{a.v ^ b.v};
  if (m_ == 1) {
    const std::uint32_t s = a.v + b.v;
    return GroundElt{s >= p_ ? s - p_ : s};
  }
  if (!fq_add_.empty()) return GroundElt{fq_add_[std::size_t(a.v) * q_ + b.v]};
  std::uint32_t out = 0, scale = 1, av = a.v, bv = b.v;
  for (std::uint32_t i = 0; i < m_; ++i) {
    std::uint32_t s = av % p_ + bv % p_;
    if (s >= p_) s -= p_;
    out += s * scale;
    scale *= p_;
    av /= p_;
    bv /= p_;
  }
  return GroundElt{out};
}

GroundElt FieldTower::gneg(GroundElt a) const {
  if (p_ == 2) return a;
  return gmul(a, GroundElt{p_ - 1});
}

GroundElt FieldTower::gmul(GroundElt a, GroundElt b) const {
  if (a.v == 0 || b.v == 0) return {};
  return GroundElt{fq_exp_[std::uint64_t(fq_log_[a.v]) + fq_log_[b.v]]};
}

GroundElt FieldTower::ginv(GroundElt a) const {
  if (a.v == 0) fail(Errc::division_by_zero, "ground inverse of zero");
  const std::uint64_t go = q_ - 1;
  return GroundElt{fq_exp_[(go - fq_log_[a.v]) % go]};
}

GroundElt FieldTower::gdiv(GroundElt a, GroundElt b) const {
  if (b.v == 0) fail(Errc::division_by_zero, "ground division by zero");
  if (a.v == 0) return {};
  const std::uint64_t go = q_ - 1;
  return GroundElt{fq_exp_[(std::uint64_t(fq_log_[a.v]) + go - fq_log_[b.v]) % go]};
}

GroundElt FieldTower::gpow(GroundElt a, std::int64_t e) const {
  if (a.v == 0) {
    if (e == 0) return gone();
    if (e < 0) fail(Errc::division_by_zero, "negative power of ground zero");
    return {};
  }
  const std::int64_t go = std::int64_t(q_) - 1;
  std::int64_t em = e % go;
  if (em < 0) em += go;
  return GroundElt{fq_exp_[std::uint64_t(fq_log_[a.v]) * std::uint64_t(em) % std::uint64_t(go)]};
}

std::uint64_t FieldTower::ground_mult_order(GroundElt a) const {
  if (a.v == 0) fail(Errc::division_by_zero, "multiplicative order of ground zero");
  std::uint64_t ord = q_ - 1;
  for (std::uint64_t f : fq_factors_)
    while (ord % f == 0 && gpow(a, std::int64_t(ord / f)).v == 1) ord /= f;
  return ord;
}

// ---- top field arithmetic ----

Elt FieldTower::add(Elt a, Elt b) const {
  if (p_ == 2) return Elt{a.v ^ b.v};
  if (n_ == 1) return Elt{gadd(GroundElt{a.v}, GroundElt{b.v}).v};
  std::uint64_t out = 0, scale = 1;
  std::uint32_t av = a.v, bv = b.v;
  for (std::uint32_t i = 0; i < n_; ++i) {
    out += std::uint64_t(gadd(GroundElt{av % q_}, GroundElt{bv % q_}).v) * scale;
    scale *= q_;
    av /= q_;
    bv /= q_;
  }
  return Elt{std::uint32_t(out)};
}

Elt FieldTower::neg(Elt a) const {
  if (p_ == 2) return a;
  return mul(a, Elt{p_ - 1});
}

Elt FieldTower::mul(Elt a, Elt b) const {
  if (a.v == 0 || b.v == 0) return {};
  return Elt{exp_[std::uint64_t(log_[a.v]) + log_[b.v]]};
}

Elt FieldTower::inv(Elt a) const {
  if (a.v == 0) fail(Errc::division_by_zero, "inverse of zero");
  const std::uint64_t go = order_ - 1;
  return Elt{exp_[(go - log_[a.v]) % go]};
}

Elt FieldTower::div(Elt a, Elt b) const {
  if (b.v == 0) fail(Errc::division_by_zero, "division by zero");
  if (a.v == 0) return {};
  const std::uint64_t go = order_ - 1;
  return Elt{exp_[(std::uint64_t(log_[a.v]) + go - log_[b.v]) % go]};
}

Elt FieldTower::pow(Elt a, std::int64_t e) const {
  if (a.v == 0) {
    if (e == 0) return one();
    if (e < 0) fail(Errc::division_by_zero, "negative power of zero");
    return {};
  }
  const std::int64_t go = std::int64_t(order_) - 1;
  std::int64_t em = e % go;
  if (em < 0) em += go;
  return Elt{exp_[std::uint64_t(log_[a.v]) * std::uint64_t(em) % std::uint64_t(go)]};
}

Elt FieldTower::frobenius(Elt a, std::int64_t i) const {
  if (a.v == 0) return {};
  std::int64_t im = i % n_;
  if (im < 0) im += n_;
  const std::uint64_t go = order_ - 1;
  return Elt{exp_[std::uint64_t(log_[a.v]) * q_pow_mod_[im] % go]};
}

std::uint64_t FieldTower::mult_order(Elt a) const {
  if (a.v == 0) fail(Errc::division_by_zero, "multiplicative order of zero");
  std::uint64_t ord = order_ - 1;
  for (std::uint64_t f : ext_factors_)
    while (ord % f == 0 && pow(a, std::int64_t(ord / f)).v == 1) ord /= f;
  return ord;
}

GroundElt FieldTower::project(Elt a) const {
  if (a.v >= q_) fail(Errc::not_in_subfield, "element " + std::to_string(a.v) + " is not in F_q");
  return GroundElt{a.v};
}

}  // namespace gfperm
