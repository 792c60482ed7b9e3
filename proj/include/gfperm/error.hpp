#pragma once

#include <stdexcept>
#include <string>

namespace gfperm {

// Every failure the library can raise on purpose. The split matters for the
// CLI: caller mistakes (bad parameters, violated preconditions) exit with 2,
// broken internal cross-checks exit with 1.
enum class Errc {
  bad_spec,
  not_prime,
  budget_exceeded,
  division_by_zero,
  index_out_of_range,
  not_in_subfield,
  length_mismatch,
  exponent_out_of_range,
  zero_alpha,
  zero_gamma,
  bad_degree,
  even_characteristic,
  bijective_l,
  non_bijective_l,
  cert_mismatch,
  b_is_minus_one,
  hypothesis_failed,
  family_precondition_failed,
  coefficients_not_in_subfield,
  kernel_not_line,
  h_not_bijective,
  even_q,
  g_violates_hypotheses,
  // internal: a mathematically guaranteed property failed to verify
  no_irreducible,
  not_linear,
  cert_failed,
  invariant_violation,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

  bool internal() const noexcept {
    return code_ == Errc::no_irreducible || code_ == Errc::not_linear ||
           code_ == Errc::cert_failed || code_ == Errc::invariant_violation;
  }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace gfperm
