#include "obrechkoff/context.hpp"

#include <gmp.h>

#include <cmath>
#include <string>

#include "obrechkoff/errors.hpp"

namespace obrechkoff {

namespace {

// RAII holder; mpq_t has no destructor of its own.
struct Mpq {
  mpq_t q;
  Mpq() { mpq_init(q); }
  ~Mpq() { mpq_clear(q); }
  Mpq(const Mpq&) = delete;
  Mpq& operator=(const Mpq&) = delete;
};

Real from_mpq(mpq_srcptr q, mpfr_prec_t bits) {
  Real r(0L, bits);
  mpfr_set_q(r.get(), q, MPFR_RNDN);
  return r;
}

}  // namespace

mpfr_prec_t bits_for_digits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.321928094887362));
}

namespace {

int checked_digits(int digits) {
  if (digits < Precision::kMinDigits) {
    throw ConfigurationError("precision must be at least " + std::to_string(Precision::kMinDigits) +
                             " digits, got " + std::to_string(digits));
  }
  return digits;
}

}  // namespace

Context::Context(Precision p)
    : digits_(checked_digits(p.digits)), bits_(bits_for_digits(digits_)), pi_(Real::pi(bits_)) {}

Real Context::rational(std::int64_t num, std::int64_t den) const {
  if (den == 0) {
    throw DomainError("rational: zero denominator");
  }
  return exact_rational(std::to_string(num), std::to_string(den), bits_);
}

Real Context::rational(std::string_view num, std::string_view den) const { return exact_rational(num, den, bits_); }

Tolerance Context::default_tolerance() const {
  const Real t = pow10(8 - digits_);
  return Tolerance{t, t};
}

Context make_context(int digits) { return Context(Precision{digits}); }

Real exact_rational(std::string_view num, std::string_view den, mpfr_prec_t bits) {
  Mpq q;
  Mpq d;
  const std::string n(num.substr(num.starts_with('+') ? 1 : 0));
  const std::string m(den.substr(den.starts_with('+') ? 1 : 0));
  if (mpz_set_str(mpq_numref(q.q), n.c_str(), 10) != 0 || mpz_set_str(mpq_numref(d.q), m.c_str(), 10) != 0) {
    throw DomainError("rational: malformed integer '" + n + "/" + m + "'");
  }
  if (mpz_sgn(mpq_numref(d.q)) == 0) {
    throw DomainError("rational: zero denominator");
  }
  mpz_set(mpq_denref(q.q), mpq_numref(d.q));
  mpq_canonicalize(q.q);
  return from_mpq(q.q, bits);
}

}  // namespace obrechkoff
