#include "obrechkoff/real.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace obrechkoff {

namespace {

mpfr_prec_t common_bits(const Real& a, const Real& b) { return std::max(a.bits(), b.bits()); }

std::string format(mpfr_srcptr v, int significant) {
  char* buf = nullptr;
  const int n = mpfr_asprintf(&buf, "%.*Re", std::max(significant - 1, 0), v);
  if (n < 0 || buf == nullptr) {
    throw std::runtime_error("mpfr_asprintf failed");
  }
  std::string out(buf, static_cast<std::size_t>(n));
  mpfr_free_str(buf);
  return out;
}

template <class Op>
Real unary(const Real& x, Op op) {
  Real r(0L, x.bits());
  op(r.get(), x.get(), MPFR_RNDN);
  return r;
}

}  // namespace

Real::Real() {
  mpfr_init2(v_, kNeutralBits);
  mpfr_set_zero(v_, 1);
}

Real::Real(long value, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_si(v_, value, MPFR_RNDN);
}

Real::Real(double value, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_d(v_, value, MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(v_, other.bits());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, kNeutralBits);
  mpfr_swap(v_, other.v_);
}

Real::~Real() { mpfr_clear(v_); }

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    if (bits() != other.bits()) {
      mpfr_set_prec(v_, other.bits());
    }
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

Real Real::parse(std::string_view text, mpfr_prec_t bits) {
  Real r(0L, bits);
  const std::string s(text);
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("not a decimal number: '" + s + "'");
  }
  return r;
}

Real Real::pi(mpfr_prec_t bits) {
  Real r(0L, bits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Real Real::with_bits(mpfr_prec_t bits) const {
  Real r(0L, bits);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

void Real::widen_to(mpfr_prec_t target) {
  if (target > bits()) {
    mpfr_prec_round(v_, target, MPFR_RNDN);
  }
}

Real& Real::operator+=(const Real& rhs) {
  widen_to(rhs.bits());
  mpfr_add(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& rhs) {
  widen_to(rhs.bits());
  mpfr_sub(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& rhs) {
  widen_to(rhs.bits());
  mpfr_mul(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& rhs) {
  widen_to(rhs.bits());
  mpfr_div(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator+=(long rhs) {
  mpfr_add_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(long rhs) {
  mpfr_sub_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(long rhs) {
  mpfr_mul_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(long rhs) {
  mpfr_div_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

long Real::exponent() const noexcept {
  if (!mpfr_regular_p(v_)) {
    return std::numeric_limits<long>::min() / 2;
  }
  return mpfr_get_exp(v_);
}

std::string Real::to_string(int significant) const { return format(v_, significant); }

std::string Real::to_string_full() const {
  const int digits = static_cast<int>(std::ceil(static_cast<double>(bits()) * 0.30102999566398120)) + 1;
  return format(v_, digits);
}

std::partial_ordering operator<=>(const Real& a, const Real& b) noexcept {
  if (mpfr_unordered_p(a.v_, b.v_)) {
    return std::partial_ordering::unordered;
  }
  const int c = mpfr_cmp(a.v_, b.v_);
  return c < 0 ? std::partial_ordering::less : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const Real& a, long b) noexcept {
  if (mpfr_nan_p(a.v_)) {
    return std::partial_ordering::unordered;
  }
  const int c = mpfr_cmp_si(a.v_, b);
  return c < 0 ? std::partial_ordering::less : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

Real operator+(const Real& a, const Real& b) {
  Real r(0L, common_bits(a, b));
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(0L, common_bits(a, b));
  mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(0L, common_bits(a, b));
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r(0L, common_bits(a, b));
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real operator+(const Real& a, long b) { return Real(a) += b; }
Real operator-(const Real& a, long b) { return Real(a) -= b; }
Real operator*(const Real& a, long b) { return Real(a) *= b; }
Real operator/(const Real& a, long b) { return Real(a) /= b; }
Real operator+(long a, const Real& b) { return Real(b) += a; }

Real operator-(long a, const Real& b) {
  Real r(0L, b.bits());
  mpfr_si_sub(r.get(), a, b.get(), MPFR_RNDN);
  return r;
}

Real operator*(long a, const Real& b) { return Real(b) *= a; }

Real operator/(long a, const Real& b) {
  Real r(0L, b.bits());
  mpfr_si_div(r.get(), a, b.get(), MPFR_RNDN);
  return r;
}

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }
Real acos(const Real& x) { return unary(x, mpfr_acos); }
Real asin(const Real& x) { return unary(x, mpfr_asin); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real square(const Real& x) { return unary(x, mpfr_sqr); }

Real round_nearest(const Real& x) {
  Real r(0L, x.bits());
  mpfr_round(r.get(), x.get());
  return r;
}

Real pow(const Real& x, long n) {
  Real r(0L, x.bits());
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r(0L, common_bits(x, y));
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

Real pow10(long n, mpfr_prec_t bits) {
  Real r(0L, bits);
  mpfr_ui_pow_ui(r.get(), 10UL, static_cast<unsigned long>(n < 0 ? -n : n), MPFR_RNDN);
  if (n < 0) {
    mpfr_ui_div(r.get(), 1UL, r.get(), MPFR_RNDN);
  }
  return r;
}

const Real& max(const Real& a, const Real& b) { return (a < b) ? b : a; }
const Real& min(const Real& a, const Real& b) { return (b < a) ? b : a; }

std::ostream& operator<<(std::ostream& os, const Real& x) {
  const auto p = os.precision();
  return os << x.to_string(p > 0 ? static_cast<int>(p) : 6);
}

}  // namespace obrechkoff
