#pragma once

// Value-semantic multiprecision real backed by MPFR.
//
// Every Real carries its own binary precision. Arithmetic between two Reals
// rounds to the larger of the operand precisions; mixing with built-in
// integers or doubles keeps the Real's precision. No process-wide default
// precision is consulted, so values of different precision can be used from
// different threads at the same time.

#include <mpfr.h>

#include <compare>
#include <concepts>
#include <iosfwd>
#include <string>
#include <string_view>

namespace obrechkoff {

class Real {
 public:
  /// Precision of a default-constructed Real. Small enough that it never
  /// dominates the precision of an expression it takes part in.
  static constexpr mpfr_prec_t kNeutralBits = MPFR_PREC_MIN;

  Real();
  Real(long value, mpfr_prec_t bits);
  Real(int value, mpfr_prec_t bits) : Real(static_cast<long>(value), bits) {}
  Real(double value, mpfr_prec_t bits);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  ~Real();

  /// Assignment adopts the precision of the source.
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;

  /// Parses a decimal literal ("0.200426728067", "-1e-5") correctly rounded.
  static Real parse(std::string_view text, mpfr_prec_t bits);
  static Real pi(mpfr_prec_t bits);

  [[nodiscard]] mpfr_prec_t bits() const noexcept { return mpfr_get_prec(v_); }
  /// Same value re-rounded to `bits`.
  [[nodiscard]] Real with_bits(mpfr_prec_t bits) const;

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);
  Real& operator+=(long rhs);
  Real& operator-=(long rhs);
  Real& operator*=(long rhs);
  Real& operator/=(long rhs);
  template <std::floating_point F>
  Real& operator+=(F) = delete;
  template <std::floating_point F>
  Real& operator-=(F) = delete;
  template <std::floating_point F>
  Real& operator*=(F) = delete;
  template <std::floating_point F>
  Real& operator/=(F) = delete;

  Real operator-() const;

  [[nodiscard]] bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  [[nodiscard]] bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
  [[nodiscard]] bool is_nan() const noexcept { return mpfr_nan_p(v_) != 0; }
  [[nodiscard]] int sign() const noexcept { return mpfr_sgn(v_); }

  /// Binary exponent e with value = m * 2^e, 0.5 <= |m| < 1; zero maps to a
  /// very negative sentinel.
  [[nodiscard]] long exponent() const noexcept;
  [[nodiscard]] double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Scientific notation with `significant` digits, e.g. "6.08953e-12".
  [[nodiscard]] std::string to_string(int significant = 6) const;
  /// Enough digits to round-trip at this precision.
  [[nodiscard]] std::string to_string_full() const;

  [[nodiscard]] mpfr_srcptr get() const noexcept { return v_; }
  [[nodiscard]] mpfr_ptr get() noexcept { return v_; }

  friend bool operator==(const Real& a, const Real& b) noexcept { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) noexcept;
  friend bool operator==(const Real& a, long b) noexcept { return mpfr_cmp_si(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, long b) noexcept;

 private:
  void widen_to(mpfr_prec_t bits);

  mpfr_t v_;
};

// Mixing with floating point would silently go through `long`; build a Real.
template <std::floating_point F>
bool operator==(const Real&, F) = delete;
template <std::floating_point F>
std::partial_ordering operator<=>(const Real&, F) = delete;

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator+(const Real& a, long b);
Real operator-(const Real& a, long b);
Real operator*(const Real& a, long b);
Real operator/(const Real& a, long b);
Real operator+(long a, const Real& b);
Real operator-(long a, const Real& b);
Real operator*(long a, const Real& b);
Real operator/(long a, const Real& b);
template <std::floating_point F>
Real operator+(const Real&, F) = delete;
template <std::floating_point F>
Real operator-(const Real&, F) = delete;
template <std::floating_point F>
Real operator*(const Real&, F) = delete;
template <std::floating_point F>
Real operator/(const Real&, F) = delete;
template <std::floating_point F>
Real operator+(F, const Real&) = delete;
template <std::floating_point F>
Real operator-(F, const Real&) = delete;
template <std::floating_point F>
Real operator*(F, const Real&) = delete;
template <std::floating_point F>
Real operator/(F, const Real&) = delete;

Real abs(const Real& x);
Real sqrt(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real acos(const Real& x);
Real asin(const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real pow(const Real& x, long n);
Real pow(const Real& x, const Real& y);
Real square(const Real& x);
Real round_nearest(const Real& x);
/// 10^n at the given precision.
Real pow10(long n, mpfr_prec_t bits);
const Real& max(const Real& a, const Real& b);
const Real& min(const Real& a, const Real& b);

std::ostream& operator<<(std::ostream& os, const Real& x);

}  // namespace obrechkoff
