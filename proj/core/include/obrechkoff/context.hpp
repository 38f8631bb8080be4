#pragma once

#include <cstdint>
#include <string_view>

#include "obrechkoff/real.hpp"

namespace obrechkoff {

/// Working precision in decimal digits.
struct Precision {
  static constexpr int kMinDigits = 16;
  static constexpr int kDefaultDigits = 50;
  int digits = kDefaultDigits;
};

/// Convergence tolerance; defaults rel = abs = 10^(8 - digits).
struct Tolerance {
  Real rel;
  Real abs;
};

/// Binary precision that holds `digits` decimal digits.
mpfr_prec_t bits_for_digits(int digits);

/// Immutable precision context. Cheap to copy; safe to share across threads.
class Context {
 public:
  explicit Context(Precision p = {});

  [[nodiscard]] int digits() const noexcept { return digits_; }
  [[nodiscard]] mpfr_prec_t bits() const noexcept { return bits_; }

  [[nodiscard]] Real real(long value) const { return Real(value, bits_); }
  [[nodiscard]] Real real(double value) const { return Real(value, bits_); }
  /// Decimal literal, correctly rounded.
  [[nodiscard]] Real parse(std::string_view text) const { return Real::parse(text, bits_); }
  /// num/den with a single rounding. Throws DomainError when den == 0.
  [[nodiscard]] Real rational(std::int64_t num, std::int64_t den) const;
  /// Same for arbitrary-size decimal integers such as "-45469" / "1697361329664000".
  [[nodiscard]] Real rational(std::string_view num, std::string_view den) const;
  [[nodiscard]] Real pi() const { return pi_; }
  /// 10^n at context precision.
  [[nodiscard]] Real pow10(long n) const { return obrechkoff::pow10(n, bits_); }
  [[nodiscard]] Tolerance default_tolerance() const;

  /// A context with `extra` more digits (used internally for guard digits).
  [[nodiscard]] Context widened(int extra) const { return Context(Precision{digits_ + extra}); }

 private:
  int digits_;
  mpfr_prec_t bits_;
  Real pi_;
};

/// Throws ConfigurationError for digits < 16.
Context make_context(int digits = Precision::kDefaultDigits);

/// num/den rounded once to `bits`.
Real exact_rational(std::string_view num, std::string_view den, mpfr_prec_t bits);

}  // namespace obrechkoff
