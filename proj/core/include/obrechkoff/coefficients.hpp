#pragma once

#include <array>
#include <string>
#include <string_view>

#include "obrechkoff/context.hpp"
#include "obrechkoff/errors.hpp"
#include "obrechkoff/real.hpp"

namespace obrechkoff {

enum class MethodId { Classical, PLPrime, PLDoublePrime };

inline constexpr std::array<MethodId, 3> kAllMethods{MethodId::Classical, MethodId::PLPrime,
                                                     MethodId::PLDoublePrime};

/// "classical", "plprime", "pldoubleprime".
std::string_view method_name(MethodId m) noexcept;
/// Accepts the names above plus the short forms "pl'" / "pl''" / "pl1" / "pl2"
/// (case-insensitive). Throws ConfigurationError otherwise.
MethodId parse_method(std::string_view text);

/// The six coefficients of
///   y_{n+1} - 2y_n + y_{n-1} = h^2 [b10 (y''_{n+1} + y''_{n-1}) + b11 y''_n]
///                            + h^4 [b20 (...) + b21 y''''_n] + h^6 [b30 (...) + b31 y^(6)_n]
/// at fitting parameter v = omega*h (v = 0 for the classical set).
struct CoefficientSet {
  Real beta10, beta11, beta20, beta21, beta30, beta31;
  Real v;

  [[nodiscard]] std::array<Real, 6> as_array() const { return {beta10, beta11, beta20, beta21, beta30, beta31}; }
};

inline constexpr std::array<std::string_view, 6> kCoefficientNames{"beta10", "beta11", "beta20",
                                                                   "beta21", "beta30", "beta31"};

/// Exact rational literal as decimal strings.
struct RationalLiteral {
  std::string_view num;
  std::string_view den;
};

inline constexpr int kSeriesTerms = 7;  // v^0, v^2, ..., v^12

/// rows[k][i] is the v^(2i) coefficient of the k-th beta (order as in CoefficientSet).
struct TaylorTable {
  std::array<std::array<RationalLiteral, kSeriesTerms>, 6> rows;
};

/// Series table of a fitted method. Throws ConfigurationError for Classical.
const TaylorTable& taylor_table(MethodId method);

CoefficientSet classical_coefficients(const Context& ctx);

/// Closed forms; meant for |v| above series_switch(ctx). Evaluated with guard
/// digits and rounded to ctx precision. SingularParameterError at poles.
CoefficientSet plprime_closed(const Real& v, const Context& ctx);
CoefficientSet pldoubleprime_closed(const Real& v, const Context& ctx);

/// Series through v^12; truncation error O(v^14).
CoefficientSet taylor_fallback(MethodId method, const Real& v, const Context& ctx);

/// |v| below which the dispatcher uses the series: 0.1 at 50 digits, scaled by
/// 10^(-1/12) per extra digit, clamped to [1e-3, 0.5].
Real series_switch(const Context& ctx);

/// Dispatch: Classical ignores v; fitted methods use the series below the
/// switch and the closed form above it.
CoefficientSet coefficients(MethodId method, const Real& v, const Context& ctx);

}  // namespace obrechkoff
