#include "obrechkoff/coefficients.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace obrechkoff {

namespace {

// Decimal digits lost to cancellation grow like k*log10(1/|v|) for small |v|.
int guard_digits(const Real& v, double k) {
  const double av = std::fabs(v.to_double());
  if (av >= 1.0 || av == 0.0) {
    return 10;
  }
  return static_cast<int>(std::ceil(k * std::log10(1.0 / av))) + 10;
}

void check_denominator(const Real& den, const Real& largest_term, const Context& work, const char* what) {
  if (!den.is_finite() || abs(den) < work.pow10(5 - work.digits()) * largest_term) {
    throw SingularParameterError(std::string(what) + " vanishes to working precision");
  }
}

CoefficientSet round_to(const CoefficientSet& c, const Real& v, const Context& ctx) {
  const auto b = ctx.bits();
  return {c.beta10.with_bits(b), c.beta11.with_bits(b), c.beta20.with_bits(b), c.beta21.with_bits(b),
          c.beta30.with_bits(b), c.beta31.with_bits(b), v.with_bits(b)};
}

Real max_abs(std::initializer_list<Real> xs) {
  Real m;
  for (const auto& x : xs) {
    const Real a = abs(x);
    if (m < a) {
      m = a;
    }
  }
  return m;
}

}  // namespace

std::string_view method_name(MethodId m) noexcept {
  switch (m) {
    case MethodId::Classical:
      return "classical";
    case MethodId::PLPrime:
      return "plprime";
    case MethodId::PLDoublePrime:
      return "pldoubleprime";
  }
  return "unknown";
}

MethodId parse_method(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (s == "classical" || s == "classic") {
    return MethodId::Classical;
  }
  if (s == "plprime" || s == "pl'" || s == "pl1") {
    return MethodId::PLPrime;
  }
  if (s == "pldoubleprime" || s == "pl''" || s == "pl\"" || s == "pl2") {
    return MethodId::PLDoublePrime;
  }
  throw ConfigurationError("unknown method '" + std::string(text) + "'");
}

CoefficientSet classical_coefficients(const Context& ctx) {
  return {ctx.rational(229, 7788),     ctx.rational(3665, 3894),      ctx.rational(-1, 2360),
          ctx.rational(711, 12980),    ctx.rational(127, 39251520),   ctx.rational(2923, 3925152),
          ctx.real(0L)};
}

CoefficientSet plprime_closed(const Real& v_in, const Context& ctx) {
  if (v_in.is_zero()) {
    throw SingularParameterError("PL' closed form is undefined at v = 0; use the series");
  }
  const Context work = ctx.widened(guard_digits(v_in, 12.0));
  const Real v = v_in.with_bits(work.bits());
  const Real v2 = square(v);
  const Real v4 = square(v2);
  const Real v6 = v4 * v2;
  const Real c = cos(v);

  const Real A = 15120 * c - 15120 + 6900 * v2 - 313 * v4 + 660 * v2 * c + 13 * v4 * c;
  check_denominator(A, max_abs({work.real(15120L), 6900 * v2, 313 * v4, 660 * v2, 13 * v4}), work,
                    "PL' denominator");
  const Real q = v2 * A;

  const Real n10 = -45360 * v2 + 3702 * v4 - 89 * v6 + 78 * v4 * c + 2 * v6 * c + 90720 - 90720 * c;
  const Real n11 = 45360 * v2 * c + 16998 * v4 - 850 * v6 + 37 * v6 * c - 90720 + 90720 * c + 1902 * v4 * c;
  const Real n20 = -65520 * v2 * c - 1597680 * v2 + 105840 * v4 - 1907 * v6 + 17 * v6 * c + 3326400 - 3326400 * c;
  const Real n21 =
      3109680 * v2 * c + 14278320 * v2 - 30257 * v6 + 1907 * v6 * c - 34776000 + 34776000 * c + 105840 * v4 * c;
  const Real n30 = 3360 * v2 * c + 62160 * v2 - 3814 * v4 + 59 * v6 + 34 * v4 * c - 131040 + 131040 * c;
  const Real n31 =
      149520 * v2 * c + 1428000 * v2 - 60514 * v4 + 59 * v6 * c - 3155040 + 3155040 * c + 3814 * v4 * c;

  const CoefficientSet raw{n10 / (6 * q),     n11 / (3 * q),     -n20 / (5040 * q), n21 / (2520 * q),
                           -n30 / (10080 * q), n31 / (5040 * q), v};
  return round_to(raw, v_in, ctx);
}

CoefficientSet pldoubleprime_closed(const Real& v_in, const Context& ctx) {
  if (v_in.is_zero()) {
    throw SingularParameterError("PL'' closed form is undefined at v = 0; use the series");
  }
  const Context work = ctx.widened(guard_digits(v_in, 16.0));
  const Real v = v_in.with_bits(work.bits());

  // Exactness on cos(r*omega*x), r = 1, 2, 3, after eliminating beta11, beta21,
  // beta31 through the h^2, h^4, h^6 order conditions:
  //   a_r*beta10 + b_r*beta20 + c_r*beta30 = rhs_r
  std::array<Real, 3> a, b, cc, rhs;
  for (int r = 1; r <= 3; ++r) {
    const Real w = v * static_cast<long>(r);
    const Real w2 = square(w);
    const Real w4 = square(w2);
    const Real w6 = w4 * w2;
    const Real s = sin(w / 2);
    const Real d = -2 * square(s);  // cos w - 1
    const auto i = static_cast<std::size_t>(r - 1);
    a[i] = -2 * w2 * d - w4 + w6 / 12;
    b[i] = 2 * w4 * d + w6;
    cc[i] = -2 * w6 * d;
    rhs[i] = 2 * d + w2 - w4 / 12 + w6 / 360;
  }
  const auto det3 = [](const std::array<Real, 3>& x, const std::array<Real, 3>& y, const std::array<Real, 3>& z) {
    return x[0] * (y[1] * z[2] - y[2] * z[1]) - y[0] * (x[1] * z[2] - x[2] * z[1]) + z[0] * (x[1] * y[2] - x[2] * y[1]);
  };
  const Real det = det3(a, b, cc);
  // Scale: product of row maxima (a Hadamard-type bound on |det|). Near v = 2*pi*k
  // the whole c column vanishes, so term-wise scales would hide the singularity.
  Real scale = work.real(1L);
  for (std::size_t i = 0; i < 3; ++i) {
    scale *= max_abs({a[i], b[i], cc[i]});
  }
  check_denominator(det, scale, work, "PL'' determinant");

  const Real b10 = det3(rhs, b, cc) / det;
  const Real b20 = det3(a, rhs, cc) / det;
  const Real b30 = det3(a, b, rhs) / det;
  const Real b11 = 1 - 2 * b10;
  const Real b21 = work.rational(1, 12) - b10 - 2 * b20;
  const Real b31 = work.rational(1, 360) - b10 / 12 - b20 - 2 * b30;
  return round_to({b10, b11, b20, b21, b30, b31, v}, v_in, ctx);
}

CoefficientSet taylor_fallback(MethodId method, const Real& v, const Context& ctx) {
  const TaylorTable& table = taylor_table(method);
  const Context work = ctx.widened(5);
  const Real v2 = square(v.with_bits(work.bits()));
  std::array<Real, 6> out;
  for (std::size_t k = 0; k < 6; ++k) {
    Real acc = work.real(0L);
    for (int i = kSeriesTerms - 1; i >= 0; --i) {
      const auto& lit = table.rows[k][static_cast<std::size_t>(i)];
      acc = acc * v2 + work.rational(lit.num, lit.den);
    }
    out[k] = acc;
  }
  return round_to({out[0], out[1], out[2], out[3], out[4], out[5], v}, v, ctx);
}

Real series_switch(const Context& ctx) {
  const Real s = pow(ctx.real(10L), ctx.rational(50 - ctx.digits(), 12)) / 10L;
  return min(max(s, ctx.rational(1, 1000)), ctx.rational(1, 2));
}

CoefficientSet coefficients(MethodId method, const Real& v, const Context& ctx) {
  switch (method) {
    case MethodId::Classical:
      return classical_coefficients(ctx);
    case MethodId::PLPrime:
      return abs(v) < series_switch(ctx) ? taylor_fallback(method, v, ctx) : plprime_closed(v, ctx);
    case MethodId::PLDoublePrime:
      return abs(v) < series_switch(ctx) ? taylor_fallback(method, v, ctx) : pldoubleprime_closed(v, ctx);
  }
  throw ConfigurationError("unknown method");
}

}  // namespace obrechkoff
