#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "obrechkoff/coefficients.hpp"
#include "obrechkoff/context.hpp"
#include "obrechkoff/errors.hpp"
#include "obrechkoff/real.hpp"

namespace obrechkoff {

/// Characteristic polynomial A s^2 - 2B s + A of the scheme applied to
/// y'' = -lambda^2 y, v = lambda*h.
struct StabilityPair {
  Real A;
  Real B;
  Real v;
};

/// A = 1 + b10 v^2 - b20 v^4 + b30 v^6, B = 1 - b11/2 v^2 + b21/2 v^4 - b31/2 v^6.
StabilityPair stability_pair(const CoefficientSet& coeffs, const Real& v);

/// (A - B)/A, computed without forming B/A (keeps accuracy at small v).
Real one_minus_ratio(const CoefficientSet& coeffs, const Real& v);

/// t(v) = v - theta(v), cos theta = B/A, theta on the branch nearest |v|.
/// Fitted methods use coefficients at the same v, dispatched as coefficients()
/// does at ctx precision but evaluated with guard digits. Below the series
/// switch that means the truncated series, whose phase lag is small but not
/// zero; the closed forms are exact on cos(v) and give t = 0. Odd in v.
/// Throws OutsidePeriodicityError when |B/A| > 1.
Real phase_lag(MethodId method, const Real& v, const Context& ctx);

/// Same, for a fixed coefficient set (coefficients not re-fitted to v).
Real phase_lag(const CoefficientSet& coeffs, const Real& v, const Context& ctx);

struct LeadingTermFit {
  int exponent = 0;
  Real constant;
  Real residual;  // max_i |c_i / constant - 1|
  double slope = 0.0;
  std::vector<double> samples_v;
  std::vector<Real> samples_f;
};

class FitError : public Error {
 public:
  FitError(const std::string& what, LeadingTermFit fit) : Error(what), fit_(std::move(fit)) {}
  [[nodiscard]] const LeadingTermFit& fit() const noexcept { return fit_; }

 private:
  LeadingTermFit fit_;
};

inline constexpr double kMaxFitResidual = 1e-3;

/// f(v) ~ C v^p on [v_lo, v_hi]: p = round(log-log slope) over `samples`
/// geometric points (>= 8), C = signed geometric mean of f/v^p.
/// FitError on a zero / sign change or residual >= kMaxFitResidual.
LeadingTermFit fit_leading_term(const std::function<Real(const Real&)>& f, const Real& v_lo, const Real& v_hi,
                                const Context& ctx, int samples = 16);

/// Brackets of h^2, h^4, ..., h^14 in the local truncation error expansion.
std::array<Real, 7> lte_brackets(const CoefficientSet& coeffs);

enum class ScanTermination { Exit, Tangency, Singular, VMax, Empty };
std::string_view termination_name(ScanTermination t) noexcept;

struct PeriodicitySample {
  Real v;
  Real margin;  // 1 - |B/A|; NaN where the coefficients are singular
};

struct PeriodicityResult {
  Real v0_squared;
  ScanTermination reason = ScanTermination::VMax;
  std::vector<PeriodicitySample> samples;
};

/// Largest v0^2 <= v_max^2 with |B/A| < 1 - 10^(5-digits) throughout (0, v0^2):
/// grid scan (step <= 0.01) plus bisection. Tangential touches of |B/A| = 1 are
/// located by golden-section search between grid points.
PeriodicityResult periodicity_interval(MethodId method, const Context& ctx, const Real& v_max, double step = 0.01);

}  // namespace obrechkoff
