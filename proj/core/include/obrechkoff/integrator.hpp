#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "obrechkoff/coefficients.hpp"
#include "obrechkoff/context.hpp"
#include "obrechkoff/problem.hpp"
#include "obrechkoff/real.hpp"

namespace obrechkoff {

enum class StartupMode { Exact, TaylorSeries };

/// How y'_{n+1} is obtained (the y'-dependent derivative closures need it).
enum class DerivativePolicy {
  /// Two-point Hermite-Obrechkoff formula through y^(7), solved jointly with y_{n+1}.
  Hermite,
  /// One-sided Taylor update from x_n, y'_n corrected by recover_yprime.
  Symmetric,
  /// Derivative of the reference solution. For comparison runs only.
  Exact,
};

enum class CorrectorKind { Newton, FixedPoint };

std::string_view startup_name(StartupMode m) noexcept;
StartupMode parse_startup(std::string_view text);
std::string_view policy_name(DerivativePolicy p) noexcept;
DerivativePolicy parse_policy(std::string_view text);
std::string_view corrector_name(CorrectorKind c) noexcept;
CorrectorKind parse_corrector(std::string_view text);

struct StepperConfig {
  MethodId method = MethodId::Classical;
  Real h;
  Real omega;  // ignored by Classical
  Tolerance tol;
  int max_iters = 8;
  StartupMode startup = StartupMode::Exact;
  int recovery_depth = 3;  // 0..3, Symmetric policy only
  DerivativePolicy derivative = DerivativePolicy::Hermite;
  CorrectorKind corrector = CorrectorKind::Newton;
};

/// Config with the context's default tolerance.
StepperConfig make_config(MethodId method, const Real& h, const Real& omega, const Context& ctx);

/// Two back values of the recurrence. x_n = x0 + n*h is always formed as a product.
struct StepState {
  Real x0;
  long n = 1;
  Real y_prev, y_curr;
  Real yp_prev, yp_curr;
  long total_iterations = 0;
  int max_iterations = 0;
};

struct StartupValues {
  Real y0, y1;
  Real yp0, yp1;
};

/// Exact: y1, y'1 from the reference (ConfigurationError without one).
/// TaylorSeries: expansion at x0 through h^14 (h^13 for y').
StartupValues startup(const ProblemDef& problem, const StepperConfig& config);

/// One step of the implicit scheme; StepFailure when the corrector does not
/// converge within config.max_iters.
StepState step(const StepState& state, const CoefficientSet& coeffs, const ProblemDef& problem,
               const StepperConfig& config);

/// y'_n from the symmetric identity
///   y_{n+1} - y_{n-1} = 2 [h y' + h^3/3! y''' + ... + h^(2d+1)/(2d+1)! y^(2d+1)],
/// d = config.recovery_depth, solved by fixed point since the odd derivatives
/// depend on y'. Truncation O(h^(2d+2)).
Real recover_yprime(const Real& y_prev, const Real& y_curr, const Real& y_next, const Real& x_n,
                    const ProblemDef& problem, const StepperConfig& config, const Real& yp_guess);

struct IntegrationResult {
  Real x_end;
  Real y_end;
  Real yp_end;
  std::optional<Real> reference_end;
  std::optional<Real> abs_end_error;  // |y_end - reference(x_end)|
  long steps = 0;                     // steps of the recurrence, startup excluded
  long total_iterations = 0;
  int max_iterations_per_step = 0;
  double wall_time_s = 0.0;
  std::vector<std::string> warnings;
};

/// Called with (n, x_n, y_n, y'_n).
using TrajectoryObserver = std::function<void(long, const Real&, const Real&, const Real&)>;

/// Integrates problem over [x0, x_end] with constant step config.h.
/// (x_end - x0)/h must be an integer within 1e-12 relative.
IntegrationResult integrate(const ProblemDef& problem, const StepperConfig& config, const Context& ctx,
                            const TrajectoryObserver& observer = {}, long every = 1);

}  // namespace obrechkoff
