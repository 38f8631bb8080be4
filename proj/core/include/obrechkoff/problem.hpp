#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "obrechkoff/real.hpp"

namespace obrechkoff {

/// y^(k)(x) expressed through (x, y, y').
using Closure = std::function<Real(const Real& x, const Real& y, const Real& yp)>;
/// Returns [y, y', y'', ..., y^(order)] at (x, y, y').
using JetFn = std::function<std::vector<Real>(const Real& x, const Real& y, const Real& yp, int order)>;
using ScalarFn = std::function<Real(const Real& x)>;

/// Scalar IVP y'' = f(x, y, y') on [x0, x_end].
struct ProblemDef {
  std::string name;
  Real x0, x_end;
  Real y0, yp0;
  Closure f2, f4, f6;
  std::optional<Closure> f3, f5, f7;
  /// Derivatives of any order; when present, used instead of the closures.
  std::optional<JetFn> jet;
  std::optional<ScalarFn> reference;
  std::optional<ScalarFn> reference_prime;
  std::optional<Real> default_omega;

  /// Highest derivative order available through derivatives().
  [[nodiscard]] int max_order() const;
  /// [y, y', ..., y^(order)]; ConfigurationError past max_order().
  [[nodiscard]] std::vector<Real> derivatives(const Real& x, const Real& y, const Real& yp, int order) const;
};

}  // namespace obrechkoff
