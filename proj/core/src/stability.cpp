#include "obrechkoff/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace obrechkoff {

namespace {

Real nan_like(mpfr_prec_t bits) {
  Real r(0L, bits);
  mpfr_set_nan(r.get());
  return r;
}

int phase_guard(const Real& v) {
  const double av = std::fabs(v.to_double());
  if (av >= 1.0 || av == 0.0) {
    return 10;
  }
  return static_cast<int>(std::ceil(13.0 * std::log10(1.0 / av))) + 10;
}

Real factorial(int n, mpfr_prec_t bits) {
  Real r(1L, bits);
  for (int i = 2; i <= n; ++i) {
    r *= static_cast<long>(i);
  }
  return r;
}

}  // namespace

StabilityPair stability_pair(const CoefficientSet& c, const Real& v) {
  const Real v2 = square(v);
  const Real v4 = square(v2);
  const Real v6 = v4 * v2;
  Real A = 1 + c.beta10 * v2 - c.beta20 * v4 + c.beta30 * v6;
  Real B = 1 - c.beta11 * v2 / 2 + c.beta21 * v4 / 2 - c.beta31 * v6 / 2;
  return {std::move(A), std::move(B), v};
}

Real one_minus_ratio(const CoefficientSet& c, const Real& v) {
  const Real v2 = square(v);
  const Real v4 = square(v2);
  const Real v6 = v4 * v2;
  const Real diff = (c.beta10 + c.beta11 / 2) * v2 - (c.beta20 + c.beta21 / 2) * v4 + (c.beta30 + c.beta31 / 2) * v6;
  const Real A = 1 + c.beta10 * v2 - c.beta20 * v4 + c.beta30 * v6;
  return diff / A;
}

Real phase_lag(const CoefficientSet& coeffs, const Real& v, const Context& ctx) {
  const Real vw = v.with_bits(std::max(v.bits(), ctx.bits()));
  const Real r = one_minus_ratio(coeffs, vw);  // 1 - cos(theta)
  if (r < 0 || r > 2) {
    throw OutsidePeriodicityError("|B/A| > 1 at v = " + v.to_string(8));
  }
  const Real theta0 = 2 * asin(sqrt(r / 2));
  const Real av = abs(vw);
  const Real two_pi = 2 * Real::pi(vw.bits());
  const long k = std::lround((av / two_pi).to_double());
  Real best = theta0;
  Real best_dist = abs(av - theta0);
  for (long j = k - 1; j <= k + 1; ++j) {
    for (int s : {-1, 1}) {
      const Real cand = two_pi * j + theta0 * static_cast<long>(s);
      const Real dist = abs(av - cand);
      if (dist < best_dist) {
        best = cand;
        best_dist = dist;
      }
    }
  }
  const Real t = av - best;
  return v.sign() < 0 ? -t : t;
}

Real phase_lag(MethodId method, const Real& v, const Context& ctx) {
  const Context work = ctx.widened(phase_guard(v));
  const Real vw = v.with_bits(work.bits());
  // Branch chosen at the caller's precision, evaluated with guard digits.
  CoefficientSet c = classical_coefficients(work);
  if (method != MethodId::Classical) {
    if (abs(v) < series_switch(ctx)) {
      c = taylor_fallback(method, vw, work);
    } else {
      c = method == MethodId::PLPrime ? plprime_closed(vw, work) : pldoubleprime_closed(vw, work);
    }
  }
  return phase_lag(c, vw, work).with_bits(ctx.bits());
}

LeadingTermFit fit_leading_term(const std::function<Real(const Real&)>& f, const Real& v_lo, const Real& v_hi,
                                const Context& ctx, int samples) {
  if (samples < 8) {
    throw ConfigurationError("fit_leading_term needs at least 8 samples");
  }
  if (!(v_lo > 0) || !(v_hi > v_lo)) {
    throw DomainError("fit window must satisfy 0 < v_lo < v_hi");
  }
  LeadingTermFit fit;
  const auto bits = ctx.bits();
  const Real lo = v_lo.with_bits(bits);
  const Real ratio = v_hi.with_bits(bits) / lo;
  std::vector<double> lx;
  std::vector<double> ly;
  int sign = 0;
  for (int i = 0; i < samples; ++i) {
    const Real vi = lo * pow(ratio, Real(static_cast<long>(i), bits) / static_cast<long>(samples - 1));
    Real fi = f(vi);
    fit.samples_v.push_back(vi.to_double());
    fit.samples_f.push_back(fi);
    if (fi.is_zero() || !fi.is_finite()) {
      throw FitError("f vanishes or is not finite at v = " + vi.to_string(6), fit);
    }
    if (sign == 0) {
      sign = fi.sign();
    } else if (fi.sign() != sign) {
      throw FitError("f changes sign inside the fit window", fit);
    }
    lx.push_back(log(vi).to_double());
    ly.push_back(log(abs(fi)).to_double());
  }
  const double n = static_cast<double>(samples);
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  fit.slope = sxy / sxx;
  fit.exponent = static_cast<int>(std::lround(fit.slope));

  std::vector<Real> ci;
  Real mean_log(0L, bits);
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const Real vi = lo * pow(ratio, Real(static_cast<long>(i), bits) / static_cast<long>(samples - 1));
    ci.push_back(fit.samples_f[i] / pow(vi, static_cast<long>(fit.exponent)));
    mean_log += log(abs(ci.back()));
  }
  mean_log /= static_cast<long>(samples);
  fit.constant = exp(mean_log);
  if (sign < 0) {
    fit.constant = -fit.constant;
  }
  fit.residual = Real(0L, bits);
  for (const auto& c : ci) {
    const Real dev = abs(c / fit.constant - 1);
    if (fit.residual < dev) {
      fit.residual = dev;
    }
  }
  if (!(fit.residual < Real(kMaxFitResidual, bits))) {
    throw FitError("leading-term fit residual " + fit.residual.to_string(3) + " exceeds tolerance", fit);
  }
  return fit;
}

std::array<Real, 7> lte_brackets(const CoefficientSet& c) {
  const mpfr_prec_t bits = std::max({c.beta10.bits(), c.beta20.bits(), c.beta30.bits()});
  std::array<Real, 7> out;
  for (int k = 1; k <= 7; ++k) {
    Real b = Real(2L, bits) / factorial(2 * k, bits) - 2 * c.beta10 / factorial(2 * k - 2, bits);
    if (k >= 2) {
      b -= 2 * c.beta20 / factorial(2 * k - 4, bits);
    }
    if (k >= 3) {
      b -= 2 * c.beta30 / factorial(2 * k - 6, bits);
    }
    if (k == 1) {
      b -= c.beta11;
    } else if (k == 2) {
      b -= c.beta21;
    } else if (k == 3) {
      b -= c.beta31;
    }
    out[static_cast<std::size_t>(k - 1)] = b;
  }
  return out;
}

std::string_view termination_name(ScanTermination t) noexcept {
  switch (t) {
    case ScanTermination::Exit:
      return "exit";
    case ScanTermination::Tangency:
      return "tangency";
    case ScanTermination::Singular:
      return "singular";
    case ScanTermination::VMax:
      return "v_max";
    case ScanTermination::Empty:
      return "empty";
  }
  return "unknown";
}

PeriodicityResult periodicity_interval(MethodId method, const Context& ctx, const Real& v_max, double step) {
  if (!(v_max > 0)) {
    throw DomainError("periodicity_interval: v_max must be positive");
  }
  step = std::min(step, 0.01);
  const auto bits = ctx.bits();
  const Real tau = ctx.pow10(5 - ctx.digits());

  // 1 - |B/A|, NaN where the coefficients do not exist.
  const auto margin = [&](const Real& v) -> Real {
    try {
      const Real r = one_minus_ratio(coefficients(method, v, ctx), v);
      return 1 - abs(1 - r);
    } catch (const SingularParameterError&) {
      return nan_like(bits);
    }
  };
  const auto inside = [&](const Real& g) { return !g.is_nan() && g > tau; };
  const auto bisect = [&](Real lo, Real hi) {
    for (long it = 0; it < bits + 16 && (hi - lo) > hi * tau; ++it) {
      Real mid = (lo + hi) / 2;
      if (inside(margin(mid))) {
        lo = std::move(mid);
      } else {
        hi = std::move(mid);
      }
    }
    return lo;
  };

  PeriodicityResult res;
  const long n = static_cast<long>(std::ceil(v_max.to_double() / step));
  const Real h = v_max.with_bits(bits) / n;
  std::vector<Real> vs;
  std::vector<Real> gs;
  for (long i = 1; i <= n; ++i) {
    Real v = h * i;
    Real g = margin(v);
    res.samples.push_back({v, g});
    if (!inside(g)) {
      if (i == 1) {
        res.v0_squared = Real(0L, bits);
        res.reason = ScanTermination::Empty;
        return res;
      }
      const Real v0 = bisect(vs.back(), v);
      res.v0_squared = square(v0);
      res.reason = g.is_nan() ? ScanTermination::Singular : ScanTermination::Exit;
      return res;
    }
    vs.push_back(v);
    gs.push_back(g);
    const std::size_t m = gs.size();
    if (m >= 3 && gs[m - 2] < gs[m - 3] && gs[m - 2] < gs[m - 1]) {
      // Local minimum of the margin: look for a touch of |B/A| = 1 in between.
      static const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
      Real a = vs[m - 3];
      Real b = vs[m - 1];
      const Real r(kInvPhi, bits);
      Real x1 = b - r * (b - a);
      Real x2 = a + r * (b - a);
      Real g1 = margin(x1);
      Real g2 = margin(x2);
      // The margin is quadratic at a touch, so resolving v to half the working
      // digits resolves the margin to all of them.
      const Real width = b * ctx.pow10(1 - ctx.digits() / 2);
      for (int it = 0; it < 400 && (b - a) > width; ++it) {
        if (!inside(g1) || !inside(g2)) {
          break;
        }
        if (g1 < g2) {
          b = x2;
          x2 = x1;
          g2 = g1;
          x1 = b - r * (b - a);
          g1 = margin(x1);
        } else {
          a = x1;
          x1 = x2;
          g1 = g2;
          x2 = a + r * (b - a);
          g2 = margin(x2);
        }
      }
      if (!inside(g1) || !inside(g2)) {
        const Real& bad = !inside(g1) ? x1 : x2;
        res.v0_squared = square(bisect(vs[m - 3], bad));
        res.reason = ScanTermination::Tangency;
        return res;
      }
    }
  }
  res.v0_squared = square(v_max.with_bits(bits));
  res.reason = ScanTermination::VMax;
  return res;
}

}  // namespace obrechkoff
