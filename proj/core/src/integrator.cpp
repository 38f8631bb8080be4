#include "obrechkoff/integrator.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <string>

#include "obrechkoff/errors.hpp"
#include "obrechkoff/stability.hpp"

namespace obrechkoff {

namespace {

constexpr int kHermiteOrder = 6;  // two-point formula for y' through y^(7)

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// m!(2m-j)! / ((2m)! j! (m-j)!)
std::array<Real, kHermiteOrder + 1> hermite_weights(mpfr_prec_t bits) {
  const auto fact = [bits](int n) {
    Real f(1L, bits);
    for (long i = 2; i <= n; ++i) {
      f *= i;
    }
    return f;
  };
  constexpr int m = kHermiteOrder;
  std::array<Real, kHermiteOrder + 1> c;
  for (int j = 1; j <= m; ++j) {
    c[static_cast<std::size_t>(j)] = fact(m) * fact(2 * m - j) / (fact(2 * m) * fact(j) * fact(m - j));
  }
  return c;
}

bool small_update(const Real& delta, const Real& value, const Tolerance& tol) {
  return abs(delta) <= tol.abs + tol.rel * abs(value);
}

// sum_{k=0}^{last} d[first + k] h^k / k!
Real taylor_sum(const std::vector<Real>& d, int first, int last, const Real& h) {
  Real acc(0L, std::max(d[0].bits(), h.bits()));
  Real term(1L, acc.bits());
  for (int k = 0; k <= last && first + k < static_cast<int>(d.size()); ++k) {
    if (k > 0) {
      term = term * h / static_cast<long>(k);
    }
    acc += d[static_cast<std::size_t>(first + k)] * term;
  }
  return acc;
}

struct Evaluation {
  Real y;   // updated y_{n+1}
  Real w;   // updated y'_{n+1}
  Real yp_n;  // y'_n actually used (changes under the Symmetric policy)
};

class StepKernel {
 public:
  StepKernel(const StepState& s, const CoefficientSet& c, const ProblemDef& p, const StepperConfig& cfg)
      : s_(s), c_(c), p_(p), cfg_(cfg), h_(cfg.h) {
    order_ = std::min(7, p.max_order());
    if (cfg.derivative == DerivativePolicy::Hermite && order_ < 7) {
      throw ConfigurationError("Hermite derivative policy needs derivatives through y^(7)");
    }
    if (cfg.derivative == DerivativePolicy::Exact && !p.reference_prime) {
      throw ConfigurationError("exact derivative policy needs a reference derivative");
    }
    xm_ = s.x0 + h_ * (s.n - 1);
    xn_ = s.x0 + h_ * s.n;
    x1_ = s.x0 + h_ * (s.n + 1);
    jm_ = p.derivatives(xm_, s.y_prev, s.yp_prev, order_);
    jn_ = p.derivatives(xn_, s.y_curr, s.yp_curr, order_);
    h2_ = square(h_);
    h4_ = square(h2_);
    h6_ = h4_ * h2_;
    if (cfg.derivative == DerivativePolicy::Hermite) {
      hw_ = hermite_weights(h_.bits());
    }
    if (cfg.derivative == DerivativePolicy::Exact) {
      w_exact_ = (*p.reference_prime)(x1_);
    }
  }

  [[nodiscard]] const Real& x1() const { return x1_; }

  [[nodiscard]] std::pair<Real, Real> predict() const {
    Real y = taylor_sum(jn_, 0, order_, h_);
    Real w = cfg_.derivative == DerivativePolicy::Exact ? w_exact_ : taylor_sum(jn_, 1, order_ - 1, h_);
    return {std::move(y), std::move(w)};
  }

  [[nodiscard]] bool joint() const { return cfg_.derivative == DerivativePolicy::Hermite; }

  // One application of the fixed-point map at (y, w).
  [[nodiscard]] Evaluation map(const Real& y1, const Real& w_in) const {
    const std::vector<Real>* jn = &jn_;
    std::vector<Real> jn_sym;
    Real w = w_in;
    Real yp_n = s_.yp_curr;
    if (cfg_.derivative == DerivativePolicy::Symmetric) {
      yp_n = recover_yprime(s_.y_prev, s_.y_curr, y1, xn_, p_, cfg_, s_.yp_curr);
      jn_sym = p_.derivatives(xn_, s_.y_curr, yp_n, order_);
      jn = &jn_sym;
      w = taylor_sum(jn_sym, 1, order_ - 1, h_);
    } else if (cfg_.derivative == DerivativePolicy::Exact) {
      w = w_exact_;
    }
    const std::vector<Real> j1 = p_.derivatives(x1_, y1, w, order_);
    const auto& n = *jn;
    Real rhs = 2 * s_.y_curr - s_.y_prev + h2_ * (c_.beta10 * (j1[2] + jm_[2]) + c_.beta11 * n[2]) +
               h4_ * (c_.beta20 * (j1[4] + jm_[4]) + c_.beta21 * n[4]) +
               h6_ * (c_.beta30 * (j1[6] + jm_[6]) + c_.beta31 * n[6]);
    Real w_next = w;
    if (cfg_.derivative == DerivativePolicy::Hermite) {
      w_next = s_.yp_curr;
      Real hj(1L, h_.bits());
      for (int j = 1; j <= kHermiteOrder; ++j) {
        hj *= h_;
        const auto k = static_cast<std::size_t>(j + 1);
        const Real pair = (j % 2 == 1) ? jn_[k] + j1[k] : jn_[k] - j1[k];
        w_next += hw_[static_cast<std::size_t>(j)] * hj * pair;
      }
    }
    return {std::move(rhs), std::move(w_next), std::move(yp_n)};
  }

 private:
  const StepState& s_;
  const CoefficientSet& c_;
  const ProblemDef& p_;
  const StepperConfig& cfg_;
  Real h_, h2_, h4_, h6_;
  Real xm_, xn_, x1_;
  int order_ = 7;
  std::vector<Real> jm_, jn_;
  std::array<Real, kHermiteOrder + 1> hw_;
  Real w_exact_;
};

}  // namespace

std::string_view startup_name(StartupMode m) noexcept { return m == StartupMode::Exact ? "exact" : "taylor"; }

StartupMode parse_startup(std::string_view text) {
  const std::string s = lower(text);
  if (s == "exact") {
    return StartupMode::Exact;
  }
  if (s == "taylor" || s == "taylorseries") {
    return StartupMode::TaylorSeries;
  }
  throw ConfigurationError("unknown startup mode '" + std::string(text) + "'");
}

std::string_view policy_name(DerivativePolicy p) noexcept {
  switch (p) {
    case DerivativePolicy::Hermite:
      return "hermite";
    case DerivativePolicy::Symmetric:
      return "symmetric";
    case DerivativePolicy::Exact:
      return "exact";
  }
  return "unknown";
}

DerivativePolicy parse_policy(std::string_view text) {
  const std::string s = lower(text);
  if (s == "hermite") {
    return DerivativePolicy::Hermite;
  }
  if (s == "symmetric") {
    return DerivativePolicy::Symmetric;
  }
  if (s == "exact") {
    return DerivativePolicy::Exact;
  }
  throw ConfigurationError("unknown derivative policy '" + std::string(text) + "'");
}

std::string_view corrector_name(CorrectorKind c) noexcept { return c == CorrectorKind::Newton ? "newton" : "fixed-point"; }

CorrectorKind parse_corrector(std::string_view text) {
  const std::string s = lower(text);
  if (s == "newton") {
    return CorrectorKind::Newton;
  }
  if (s == "fixed-point" || s == "fixedpoint" || s == "fixed") {
    return CorrectorKind::FixedPoint;
  }
  throw ConfigurationError("unknown corrector '" + std::string(text) + "'");
}

StepperConfig make_config(MethodId method, const Real& h, const Real& omega, const Context& ctx) {
  StepperConfig c;
  c.method = method;
  c.h = h.with_bits(ctx.bits());
  c.omega = omega.with_bits(ctx.bits());
  c.tol = ctx.default_tolerance();
  return c;
}

StartupValues startup(const ProblemDef& problem, const StepperConfig& config) {
  const Real x1 = problem.x0 + config.h;
  if (config.startup == StartupMode::Exact) {
    if (!problem.reference || !problem.reference_prime) {
      throw ConfigurationError("exact startup needs a reference solution and its derivative");
    }
    return {problem.y0, (*problem.reference)(x1), problem.yp0, (*problem.reference_prime)(x1)};
  }
  const int order = std::min(14, problem.max_order());
  const auto d = problem.derivatives(problem.x0, problem.y0, problem.yp0, order);
  return {problem.y0, taylor_sum(d, 0, order, config.h), problem.yp0, taylor_sum(d, 1, order - 1, config.h)};
}

Real recover_yprime(const Real& y_prev, const Real& y_curr, const Real& y_next, const Real& x_n,
                    const ProblemDef& problem, const StepperConfig& config, const Real& yp_guess) {
  const int depth = config.recovery_depth;
  if (depth < 0 || depth > 3) {
    throw ConfigurationError("recovery depth must be in 0..3");
  }
  const Real& h = config.h;
  const Real central = (y_next - y_prev) / (2 * h);
  if (depth == 0) {
    return central;
  }
  if (problem.max_order() < 2 * depth + 1) {
    throw ConfigurationError("recovery depth " + std::to_string(depth) + " needs derivatives through order " +
                             std::to_string(2 * depth + 1));
  }
  // h^(2i) / (2i+1)!
  std::vector<Real> w;
  Real hp(1L, h.bits());
  long fact = 1;
  for (int i = 1; i <= depth; ++i) {
    hp *= square(h);
    fact *= (2L * i) * (2L * i + 1);
    w.push_back(hp / fact);
  }
  Real yp = yp_guess;
  const int limit = 4 * std::max(config.max_iters, 8);
  for (int it = 0; it < limit; ++it) {
    const auto d = problem.derivatives(x_n, y_curr, yp, 2 * depth + 1);
    Real next = central;
    for (int i = 1; i <= depth; ++i) {
      next -= w[static_cast<std::size_t>(i - 1)] * d[static_cast<std::size_t>(2 * i + 1)];
    }
    const bool done = small_update(next - yp, next, config.tol);
    yp = std::move(next);
    if (done) {
      return yp;
    }
  }
  throw StepFailure("y' recovery did not converge", -1, limit, 0.0);
}

StepState step(const StepState& state, const CoefficientSet& coeffs, const ProblemDef& problem,
               const StepperConfig& config) {
  if (config.max_iters < 1) {
    throw ConfigurationError("max_iters must be >= 1");
  }
  const StepKernel k(state, coeffs, problem, config);
  auto [y, w] = k.predict();
  Real yp_n = state.yp_curr;
  const Tolerance& tol = config.tol;
  int it = 0;
  bool converged = false;
  Real last(0L, y.bits());

  if (config.corrector == CorrectorKind::FixedPoint) {
    while (it < config.max_iters && !converged) {
      ++it;
      Evaluation e = k.map(y, w);
      converged = small_update(e.y - y, e.y, tol) && small_update(e.w - w, e.w, tol);
      last = abs(e.y - y);
      y = std::move(e.y);
      w = std::move(e.w);
      yp_n = std::move(e.yp_n);
    }
  } else {
    // Newton on F(z) = z - G(z) with a finite-difference Jacobian. The Jacobian
    // is kept (chord iteration) while the observed contraction still reaches
    // the tolerance within max_iters, and refreshed at the iterate otherwise.
    const long half = -static_cast<long>(y.bits()) / 2;
    Real eps(1L, y.bits());
    mpfr_mul_2si(eps.get(), eps.get(), half, MPFR_RNDN);
    Real a11(1L, y.bits());
    Real a12(0L, y.bits());
    Real a21(0L, y.bits());
    Real a22(1L, y.bits());
    Real det(1L, y.bits());
    const auto jacobian = [&](const Evaluation& at) {
      const Real dy = eps * (1 + abs(y));
      const Evaluation ey = k.map(y + dy, w);
      a11 = 1 - (ey.y - at.y) / dy;
      a21 = -(ey.w - at.w) / dy;
      if (k.joint()) {
        const Real dw = eps * (1 + abs(w));
        const Evaluation ew = k.map(y, w + dw);
        a12 = -(ew.y - at.y) / dw;
        a22 = 1 - (ew.w - at.w) / dw;
      }
      det = a11 * a22 - a12 * a21;
    };
    Evaluation e = k.map(y, w);
    jacobian(e);
    Real fy = y - e.y;
    Real fw = w - e.w;
    Real prev_update;
    while (it < config.max_iters) {
      ++it;
      Real sy;
      Real sw;
      if (k.joint()) {
        sy = (a22 * fy - a12 * fw) / det;
        sw = (a11 * fw - a21 * fy) / det;
      } else {
        sy = fy / a11;
        sw = w - e.w;  // w follows G directly
      }
      y -= sy;
      w -= sw;
      last = abs(sy);
      converged = small_update(sy, y, tol) && small_update(sw, w, tol);
      e = k.map(y, w);
      yp_n = e.yp_n;
      if (converged) {
        if (!k.joint()) {
          w = e.w;
        }
        break;
      }
      fy = y - e.y;
      fw = w - e.w;
      // Linear rate q from the last two updates; refresh when q^(remaining - 2)
      // cannot bring the update below tolerance (the rate drifts, keep slack).
      if (!prev_update.is_zero() && prev_update.is_finite() && it < config.max_iters - 1) {
        const Real q = last / prev_update;
        const Real target = tol.abs + tol.rel * abs(y);
        const long remaining = std::max(config.max_iters - it - 2, 0);
        if (!(q < 1) || last * pow(q, remaining) > target) {
          jacobian(e);
        }
      }
      prev_update = last;
    }
  }
  if (!converged) {
    throw StepFailure("corrector did not converge in " + std::to_string(config.max_iters) + " iterations at step " +
                          std::to_string(state.n),
                      state.n, it, last.to_double());
  }

  StepState next;
  next.x0 = state.x0;
  next.n = state.n + 1;
  next.y_prev = state.y_curr;
  next.yp_prev = std::move(yp_n);
  next.y_curr = std::move(y);
  next.yp_curr = std::move(w);
  next.total_iterations = state.total_iterations + it;
  next.max_iterations = std::max(state.max_iterations, it);
  return next;
}

IntegrationResult integrate(const ProblemDef& problem, const StepperConfig& config, const Context& ctx,
                            const TrajectoryObserver& observer, long every) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!(config.h > 0)) {
    throw ConfigurationError("step size must be positive");
  }
  if (config.omega.sign() < 0) {
    throw ConfigurationError("omega must be non-negative");
  }
  IntegrationResult res;
  const Real span = problem.x_end - problem.x0;
  const Real ratio = span / config.h;
  const long n_steps = std::lround(ratio.to_double());
  if (abs(config.h * n_steps - span) > abs(span) * Real(1e-12, ctx.bits())) {
    throw ConfigurationError("interval length is not an integer multiple of h (ratio " + ratio.to_string(15) + ")");
  }

  const Real v = config.omega * config.h;
  const CoefficientSet coeffs = coefficients(config.method, v, ctx);
  if (!config.omega.is_zero()) {
    const Real r = one_minus_ratio(coeffs, v);
    if (!(r > 0 && r < 2)) {
      res.warnings.push_back("v = omega*h = " + v.to_string(8) + " lies outside the interval of periodicity of " +
                             std::string(method_name(config.method)));
    }
  }

  const auto finish = [&](Real y, Real yp, long n) {
    res.x_end = problem.x0 + config.h * n;
    res.y_end = std::move(y);
    res.yp_end = std::move(yp);
    if (problem.reference) {
      res.reference_end = (*problem.reference)(res.x_end);
      res.abs_end_error = abs(res.y_end - *res.reference_end);
    }
    res.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
  };

  if (n_steps == 0) {
    return finish(problem.y0, problem.yp0, 0);
  }
  const StartupValues sv = startup(problem, config);
  if (observer) {
    observer(0, problem.x0, sv.y0, sv.yp0);
  }
  if (n_steps == 1) {
    return finish(sv.y1, sv.yp1, 1);
  }
  StepState s;
  s.x0 = problem.x0;
  s.n = 1;
  s.y_prev = sv.y0;
  s.y_curr = sv.y1;
  s.yp_prev = sv.yp0;
  s.yp_curr = sv.yp1;
  every = std::max(every, 1L);
  if (observer && every == 1) {
    observer(1, problem.x0 + config.h, s.y_curr, s.yp_curr);
  }
  for (long n = 1; n < n_steps; ++n) {
    s = step(s, coeffs, problem, config);
    if (observer && (s.n % every == 0 || s.n == n_steps)) {
      observer(s.n, problem.x0 + config.h * s.n, s.y_curr, s.yp_curr);
    }
  }
  res.steps = n_steps - 1;
  res.total_iterations = s.total_iterations;
  res.max_iterations_per_step = s.max_iterations;
  return finish(s.y_curr, s.yp_curr, n_steps);
}

}  // namespace obrechkoff
