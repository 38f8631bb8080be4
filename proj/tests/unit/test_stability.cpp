#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "obrechkoff/coefficients.hpp"
#include "obrechkoff/stability.hpp"
#include "oracles.hpp"

using namespace obrechkoff;

namespace {

// Positive roots in s = v^2 of A + B = 0 for the classical set (A + B is a cubic in s),
// bracketed on a coarse grid and bisected in cpp_bin_float.
std::vector<oracle::Float> classical_exit_roots() {
  using F = oracle::Float;
  const F b10 = oracle::to_float(oracle::q(229, 7788)), b11 = oracle::to_float(oracle::q(3665, 3894));
  const F b20 = oracle::to_float(oracle::q(-1, 2360)), b21 = oracle::to_float(oracle::q(711, 12980));
  const F b30 = oracle::to_float(oracle::q(127, 39251520)), b31 = oracle::to_float(oracle::q(2923, 3925152));
  auto g = [&](const F& s) {
    const F a = 1 + b10 * s - b20 * s * s + b30 * s * s * s;
    const F b = 1 - b11 / 2 * s + b21 / 2 * s * s - b31 / 2 * s * s * s;
    return a + b;
  };
  std::vector<F> roots;
  F lo = 0;
  for (int i = 1; i <= 2000; ++i) {
    const F hi = F(i) / 20;
    if (g(lo) * g(hi) < 0) {
      F a = lo, b = hi;
      for (int k = 0; k < 300; ++k) {
        const F m = (a + b) / 2;
        (g(a) * g(m) <= 0 ? b : a) = m;
      }
      roots.push_back((a + b) / 2);
    }
    lo = hi;
  }
  return roots;
}

const char* kLteC = "45469";
const char* kLteD = "1697361329664000";

}  // namespace

TEST_SUITE("stability-analysis") {
  TEST_CASE("A = B = 1 at v = 0 and B/A ~ 1 - v^2/2") {
    const auto ctx = make_context(50);
    for (auto m : kAllMethods) {
      const auto c = coefficients(m, ctx.real(0L), ctx);
      const auto p = stability_pair(c, ctx.real(0L));
      CHECK(p.A == 1);
      CHECK(p.B == 1);
      const Real v = ctx.parse("1e-3");
      const auto cv = coefficients(m, v, ctx);
      const Real r = one_minus_ratio(cv, v);
      CHECK(abs(r / (square(v) / 2) - 1) < ctx.pow10(-6));
      const auto q = stability_pair(cv, v);
      CHECK(abs(1 - q.B / q.A - r) < ctx.pow10(-45));
    }
  }

  TEST_CASE("fitted sets reproduce cos v exactly") {
    const auto ctx = make_context(50);
    for (auto m : {MethodId::PLPrime, MethodId::PLDoublePrime}) {
      for (const char* s : {"0.3", "1", "2.5"}) {
        const Real v = ctx.parse(s);
        const auto p = stability_pair(coefficients(m, v, ctx), v);
        CHECK(abs(p.B / p.A - cos(v)) < ctx.pow10(-44));
      }
    }
  }

  TEST_CASE("classical phase lag: leading term and oddness") {
    const auto ctx = make_context(50);
    const Real v = ctx.parse("0.01");
    const Real t = phase_lag(MethodId::Classical, v, ctx);
    const Real tm = phase_lag(MethodId::Classical, -v, ctx);
    CHECK(t == -tm);
    // t ~ -(|b7|/2) v^13 with b7 the h^14 bracket
    const Real c = ctx.rational(kLteC, kLteD) / 2;
    CHECK(abs(t / (-c * pow(v, 13L)) - 1) < ctx.pow10(-3));
    CHECK(phase_lag(MethodId::Classical, ctx.real(0L), ctx).is_zero());
  }

  TEST_CASE("fitted phase lags vanish on the closed-form branch") {
    const auto ctx = make_context(50);
    for (auto m : {MethodId::PLPrime, MethodId::PLDoublePrime}) {
      for (long k : {1L, 2L}) {
        const Real v = ctx.real(k);
        CHECK(abs(phase_lag(m, v, ctx)) < ctx.pow10(-40));
      }
      const Real half = ctx.parse("0.5");
      CHECK(abs(phase_lag(m, half, ctx)) < ctx.pow10(-40));
    }
    // below the switch the series is used: tiny, nonzero, far below classical
    const Real v = ctx.parse("0.01");
    const Real t2 = abs(phase_lag(MethodId::PLDoublePrime, v, ctx));
    const Real t0 = abs(phase_lag(MethodId::Classical, v, ctx));
    CHECK(t2 < t0 * ctx.pow10(-6));
  }

  TEST_CASE("fit_leading_term on a synthetic power") {
    const auto ctx = make_context(50);
    const auto fit = fit_leading_term([&](const Real& v) { return 3 * pow(v, 4L) + pow(v, 6L); }, ctx.parse("1e-4"),
                                      ctx.parse("1e-3"), ctx);
    CHECK(fit.exponent == 4);
    CHECK(abs(fit.constant - 3) < ctx.pow10(-5));
    CHECK(fit.samples_v.size() == 16);
    CHECK(fit.residual < Real(kMaxFitResidual, ctx.bits()));

    CHECK_THROWS_AS(fit_leading_term([&](const Real& v) { return v - ctx.parse("5e-4"); }, ctx.parse("1e-4"),
                                     ctx.parse("1e-3"), ctx),
                    FitError);
    CHECK_THROWS_AS(fit_leading_term([&](const Real& v) { return v + square(v) * 1000; }, ctx.parse("1e-4"),
                                     ctx.parse("1e-2"), ctx),
                    FitError);
  }

  TEST_CASE("phase lag is half the leading local-truncation bracket") {
    const auto ctx = make_context(60);
    const auto fit = fit_leading_term([&](const Real& v) { return phase_lag(MethodId::Classical, v, ctx); },
                                      ctx.parse("1e-3"), ctx.parse("1e-2"), ctx);
    const auto lte = lte_brackets(classical_coefficients(ctx));
    CHECK(fit.exponent == 13);
    CHECK(abs(fit.constant / (lte[6] / 2) - 1) < ctx.pow10(-3));
  }

  TEST_CASE("PL' brackets: orders 2..10 vanish, residual in the h^12 and h^14 terms") {
    const auto ctx = make_context(60);
    const Real c = ctx.rational(kLteC, kLteD);
    const Real v = ctx.parse("0.01");
    const auto b = lte_brackets(plprime_closed(v, ctx));
    for (int k = 0; k < 5; ++k) {
      CHECK(abs(b[static_cast<std::size_t>(k)]) < ctx.pow10(-40));
    }
    CHECK(abs(b[5] / (-c * square(v)) - 1) < ctx.pow10(-3));
    CHECK(abs(b[6] / (-c) - 1) < ctx.pow10(-3));
  }

  TEST_CASE("PL'' brackets: orders 2..6 vanish, three residual terms") {
    const auto ctx = make_context(60);
    const Real c = ctx.rational(kLteC, kLteD);
    const Real v = ctx.parse("0.01");
    const auto b = lte_brackets(pldoubleprime_closed(v, ctx));
    for (int k = 0; k < 3; ++k) {
      CHECK(abs(b[static_cast<std::size_t>(k)]) < ctx.pow10(-40));
    }
    CHECK(abs(b[3] / (-36 * c * pow(v, 6L)) - 1) < ctx.pow10(-3));
    CHECK(abs(b[4] / (-49 * c * pow(v, 4L)) - 1) < ctx.pow10(-3));
    CHECK(abs(b[5] / (-14 * c * square(v)) - 1) < ctx.pow10(-3));
  }

  TEST_CASE("inside the interval the characteristic roots have unit modulus") {
    const auto ctx = make_context(50);
    for (auto m : kAllMethods) {
      for (const char* s : {"0.5", "1.5", "2.9"}) {
        const Real v = ctx.parse(s);
        const auto p = stability_pair(coefficients(m, v, ctx), v);
        // A s^2 - 2B s + A: negative discriminant gives a conjugate pair with product 1
        CHECK(square(p.B) < square(p.A));
        CHECK(abs(p.B / p.A) < 1);
      }
    }
  }

  TEST_CASE("theta tracks v near the origin") {
    const auto ctx = make_context(50);
    const Real v = ctx.parse("1e-4");
    const Real dv = ctx.parse("1e-8");
    const Real t1 = phase_lag(MethodId::Classical, v + dv, ctx);
    const Real t0 = phase_lag(MethodId::Classical, v, ctx);
    // d(theta)/dv = 1 - dt/dv
    const Real slope = 1 - (t1 - t0) / dv;
    CHECK(abs(slope - 1) < ctx.pow10(-30));
  }

  TEST_CASE("classical periodicity interval is the first exit of A + B") {
    const auto ctx = make_context(50);
    const auto roots = classical_exit_roots();
    REQUIRE(roots.size() == 3);
    CHECK(oracle::rel_diff(roots[0], oracle::Float("9.7954")) < 1e-4);
    const auto r = periodicity_interval(MethodId::Classical, ctx, ctx.real(10L));
    CHECK(r.reason == ScanTermination::Exit);
    CHECK(oracle::rel_diff(oracle::to_float(r.v0_squared), roots[0]) < 1e-12);
    CHECK(!r.samples.empty());
  }

  TEST_CASE("fitted methods touch |B/A| = 1 at v = pi") {
    const auto ctx = make_context(30);
    for (auto m : {MethodId::PLPrime, MethodId::PLDoublePrime}) {
      const auto r = periodicity_interval(m, ctx, ctx.real(4L));
      CAPTURE(method_name(m));
      CHECK(r.reason == ScanTermination::Tangency);
      CHECK(abs(r.v0_squared - square(ctx.pi())) < ctx.pow10(-6));
    }
    const auto small = periodicity_interval(MethodId::Classical, ctx, ctx.real(2L));
    CHECK(small.reason == ScanTermination::VMax);
    CHECK(small.v0_squared == 4);
  }

  TEST_CASE("phase lag outside the interval throws") {
    const auto ctx = make_context(50);
    const Real v = sqrt(ctx.real(9.85));
    CHECK_THROWS_AS(phase_lag(MethodId::Classical, v, ctx), OutsidePeriodicityError);
    CHECK(termination_name(ScanTermination::Exit) == "exit");
  }
}
