#include "obrechkoff/problems.hpp"

#include <array>

#include "obrechkoff/errors.hpp"

namespace obrechkoff {

namespace {

long binom(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

// k-th derivative of cos / sin at the same argument, from (cos t, sin t).
Real cos_deriv(int k, const Real& c, const Real& s) {
  switch (k % 4) {
    case 0:
      return c;
    case 1:
      return -s;
    case 2:
      return -c;
    default:
      return s;
  }
}

Real sin_deriv(int k, const Real& c, const Real& s) { return cos_deriv(k + 3, c, s); }

// (y^2)^(j) by Leibniz, given y^(0..j).
Real square_deriv(const std::vector<Real>& d, int j) {
  Real acc(0L, d[0].bits());
  for (int a = 0; a <= j; ++a) {
    acc += binom(j, a) * (d[static_cast<std::size_t>(a)] * d[static_cast<std::size_t>(j - a)]);
  }
  return acc;
}

Closure from_jet(JetFn jet, int k) {
  return [jet = std::move(jet), k](const Real& x, const Real& y, const Real& yp) {
    return jet(x, y, yp, k)[static_cast<std::size_t>(k)];
  };
}

}  // namespace

ProblemDef duffing(const Context& ctx) {
  const Real B = ctx.parse("0.002");
  const Real w = ctx.parse("1.01");
  const std::array<Real, 4> K{ctx.parse("0.200179477536"), ctx.parse("0.246946143e-3"), ctx.parse("0.304016e-6"),
                              ctx.parse("0.374e-9")};

  // y^(j+2) = -y^(j) - (y^3)^(j) + B w^j cos^(j)(w x)
  JetFn jet = [B, w](const Real& x, const Real& y, const Real& yp, int order) {
    std::vector<Real> d{y, yp};
    std::vector<Real> sq;
    const Real wx = w * x;
    const Real c = cos(wx);
    const Real s = sin(wx);
    Real wj(1L, w.bits());
    for (int j = 0; j + 2 <= order; ++j) {
      sq.push_back(square_deriv(d, j));
      Real cube = d[0] * sq[static_cast<std::size_t>(j)];
      for (int a = 1; a <= j; ++a) {
        cube += binom(j, a) * (d[static_cast<std::size_t>(a)] * sq[static_cast<std::size_t>(j - a)]);
      }
      d.push_back(-d[static_cast<std::size_t>(j)] - cube + B * wj * cos_deriv(j, c, s));
      wj *= w;
    }
    d.resize(static_cast<std::size_t>(std::max(order, 0)) + 1);
    return d;
  };

  ProblemDef p;
  p.name = "duffing";
  p.x0 = ctx.real(0L);
  p.x_end = ctx.parse("40.5") * ctx.pi() / w;
  p.y0 = ctx.parse("0.200426728067");
  p.yp0 = ctx.real(0L);
  p.f2 = [B, w](const Real& x, const Real& y, const Real&) { return -y - y * y * y + B * cos(w * x); };
  p.f3 = [B, w](const Real& x, const Real& y, const Real& yp) {
    return -(1 + 3 * square(y)) * yp - B * w * sin(w * x);
  };
  p.f4 = [B, w](const Real& x, const Real& y, const Real& yp) {
    const Real y2 = -y - y * y * y + B * cos(w * x);
    return -(1 + 3 * square(y)) * y2 - 6 * y * square(yp) - B * square(w) * cos(w * x);
  };
  p.f5 = from_jet(jet, 5);
  p.f6 = from_jet(jet, 6);
  p.f7 = from_jet(jet, 7);
  p.jet = jet;
  p.reference = [K, w](const Real& x) {
    Real g = K[0] * cos(w * x);
    for (long i = 1; i < 4; ++i) {
      g += K[static_cast<std::size_t>(i)] * cos((2 * i + 1) * w * x);
    }
    return g;
  };
  p.reference_prime = [K, w](const Real& x) {
    Real g = -(K[0] * w * sin(w * x));
    for (long i = 1; i < 4; ++i) {
      g -= K[static_cast<std::size_t>(i)] * (2 * i + 1) * w * sin((2 * i + 1) * w * x);
    }
    return g;
  };
  p.default_omega = w;
  return p;
}

ProblemDef linear_forced(const Context& ctx) {
  ProblemDef p;
  p.name = "linear";
  p.x0 = ctx.real(0L);
  p.x_end = 10 * ctx.pi();
  p.y0 = ctx.real(1L);
  p.yp0 = ctx.real(11L);
  p.f2 = [](const Real& x, const Real& y, const Real&) { return -100 * y + 99 * sin(x); };
  p.f3 = [](const Real& x, const Real&, const Real& yp) { return -100 * yp + 99 * cos(x); };
  p.f4 = [](const Real& x, const Real& y, const Real&) { return -100 * (-100 * y + 99 * sin(x)) - 99 * sin(x); };
  p.f5 = [](const Real& x, const Real&, const Real& yp) { return -100 * (-100 * yp + 99 * cos(x)) - 99 * cos(x); };
  p.f6 = [](const Real& x, const Real& y, const Real&) {
    const Real f4 = -100 * (-100 * y + 99 * sin(x)) - 99 * sin(x);
    return -100 * f4 + 99 * sin(x);
  };
  p.f7 = [](const Real& x, const Real&, const Real& yp) {
    const Real f5 = -100 * (-100 * yp + 99 * cos(x)) - 99 * cos(x);
    return -100 * f5 + 99 * cos(x);
  };
  // y^(j+2) = -100 y^(j) + 99 sin^(j)(x)
  p.jet = [](const Real& x, const Real& y, const Real& yp, int order) {
    std::vector<Real> d{y, yp};
    const Real c = cos(x);
    const Real s = sin(x);
    for (int j = 0; j + 2 <= order; ++j) {
      d.push_back(-100 * d[static_cast<std::size_t>(j)] + 99 * sin_deriv(j, c, s));
    }
    d.resize(static_cast<std::size_t>(std::max(order, 0)) + 1);
    return d;
  };
  p.reference = [](const Real& x) { return sin(x) + sin(10 * x) + cos(10 * x); };
  p.reference_prime = [](const Real& x) { return cos(x) + 10 * cos(10 * x) - 10 * sin(10 * x); };
  p.default_omega = ctx.real(10L);
  return p;
}

ProblemDef rational_problem(const Context& ctx) {
  // (1+2x) y^(j+2) + 2j y^(j+1) = 8 (y^2)^(j)
  JetFn jet = [](const Real& x, const Real& y, const Real& yp, int order) {
    std::vector<Real> d{y, yp};
    const Real q = 1 + 2 * x;
    for (int j = 0; j + 2 <= order; ++j) {
      d.push_back((8 * square_deriv(d, j) - 2L * j * d[static_cast<std::size_t>(j + 1)]) / q);
    }
    d.resize(static_cast<std::size_t>(std::max(order, 0)) + 1);
    return d;
  };

  ProblemDef p;
  p.name = "rational";
  p.x0 = ctx.real(0L);
  p.x_end = ctx.parse("4.5");
  p.y0 = ctx.real(1L);
  p.yp0 = ctx.real(-2L);
  p.f2 = [](const Real& x, const Real& y, const Real&) { return 8 * square(y) / (1 + 2 * x); };
  p.f3 = [](const Real& x, const Real& y, const Real& yp) {
    const Real q = 1 + 2 * x;
    return 16 * y * yp / q - 16 * square(y) / square(q);
  };
  p.f4 = from_jet(jet, 4);
  p.f5 = from_jet(jet, 5);
  p.f6 = from_jet(jet, 6);
  p.f7 = from_jet(jet, 7);
  p.jet = jet;
  p.reference = [](const Real& x) { return 1 / (1 + 2 * x); };
  p.reference_prime = [](const Real& x) { return -2 / square(1 + 2 * x); };
  return p;
}

ProblemDef make_problem(std::string_view name, const Context& ctx) {
  if (name == "duffing") {
    return duffing(ctx);
  }
  if (name == "linear") {
    return linear_forced(ctx);
  }
  if (name == "rational") {
    return rational_problem(ctx);
  }
  throw ConfigurationError("unknown problem '" + std::string(name) + "'");
}

std::vector<std::string> problem_names() { return {"duffing", "linear", "rational"}; }

}  // namespace obrechkoff
