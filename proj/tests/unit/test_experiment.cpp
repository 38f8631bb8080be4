#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "obrechkoff/errors.hpp"
#include "obrechkoff/experiment.hpp"
#include "obrechkoff/problems.hpp"
#include "oracles.hpp"

using namespace obrechkoff;

namespace {

ExperimentSpec spec_for(const std::string& problem, std::vector<MethodId> methods, std::vector<long> divisors) {
  ExperimentSpec s;
  s.problem = problem;
  s.methods = std::move(methods);
  s.divisors = std::move(divisors);
  return s;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_SUITE("bench-cli") {
  TEST_CASE("span expressions") {
    const auto ctx = make_context(50);
    CHECK(parse_span("4.5", ctx) == ctx.parse("4.5"));
    CHECK(parse_span("pi", ctx) == ctx.pi());
    CHECK(abs(parse_span("10pi", ctx) - 10 * ctx.pi()) < ctx.pow10(-48));
    CHECK(abs(parse_span("10*pi", ctx) - 10 * ctx.pi()) < ctx.pow10(-48));
    CHECK(abs(parse_span("40.5*pi/1.01", ctx) - ctx.parse("40.5") * ctx.pi() / ctx.parse("1.01")) < ctx.pow10(-48));
    for (const char* bad : {"", "pi/", "-1", "0", "x", "2**pi", "1/0"}) {
      CAPTURE(bad);
      CHECK_THROWS_AS(parse_span(bad, ctx), ConfigurationError);
    }
    CHECK(default_span("duffing") == "40.5*pi/1.01");
    CHECK(default_span_label("duffing") == "M");
    CHECK(default_span("linear") == "pi");
    CHECK(default_span("rational") == "4.5");
    CHECK_THROWS_AS(default_span("nope"), ConfigurationError);
  }

  TEST_CASE("emit on empty and one-row tables") {
    ResultTable t;
    t.problem = "linear";
    t.span_label = t.span_text = "pi";
    CHECK(emit(t, OutputFormat::Csv) == std::string(kResultCsvHeader) + "\n");
    CHECK(parse_result_csv(emit(t, OutputFormat::Csv)).empty());
    const auto ctx = make_context(20);
    ResultRow r;
    r.method = MethodId::PLPrime;
    r.divisor = 10;
    r.h = ctx.pi() / 10L;
    r.y_end = ctx.parse("1.5");
    r.reference_end = ctx.parse("1.25");
    t.rows.push_back(r);
    const auto rows = parse_result_csv(emit(t, OutputFormat::Csv));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].method == "plprime");
    CHECK(rows[0].abs_end_error == doctest::Approx(0.25));
    CHECK(!rows[0].observed_order);
    CHECK(emit(t, OutputFormat::Markdown).find("| pi/10 | 2.50000e-01 |") != std::string::npos);
  }

  TEST_CASE("duffing table with round trip") {
    auto s = spec_for("duffing", {MethodId::Classical, MethodId::PLDoublePrime}, {500, 1000});
    const auto t = run_experiment(s);
    REQUIRE(t.rows.size() == 4);
    CHECK(!t.any_failed());
    for (const auto& r : t.rows) {
      const Real e = *r.abs_end_error();
      CHECK(e > Real(1e-14, e.bits()));
      CHECK(e < Real(1e-10, e.bits()));
    }
    CHECK(t.rows[0].method == MethodId::Classical);
    CHECK(t.rows[0].divisor == 500);
    CHECK(t.rows[1].divisor == 1000);
    CHECK(t.rows[2].method == MethodId::PLDoublePrime);
    CHECK(t.rows[1].observed_order.has_value());

    const std::string csv = emit(t, OutputFormat::Csv);
    const auto back = parse_result_csv(csv);
    REQUIRE(back.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(back[i].method == method_name(t.rows[i].method));
      CHECK(*back[i].abs_end_error == doctest::Approx(t.rows[i].abs_end_error()->to_double()).epsilon(1e-5));
      CHECK(back[i].h > 0.0);
    }
    const std::string md = emit(t, OutputFormat::Markdown);
    CHECK(md.find("M/500") != std::string::npos);
    CHECK(md.find("M = 40.5*pi/1.01") != std::string::npos);
  }

  TEST_CASE("linear: fitted method beats classical by six orders") {
    const auto t = run_experiment(spec_for("linear", {MethodId::Classical, MethodId::PLDoublePrime}, {100}));
    const Real cl = *t.rows[0].abs_end_error();
    const Real pl = *t.rows[1].abs_end_error();
    CHECK(pl < cl * pow10(-6, cl.bits()));
  }

  TEST_CASE("rational: observed order near twelve") {
    const auto t = run_experiment(spec_for("rational", {MethodId::Classical}, {300, 600}));
    REQUIRE(t.rows[1].observed_order.has_value());
    CHECK(*t.rows[1].observed_order > 11.0);
    CHECK(*t.rows[1].observed_order < 13.0);
  }

  TEST_CASE("results do not depend on the worker count") {
    auto s = spec_for("linear", {MethodId::Classical, MethodId::PLPrime}, {20, 40, 80});
    s.workers = 1;
    const auto a = run_experiment(s);
    s.workers = 4;
    const auto b = run_experiment(s);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      CHECK(a.rows[i].method == b.rows[i].method);
      CHECK(*a.rows[i].y_end == *b.rows[i].y_end);
    }
  }

  TEST_CASE("errors are recomputed from the stored values") {
    auto t = run_experiment(spec_for("linear", {MethodId::Classical}, {50}));
    auto& r = t.rows[0];
    const Real e = *r.abs_end_error();
    CHECK(e == abs(*r.y_end - *r.reference_end));
    r.y_end = *r.reference_end;
    CHECK(r.abs_end_error()->is_zero());
  }

  TEST_CASE("failed cells are kept as rows") {
    auto s = spec_for("duffing", {MethodId::Classical}, {100, 200});
    s.corrector = CorrectorKind::FixedPoint;
    s.max_iters = 1;
    const auto t = run_experiment(s);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.any_failed());
    CHECK(t.rows[0].failure.has_value());
    CHECK(!t.rows[0].abs_end_error());
    const auto back = parse_result_csv(emit(t, OutputFormat::Csv));
    CHECK(back[0].failed);
    CHECK(!back[0].abs_end_error);
    CHECK(emit(t, OutputFormat::Markdown).find("failed") != std::string::npos);
  }

  TEST_CASE("invalid specs") {
    CHECK_THROWS_AS(run_experiment(spec_for("linear", {}, {10})), ConfigurationError);
    CHECK_THROWS_AS(run_experiment(spec_for("linear", {MethodId::Classical}, {})), ConfigurationError);
    CHECK_THROWS_AS(run_experiment(spec_for("linear", {MethodId::Classical}, {20, 10})), ConfigurationError);
    CHECK_THROWS_AS(run_experiment(spec_for("linear", {MethodId::Classical}, {0})), ConfigurationError);
    CHECK_THROWS_AS(run_experiment(spec_for("pendulum", {MethodId::Classical}, {10})), ConfigurationError);
    CHECK_THROWS_AS(run_experiment(spec_for("rational", {MethodId::PLPrime}, {10})), ConfigurationError);
    auto s = spec_for("linear", {MethodId::Classical}, {10});
    s.digits = 8;
    CHECK_THROWS_AS(run_experiment(s), ConfigurationError);
    s.digits = 30;
    s.omega = "ten";
    CHECK_THROWS_AS(run_experiment(s), ConfigurationError);
    CHECK_THROWS_AS(parse_format("xml"), ConfigurationError);
    CHECK_THROWS_AS(parse_result_csv("h,method\n1,2\n"), ConfigurationError);
    CHECK_THROWS_AS(parse_result_csv(std::string(kResultCsvHeader) + "\nabc,classical,1,1,\n"), ConfigurationError);
  }

  TEST_CASE("coefficient and stability sweeps") {
    const auto ctx = make_context(30);
    const auto one = linear_grid(ctx.parse("0.5"), ctx.real(2L), 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == ctx.parse("0.5"));
    CHECK_THROWS_AS(linear_grid(ctx.real(0L), ctx.real(1L), 0), ConfigurationError);

    const std::string a = sweep_coefficients(MethodId::PLPrime, {ctx.real(0L)}, ctx);
    const std::string b = sweep_coefficients(MethodId::Classical, {ctx.real(0L)}, ctx);
    CHECK(a == b);
    CHECK(a.rfind("v,beta10,beta11,beta20,beta21,beta30,beta31,status\n", 0) == 0);

    const auto grid = linear_grid(ctx.real(0L), ctx.real(4L), 9);
    const std::string st = sweep_stability(MethodId::Classical, grid, ctx);
    CHECK(count_lines(st) == 10);
    CHECK(st.find("outside") == std::string::npos);  // v^2 = 12.25 lies in the second band
    const std::string gap = sweep_stability(MethodId::Classical, {ctx.real(1L), ctx.parse("3.14")}, ctx);
    CHECK(gap.find(",ok\n") != std::string::npos);
    CHECK(gap.find(",outside\n") != std::string::npos);  // v^2 = 9.8596: between the first two exits
  }

  TEST_CASE("trajectory output") {
    const auto ctx = make_context(30);
    auto p = make_problem("linear", ctx);
    p.x_end = ctx.pi();
    auto cfg = make_config(MethodId::PLDoublePrime, ctx.pi() / 40L, ctx.real(10L), ctx);
    const std::string csv = trajectory_csv(p, cfg, ctx, 10);
    CHECK(count_lines(csv) == 1 + 5);  // header, n = 0, 10, 20, 30, 40
  }
}
