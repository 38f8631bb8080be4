// obrechkoff-bench: error tables, coefficient / stability sweeps and
// periodicity scans for the two-step Obrechkoff methods.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "obrechkoff/experiment.hpp"
#include "obrechkoff/problems.hpp"
#include "obrechkoff/stability.hpp"

namespace ob = obrechkoff;

namespace {

int write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream f(path);
  if (!f) {
    std::cerr << "error: cannot open " << path << " for writing\n";
    return 2;
  }
  f << text;
  return f ? 0 : 2;
}

std::vector<ob::MethodId> methods_from(const std::vector<std::string>& names) {
  std::vector<ob::MethodId> out;
  for (const auto& n : names) {
    out.push_back(ob::parse_method(n));
  }
  if (out.empty()) {
    out.assign(ob::kAllMethods.begin(), ob::kAllMethods.end());
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-step Obrechkoff methods: benchmarks and stability analysis"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "method x step-size error table");
  std::string problem;
  std::vector<std::string> method_names;
  std::vector<long> divisors;
  std::string span;
  std::string omega = "default";
  int digits = ob::Precision::kDefaultDigits;
  std::string startup = "exact";
  std::string derivative = "hermite";
  std::string corrector = "newton";
  int max_iters = 8;
  unsigned workers = 0;
  std::string format = "csv";
  std::string out;
  run->add_option("--problem", problem, "duffing | linear | rational")->required();
  run->add_option("--method", method_names, "classical | plprime | pldoubleprime (repeatable; default all)");
  run->add_option("--divisors", divisors, "h = span / divisor, increasing")->delimiter(',')->required();
  run->add_option("--span", span, "span expression, e.g. 40.5*pi/1.01 (default per problem)");
  run->add_option("--omega", omega, "fitting frequency or 'default'");
  run->add_option("--digits", digits, "working precision in decimal digits")->check(CLI::Range(16, 100000));
  run->add_option("--startup", startup, "exact | taylor");
  run->add_option("--derivative", derivative, "y' policy: hermite | symmetric | exact");
  run->add_option("--corrector", corrector, "newton | fixed-point");
  run->add_option("--max-iters", max_iters, "corrector iterations per step")->check(CLI::PositiveNumber);
  run->add_option("--workers", workers, "parallel cells (0: hardware threads)");
  run->add_option("--format", format, "csv | markdown");
  run->add_option("--out", out, "output file (default stdout)");

  // coefficients / stability sweeps
  std::string sweep_method = "pldoubleprime";
  std::string v_min = "0";
  std::string v_max = "5";
  long points = 101;
  auto* coef = app.add_subcommand("coefficients", "coefficient values over a v grid (CSV)");
  auto* stab = app.add_subcommand("stability", "A, B, B/A and phase lag over a v grid (CSV)");
  for (auto* sc : {coef, stab}) {
    sc->add_option("--method", sweep_method, "classical | plprime | pldoubleprime");
    sc->add_option("--v-min", v_min, "first grid point");
    sc->add_option("--v-max", v_max, "last grid point");
    sc->add_option("--points", points, "number of grid points")->check(CLI::PositiveNumber);
    sc->add_option("--digits", digits, "working precision in decimal digits")->check(CLI::Range(16, 100000));
    sc->add_option("--out", out, "output file (default stdout)");
  }

  // periodicity
  auto* per = app.add_subcommand("periodicity", "interval of periodicity (0, v0^2)");
  std::string scan_v_max = "40";
  per->add_option("--method", method_names, "repeatable; default all");
  per->add_option("--v-max", scan_v_max, "upper end of the scan in v");
  per->add_option("--digits", digits, "working precision in decimal digits")->check(CLI::Range(16, 100000));
  per->add_option("--out", out, "output file (default stdout)");

  // trajectory
  auto* traj = app.add_subcommand("trajectory", "x, y, reference, error every k-th step (CSV)");
  std::string traj_method = "pldoubleprime";
  long divisor = 500;
  long every = 1;
  traj->add_option("--problem", problem, "duffing | linear | rational")->required();
  traj->add_option("--method", traj_method, "classical | plprime | pldoubleprime");
  traj->add_option("--divisor", divisor, "h = span / divisor")->check(CLI::PositiveNumber);
  traj->add_option("--span", span, "span expression (default per problem)");
  traj->add_option("--omega", omega, "fitting frequency or 'default'");
  traj->add_option("--every", every, "output every k-th step")->check(CLI::PositiveNumber);
  traj->add_option("--digits", digits, "working precision in decimal digits")->check(CLI::Range(16, 100000));
  traj->add_option("--startup", startup, "exact | taylor");
  traj->add_option("--derivative", derivative, "y' policy: hermite | symmetric | exact");
  traj->add_option("--out", out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      ob::ExperimentSpec spec;
      spec.problem = problem;
      spec.methods = methods_from(method_names);
      spec.divisors = divisors;
      if (!span.empty()) {
        spec.span = span;
      }
      spec.omega = omega;
      spec.digits = digits;
      spec.startup = ob::parse_startup(startup);
      spec.derivative = ob::parse_policy(derivative);
      spec.corrector = ob::parse_corrector(corrector);
      spec.max_iters = max_iters;
      spec.workers = workers;
      const auto fmt = ob::parse_format(format);
      const auto table = ob::run_experiment(spec);
      for (const auto& r : table.rows) {
        if (r.failure) {
          std::cerr << "cell " << ob::method_name(r.method) << " h=" << table.span_label << '/' << r.divisor
                    << " failed: " << *r.failure << '\n';
        }
        for (const auto& w : r.warnings) {
          std::cerr << "warning: " << ob::method_name(r.method) << " h=" << table.span_label << '/' << r.divisor
                    << ": " << w << '\n';
        }
      }
      const int rc = write_out(out, ob::emit(table, fmt));
      return rc != 0 ? rc : (table.any_failed() ? 1 : 0);
    }

    const ob::Context ctx = ob::make_context(digits);
    if (coef->parsed() || stab->parsed()) {
      const auto grid = ob::linear_grid(ctx.parse(v_min), ctx.parse(v_max), points);
      const auto m = ob::parse_method(sweep_method);
      return write_out(out, coef->parsed() ? ob::sweep_coefficients(m, grid, ctx) : ob::sweep_stability(m, grid, ctx));
    }

    if (per->parsed()) {
      std::string text = "method,v0_squared,v0,termination\n";
      for (auto m : methods_from(method_names)) {
        const auto r = ob::periodicity_interval(m, ctx, ctx.parse(scan_v_max));
        text += std::string(ob::method_name(m)) + ',' + r.v0_squared.to_string(8) + ',' +
                ob::sqrt(r.v0_squared).to_string(8) + ',' + std::string(ob::termination_name(r.reason)) + '\n';
      }
      return write_out(out, text);
    }

    if (traj->parsed()) {
      const auto p = ob::make_problem(problem, ctx);
      const auto m = ob::parse_method(traj_method);
      const ob::Real h = ob::parse_span(span.empty() ? ob::default_span(problem) : span, ctx) / divisor;
      ob::Real w = ctx.real(0L);
      if (omega != "default") {
        w = ctx.parse(omega);
      } else if (p.default_omega) {
        w = *p.default_omega;
      } else if (m != ob::MethodId::Classical) {
        throw ob::ConfigurationError("problem '" + problem + "' has no natural frequency; pass --omega");
      }
      auto cfg = ob::make_config(m, h, w, ctx);
      cfg.startup = ob::parse_startup(startup);
      cfg.derivative = ob::parse_policy(derivative);
      return write_out(out, ob::trajectory_csv(p, cfg, ctx, every));
    }
  } catch (const ob::ConfigurationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
