#include "obrechkoff/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "obrechkoff/errors.hpp"
#include "obrechkoff/problems.hpp"
#include "obrechkoff/stability.hpp"

namespace obrechkoff {

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5e", x);
  return buf;
}

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) {
    ++a;
  }
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) {
    --b;
  }
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) {
      return out;
    }
    start = pos + 1;
  }
}

Real parse_product(std::string_view text, const Context& ctx) {
  Real acc = ctx.real(1L);
  for (const auto& raw : split(text, '*')) {
    std::string f = trim(raw);
    if (f.empty()) {
      throw ConfigurationError("malformed span expression");
    }
    if (f.size() >= 2 && f.compare(f.size() - 2, 2, "pi") == 0) {
      f.resize(f.size() - 2);
      acc *= ctx.pi();
      if (f.empty()) {
        continue;
      }
    }
    try {
      acc *= ctx.parse(f);
    } catch (const std::invalid_argument&) {
      throw ConfigurationError("malformed span factor '" + f + "'");
    }
  }
  return acc;
}

const char* kSeparatorMd = "|";

}  // namespace

std::optional<Real> ResultRow::abs_end_error() const {
  if (failure || !y_end || !reference_end) {
    return std::nullopt;
  }
  return abs(*y_end - *reference_end);
}

bool ResultTable::any_failed() const {
  return std::any_of(rows.begin(), rows.end(), [](const ResultRow& r) { return r.failure.has_value(); });
}

Real parse_span(std::string_view text, const Context& ctx) {
  const auto parts = split(text, '/');
  Real value = parse_product(parts[0], ctx);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    value /= parse_product(parts[i], ctx);
  }
  if (!(value > 0) || !value.is_finite()) {
    throw ConfigurationError("span must be positive, got '" + std::string(text) + "'");
  }
  return value;
}

std::string default_span(std::string_view problem) {
  if (problem == "duffing") {
    return "40.5*pi/1.01";
  }
  if (problem == "linear") {
    return "pi";
  }
  if (problem == "rational") {
    return "4.5";
  }
  throw ConfigurationError("unknown problem '" + std::string(problem) + "'");
}

std::string default_span_label(std::string_view problem) {
  if (problem == "duffing") {
    return "M";
  }
  return default_span(problem);
}

void fill_observed_orders(std::vector<ResultRow>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].observed_order.reset();
    if (i == 0 || rows[i - 1].method != rows[i].method) {
      continue;
    }
    const auto e0 = rows[i - 1].abs_end_error();
    const auto e1 = rows[i].abs_end_error();
    if (!e0 || !e1 || !(*e0 > 0) || !(*e1 > 0)) {
      continue;
    }
    const double num = (log(*e0) - log(*e1)).to_double();
    const double den = (log(rows[i - 1].h) - log(rows[i].h)).to_double();
    if (den != 0.0) {
      rows[i].observed_order = num / den;
    }
  }
}

ResultTable run_experiment(const ExperimentSpec& spec) {
  if (spec.methods.empty()) {
    throw ConfigurationError("at least one method is required");
  }
  if (spec.divisors.empty()) {
    throw ConfigurationError("at least one step divisor is required");
  }
  for (std::size_t i = 0; i < spec.divisors.size(); ++i) {
    if (spec.divisors[i] <= 0 || (i > 0 && spec.divisors[i] <= spec.divisors[i - 1])) {
      throw ConfigurationError("divisors must be positive and strictly increasing");
    }
  }
  const Context probe(Precision{spec.digits});
  const ProblemDef probe_problem = make_problem(spec.problem, probe);
  const std::string span_text = spec.span.value_or(default_span(spec.problem));
  (void)parse_span(span_text, probe);
  const bool default_omega = !spec.omega || *spec.omega == "default";
  const bool needs_omega = std::any_of(spec.methods.begin(), spec.methods.end(),
                                       [](MethodId m) { return m != MethodId::Classical; });
  if (default_omega && needs_omega && !probe_problem.default_omega) {
    throw ConfigurationError("problem '" + spec.problem + "' has no natural frequency; pass --omega");
  }
  if (!default_omega) {
    try {
      (void)probe.parse(*spec.omega);
    } catch (const std::invalid_argument&) {
      throw ConfigurationError("malformed omega '" + *spec.omega + "'");
    }
  }

  ResultTable table;
  table.problem = spec.problem;
  table.span_text = span_text;
  table.span_label = spec.span ? span_text : default_span_label(spec.problem);

  std::vector<ResultRow> rows;
  for (MethodId m : spec.methods) {
    for (long d : spec.divisors) {
      ResultRow r;
      r.method = m;
      r.divisor = d;
      rows.push_back(std::move(r));
    }
  }

  const auto run_cell = [&](ResultRow& row) {
    const Context ctx(Precision{spec.digits});
    row.h = parse_span(span_text, ctx) / row.divisor;
    try {
      const ProblemDef problem = make_problem(spec.problem, ctx);
      Real omega = ctx.real(0L);
      if (!default_omega) {
        omega = ctx.parse(*spec.omega);
      } else if (problem.default_omega) {
        omega = *problem.default_omega;
      }
      StepperConfig cfg = make_config(row.method, row.h, omega, ctx);
      cfg.startup = spec.startup;
      cfg.derivative = spec.derivative;
      cfg.corrector = spec.corrector;
      cfg.max_iters = spec.max_iters;
      const IntegrationResult res = integrate(problem, cfg, ctx);
      row.y_end = res.y_end;
      row.reference_end = res.reference_end;
      row.wall_time_s = res.wall_time_s;
      row.total_iterations = res.total_iterations;
      row.max_iterations = res.max_iterations_per_step;
      row.warnings = res.warnings;
    } catch (const std::exception& e) {
      row.failure = e.what();
    }
  };

  unsigned workers = spec.workers != 0 ? spec.workers : std::max(1U, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(rows.size()));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) {
          run_cell(rows[i]);
        }
      });
    }
  }

  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    if (a.method != b.method) {
      return a.method < b.method;
    }
    return a.divisor < b.divisor;  // h descending
  });
  fill_observed_orders(rows);
  table.rows = std::move(rows);
  return table;
}

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") {
    return OutputFormat::Csv;
  }
  if (text == "markdown" || text == "md") {
    return OutputFormat::Markdown;
  }
  throw ConfigurationError("unknown format '" + std::string(text) + "'");
}

std::string emit(const ResultTable& table, OutputFormat format) {
  std::ostringstream out;
  if (format == OutputFormat::Csv) {
    out << kResultCsvHeader << '\n';
    for (const auto& r : table.rows) {
      const auto err = r.abs_end_error();
      out << r.h.to_string(6) << ',' << method_name(r.method) << ',' << (err ? err->to_string(6) : "failed") << ','
          << sci(r.wall_time_s) << ',' << (r.observed_order ? sci(*r.observed_order) : "") << '\n';
    }
    return out.str();
  }

  // Rows: step sizes; columns: methods.
  std::vector<MethodId> methods;
  std::vector<long> divisors;
  for (const auto& r : table.rows) {
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) {
      methods.push_back(r.method);
    }
    if (std::find(divisors.begin(), divisors.end(), r.divisor) == divisors.end()) {
      divisors.push_back(r.divisor);
    }
  }
  std::sort(divisors.begin(), divisors.end());
  out << "Problem: " << table.problem << ", end-point absolute error\n\n";
  out << kSeparatorMd << " h ";
  for (MethodId m : methods) {
    out << kSeparatorMd << ' ' << method_name(m) << ' ';
  }
  out << kSeparatorMd << '\n' << kSeparatorMd << "---";
  for (std::size_t i = 0; i < methods.size(); ++i) {
    out << kSeparatorMd << "---";
  }
  out << kSeparatorMd << '\n';
  for (long d : divisors) {
    out << kSeparatorMd << ' ' << table.span_label << '/' << d << ' ';
    for (MethodId m : methods) {
      const auto it = std::find_if(table.rows.begin(), table.rows.end(),
                                   [&](const ResultRow& r) { return r.method == m && r.divisor == d; });
      std::string cell = "-";
      if (it != table.rows.end()) {
        const auto err = it->abs_end_error();
        cell = err ? err->to_string(6) : "failed";
      }
      out << kSeparatorMd << ' ' << cell << ' ';
    }
    out << kSeparatorMd << '\n';
  }
  if (table.span_label != table.span_text) {
    out << '\n' << table.span_label << " = " << table.span_text << '\n';
  }
  return out.str();
}

std::vector<CsvResultRow> parse_result_csv(std::string_view text) {
  std::vector<CsvResultRow> rows;
  const auto lines = split(text, '\n');
  if (lines.empty() || trim(lines[0]) != kResultCsvHeader) {
    throw ConfigurationError("missing result CSV header");
  }
  const auto number = [](const std::string& s) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) {
      throw ConfigurationError("malformed number '" + s + "' in result CSV");
    }
    return x;
  };
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string line = trim(lines[i]);
    if (line.empty()) {
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 5) {
      throw ConfigurationError("result CSV line " + std::to_string(i + 1) + " has " + std::to_string(f.size()) +
                               " fields");
    }
    CsvResultRow r;
    r.h = number(f[0]);
    r.method = f[1];
    if (f[2] == "failed") {
      r.failed = true;
    } else {
      r.abs_end_error = number(f[2]);
    }
    r.wall_time_s = number(f[3]);
    if (!f[4].empty()) {
      r.observed_order = number(f[4]);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string sweep_coefficients(MethodId method, const std::vector<Real>& v_grid, const Context& ctx) {
  std::ostringstream out;
  out << "v";
  for (auto name : kCoefficientNames) {
    out << ',' << name;
  }
  out << ",status\n";
  for (const auto& v : v_grid) {
    out << v.to_string(12);
    try {
      const auto c = coefficients(method, v, ctx).as_array();
      for (const auto& b : c) {
        out << ',' << b.to_string(20);
      }
      out << ",ok\n";
    } catch (const SingularParameterError&) {
      out << ",,,,,,,singular\n";
    }
  }
  return out.str();
}

std::string sweep_stability(MethodId method, const std::vector<Real>& v_grid, const Context& ctx) {
  std::ostringstream out;
  out << "v,A,B,B_over_A,phase_lag,status\n";
  for (const auto& v : v_grid) {
    out << v.to_string(12);
    try {
      const auto c = coefficients(method, v, ctx);
      const auto sp = stability_pair(c, v);
      out << ',' << sp.A.to_string(20) << ',' << sp.B.to_string(20) << ',' << (sp.B / sp.A).to_string(20);
      try {
        out << ',' << phase_lag(method, v, ctx).to_string(12) << ",ok\n";
      } catch (const OutsidePeriodicityError&) {
        out << ",,outside\n";
      }
    } catch (const SingularParameterError&) {
      out << ",,,,,singular\n";
    }
  }
  return out.str();
}

std::string trajectory_csv(const ProblemDef& problem, const StepperConfig& config, const Context& ctx, long every) {
  std::ostringstream out;
  out << "x,y,y_reference,abs_error\n";
  integrate(
      problem, config, ctx,
      [&](long, const Real& x, const Real& y, const Real&) {
        out << x.to_string(16) << ',' << y.to_string(20);
        if (problem.reference) {
          const Real ref = (*problem.reference)(x);
          out << ',' << ref.to_string(20) << ',' << abs(y - ref).to_string(6);
        } else {
          out << ",,";
        }
        out << '\n';
      },
      every);
  return out.str();
}

std::vector<Real> linear_grid(const Real& lo, const Real& hi, long n) {
  if (n < 1) {
    throw ConfigurationError("grid needs at least one point");
  }
  std::vector<Real> g;
  for (long i = 0; i < n; ++i) {
    g.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  }
  return g;
}

}  // namespace obrechkoff
