#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "obrechkoff/coefficients.hpp"
#include "obrechkoff/context.hpp"
#include "obrechkoff/integrator.hpp"
#include "obrechkoff/real.hpp"

namespace obrechkoff {

/// A method x step-size matrix on one problem; h = span / divisor.
struct ExperimentSpec {
  std::string problem;
  std::vector<MethodId> methods;
  std::vector<long> divisors;
  std::optional<std::string> span;   // expression, see parse_span; default per problem
  std::optional<std::string> omega;  // decimal or "default"
  int digits = Precision::kDefaultDigits;
  StartupMode startup = StartupMode::Exact;
  DerivativePolicy derivative = DerivativePolicy::Hermite;
  CorrectorKind corrector = CorrectorKind::Newton;
  int max_iters = 8;
  unsigned workers = 0;  // 0: one per hardware thread
};

struct ResultRow {
  MethodId method = MethodId::Classical;
  long divisor = 0;
  Real h;
  std::optional<Real> y_end;
  std::optional<Real> reference_end;
  double wall_time_s = 0.0;
  std::optional<double> observed_order;
  std::optional<std::string> failure;
  long total_iterations = 0;
  int max_iterations = 0;
  std::vector<std::string> warnings;

  /// |y_end - reference_end|, recomputed on every call.
  [[nodiscard]] std::optional<Real> abs_end_error() const;
};

struct ResultTable {
  std::string problem;
  std::string span_label;  // e.g. "M" in "M/500"
  std::string span_text;   // the span expression
  std::vector<ResultRow> rows;  // sorted by (method, h descending)

  [[nodiscard]] bool any_failed() const;
};

/// "4.5", "pi", "10pi", "10*pi", "40.5*pi/1.01": products and quotients of
/// decimal numbers and pi. ConfigurationError on anything else.
Real parse_span(std::string_view text, const Context& ctx);

/// Default step unit per problem: duffing 40.5*pi/1.01 ("M"),
/// linear pi, rational 4.5.
std::string default_span(std::string_view problem);
std::string default_span_label(std::string_view problem);

/// Runs every cell (parallel, each with its own context). Cell failures are
/// recorded in-row. ConfigurationError for an invalid spec.
ResultTable run_experiment(const ExperimentSpec& spec);

/// log(e_{i-1}/e_i) / log(h_{i-1}/h_i) between consecutive rows of one method.
void fill_observed_orders(std::vector<ResultRow>& rows);

enum class OutputFormat { Csv, Markdown };
OutputFormat parse_format(std::string_view text);

inline constexpr std::string_view kResultCsvHeader = "h,method,abs_end_error,wall_time_s,observed_order";

std::string emit(const ResultTable& table, OutputFormat format);

/// One parsed line of emit(..., Csv).
struct CsvResultRow {
  double h = 0.0;
  std::string method;
  std::optional<double> abs_end_error;  // absent when the cell failed
  bool failed = false;
  double wall_time_s = 0.0;
  std::optional<double> observed_order;
};

/// ConfigurationError on a malformed document.
std::vector<CsvResultRow> parse_result_csv(std::string_view text);

/// v,beta10,...,beta31,status  (status: ok | singular)
std::string sweep_coefficients(MethodId method, const std::vector<Real>& v_grid, const Context& ctx);
/// v,A,B,B_over_A,phase_lag,status  (status: ok | outside | singular)
std::string sweep_stability(MethodId method, const std::vector<Real>& v_grid, const Context& ctx);

/// x,y,y_reference,abs_error every `every` steps.
std::string trajectory_csv(const ProblemDef& problem, const StepperConfig& config, const Context& ctx, long every);

/// n points from lo to hi inclusive (n >= 1; n == 1 gives {lo}).
std::vector<Real> linear_grid(const Real& lo, const Real& hi, long n);

}  // namespace obrechkoff
