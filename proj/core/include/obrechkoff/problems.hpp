#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "obrechkoff/context.hpp"
#include "obrechkoff/problem.hpp"

namespace obrechkoff {

/// Forced undamped Duffing equation
///   y'' = -y - y^3 + B cos(omega x),  B = 0.002, omega = 1.01,
///   y(0) = 0.200426728067, y'(0) = 0, x in [0, 40.5 pi / 1.01].
/// The reference is the four-term Fourier approximation
///   g(x) = sum_i K_{2i+1} cos((2i+1) omega x),
/// itself only accurate to a few times 1e-10.
ProblemDef duffing(const Context& ctx);

/// y'' = -100 y + 99 sin x, y(0) = 1, y'(0) = 11, x in [0, 10 pi];
/// y = sin x + sin 10x + cos 10x.
ProblemDef linear_forced(const Context& ctx);

/// y'' = 8 y^2 / (1 + 2x), y(0) = 1, y'(0) = -2, x in [0, 4.5]; y = 1/(1 + 2x).
/// No natural fitting frequency.
ProblemDef rational_problem(const Context& ctx);

/// "duffing", "linear", "rational". ConfigurationError for other names.
ProblemDef make_problem(std::string_view name, const Context& ctx);
std::vector<std::string> problem_names();

}  // namespace obrechkoff
