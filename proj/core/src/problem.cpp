#include "obrechkoff/problem.hpp"

#include <limits>

#include "obrechkoff/errors.hpp"

namespace obrechkoff {

int ProblemDef::max_order() const {
  if (jet) {
    return std::numeric_limits<int>::max();
  }
  // Even closures are mandatory; odd ones extend the chain only contiguously.
  if (!f3) {
    return 2;
  }
  if (!f5) {
    return 4;
  }
  return f7 ? 7 : 6;
}

std::vector<Real> ProblemDef::derivatives(const Real& x, const Real& y, const Real& yp, int order) const {
  if (order < 0) {
    throw ConfigurationError("negative derivative order requested");
  }
  if (order > max_order()) {
    throw ConfigurationError("problem '" + name + "' provides derivatives only through order " +
                             std::to_string(max_order()) + ", " + std::to_string(order) + " requested");
  }
  if (jet) {
    auto d = (*jet)(x, y, yp, order);
    d.resize(static_cast<std::size_t>(order) + 1);
    return d;
  }
  std::vector<Real> d{y, yp};
  const Closure* chain[] = {&f2, f3 ? &*f3 : nullptr, &f4, f5 ? &*f5 : nullptr, &f6, f7 ? &*f7 : nullptr};
  for (int k = 2; k <= order; ++k) {
    d.push_back((*chain[k - 2])(x, y, yp));
  }
  d.resize(static_cast<std::size_t>(order) + 1);
  return d;
}

}  // namespace obrechkoff
