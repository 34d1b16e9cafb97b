#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace netnorm {

/// Invalid argument values (negative tolerances, unsupported exponents, ...).
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Input objects that violate the hypotheses of the estimators.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The requested net does not fit in the enumeration budget.
struct BudgetExceeded : std::runtime_error {
  BudgetExceeded(std::uint64_t count, int affordable_k, double attained_delta)
      : std::runtime_error("net size " + std::to_string(count) + " exceeds budget; largest affordable k = " +
                           std::to_string(affordable_k)),
        count(count),
        affordable_k(affordable_k),
        attained_delta(attained_delta) {}
  std::uint64_t count;
  int affordable_k;
  double attained_delta;  // NaN when the caller supplied no delta(k) map
};

/// Sample-and-verify sparsification ran out of retries.
struct SparsificationFailed : std::runtime_error {
  SparsificationFailed(const std::string& what, double dev_a, double dev_b)
      : std::runtime_error(what), deviation_a(dev_a), deviation_b(dev_b) {}
  double deviation_a;
  double deviation_b;
};

}  // namespace netnorm
