#include "blotto/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "blotto/error.hpp"

namespace blotto {

StepFunction::StepFunction(std::vector<double> breaks_in, std::vector<double> values_in)
    : breaks(std::move(breaks_in)), values(std::move(values_in)) {
  check_shape();
}

StepFunction StepFunction::constant(double lo, double hi, double value) {
  return StepFunction({lo, hi}, {value});
}

void StepFunction::check_shape() const {
  if (values.empty() || breaks.size() != values.size() + 1) {
    fail(ErrorKind::InvalidArgument,
         "step function needs n+1 breakpoints for n pieces (got " + std::to_string(breaks.size()) +
             " breakpoints, " + std::to_string(values.size()) + " values)");
  }
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i] < breaks[i + 1]) || !std::isfinite(breaks[i + 1])) {
      fail(ErrorKind::InvalidArgument, "breakpoints must be finite and strictly increasing");
    }
  }
  for (double v : values) {
    if (!std::isfinite(v)) fail(ErrorKind::InvalidArgument, "step values must be finite");
  }
}

std::size_t StepFunction::piece_index(double x) const {
  if (x <= breaks.front()) return 0;
  if (x >= breaks.back()) return values.size() - 1;
  auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
  return static_cast<std::size_t>(it - breaks.begin()) - 1;
}

double StepFunction::integral() const noexcept {
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) total += values[i] * length(i);
  return total;
}

StepFunction StepFunction::merged() const {
  StepFunction out;
  out.breaks.reserve(breaks.size());
  out.values.reserve(values.size());
  out.breaks.push_back(breaks.front());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!out.values.empty() && out.values.back() == values[i]) {
      out.breaks.back() = breaks[i + 1];
    } else {
      out.values.push_back(values[i]);
      out.breaks.push_back(breaks[i + 1]);
    }
  }
  return out;
}

double product_integral(const StepFunction& a, const StepFunction& b) {
  double total = 0.0;
  sweep2(a, b, [&](double lo, double hi, double va, double vb) { total += va * vb * (hi - lo); });
  return total;
}

}  // namespace blotto
