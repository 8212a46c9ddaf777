#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace blotto {

/// Piecewise-constant function on [breaks.front(), breaks.back()].
/// Piece i covers [breaks[i], breaks[i+1]); the last piece also owns the
/// right endpoint.
struct StepFunction {
  std::vector<double> breaks;
  std::vector<double> values;

  StepFunction() = default;
  StepFunction(std::vector<double> breaks_in, std::vector<double> values_in);

  static StepFunction constant(double lo, double hi, double value);

  std::size_t pieces() const noexcept { return values.size(); }
  double lo() const noexcept { return breaks.front(); }
  double hi() const noexcept { return breaks.back(); }
  double length(std::size_t piece) const noexcept { return breaks[piece + 1] - breaks[piece]; }

  std::size_t piece_index(double x) const;
  double at(double x) const { return values[piece_index(x)]; }

  /// Integral against Lebesgue measure.
  double integral() const noexcept;

  /// Adjacent pieces with bitwise-equal values are fused.
  StepFunction merged() const;

  /// Throws InvalidArgument unless breaks are strictly increasing and sizes agree.
  void check_shape() const;

  friend bool operator==(const StepFunction&, const StepFunction&) = default;
};

/// Visits the common refinement of several step functions sharing one domain.
/// `visit(lo, hi, values)` receives each refined piece with the value of every
/// input on it, in input order.
template <class Visit>
void sweep(std::span<const StepFunction* const> fns, Visit&& visit) {
  if (fns.empty()) return;
  const std::size_t count = fns.size();
  std::vector<std::size_t> idx(count, 0);
  std::vector<double> vals(count);
  double x = fns.front()->lo();
  const double end = fns.front()->hi();
  while (x < end) {
    double next = end;
    for (std::size_t j = 0; j < count; ++j) {
      const double b = fns[j]->breaks[idx[j] + 1];
      if (b < next) next = b;
      vals[j] = fns[j]->values[idx[j]];
    }
    visit(x, next, std::span<const double>(vals));
    for (std::size_t j = 0; j < count; ++j) {
      while (idx[j] + 1 < fns[j]->pieces() && fns[j]->breaks[idx[j] + 1] <= next) ++idx[j];
    }
    x = next;
  }
}

template <class Visit>
void sweep2(const StepFunction& a, const StepFunction& b, Visit&& visit) {
  const StepFunction* fns[] = {&a, &b};
  sweep(std::span<const StepFunction* const>(fns),
        [&](double lo, double hi, std::span<const double> v) { visit(lo, hi, v[0], v[1]); });
}

/// Integral of the pointwise product of two step functions on a shared domain.
double product_integral(const StepFunction& a, const StepFunction& b);

}  // namespace blotto
