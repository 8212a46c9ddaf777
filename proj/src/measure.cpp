#include "blotto/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "blotto/error.hpp"

namespace blotto {

Battleground Battleground::discrete(std::size_t n) {
  if (n < 1) fail(ErrorKind::ValidationError, "discrete battleground needs at least one battlefield");
  return Battleground(GroundKind::Discrete, n, static_cast<double>(n));
}

Battleground Battleground::circle(double circumference) {
  if (!(circumference > 0.0) || !std::isfinite(circumference)) {
    fail(ErrorKind::ValidationError, "circle circumference must be a positive finite number");
  }
  return Battleground(GroundKind::Circle, 0, circumference);
}

double Battleground::clamp(double x) const noexcept { return std::clamp(x, 0.0, length_); }

void require_same_ground(const Battleground& a, const Battleground& b, const char* what) {
  if (!(a == b)) fail(ErrorKind::SpaceMismatch, std::string(what) + ": operands live on different battlegrounds");
}

namespace {

std::vector<double> unit_breaks(std::size_t n) {
  std::vector<double> b(n + 1);
  std::iota(b.begin(), b.end(), 0.0);
  return b;
}

}  // namespace

Measure::Measure(Battleground ground, std::vector<double> breakpoints, std::vector<double> densities)
    : ground_(ground) {
  if (densities.empty() || breakpoints.size() != densities.size() + 1) {
    fail(ErrorKind::ValidationError, "measure needs one more breakpoint than densities");
  }
  density_.breaks = std::move(breakpoints);
  density_.values = std::move(densities);
  validate();
}

Measure::Measure(Battleground ground, StepFunction density) : ground_(ground), density_(std::move(density)) {
  validate();
}

void Measure::validate() {
  auto& b = density_.breaks;
  const double len = ground_.length();
  if (b.front() != 0.0) fail(ErrorKind::ValidationError, "first breakpoint must be 0");
  if (std::abs(b.back() - len) > 1e-12 * len) {
    fail(ErrorKind::ValidationError, "last breakpoint must equal the battleground length");
  }
  b.back() = len;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    if (!(b[i] < b[i + 1])) fail(ErrorKind::ValidationError, "breakpoints must be strictly increasing");
  }
  if (ground_.is_discrete() && b != unit_breaks(ground_.battlefields())) {
    fail(ErrorKind::ValidationError, "discrete measures carry exactly one weight per battlefield");
  }
  for (double d : density_.values) {
    if (!std::isfinite(d)) fail(ErrorKind::ValidationError, "densities must be finite (total mass must be bounded)");
    if (!(d > 0.0)) {
      fail(ErrorKind::ValidationError,
           "densities/weights must be strictly positive (budget and value measures must be mutually absolutely "
           "continuous)");
    }
  }
}

Measure Measure::lebesgue(Battleground ground, double density) {
  if (ground.is_discrete()) {
    std::vector<double> w(ground.battlefields(), density);
    return Measure(ground, unit_breaks(ground.battlefields()), std::move(w));
  }
  return Measure(ground, {0.0, ground.length()}, {density});
}

Measure Measure::weights(std::span<const double> weights) {
  if (weights.empty()) fail(ErrorKind::EmptyValues, "discrete measure needs at least one weight");
  return Measure(Battleground::discrete(weights.size()), unit_breaks(weights.size()),
                 std::vector<double>(weights.begin(), weights.end()));
}

std::vector<double> Measure::weights() const {
  if (!ground_.is_discrete()) return {};
  return density_.values;
}

double Measure::mass(double lo, double hi) const {
  lo = ground_.clamp(lo);
  hi = ground_.clamp(hi);
  if (!(lo < hi)) return 0.0;
  double total = 0.0;
  for (std::size_t i = density_.piece_index(lo); i < density_.pieces(); ++i) {
    const double a = std::max(lo, density_.breaks[i]);
    const double b = std::min(hi, density_.breaks[i + 1]);
    if (a >= hi) break;
    if (b > a) total += density_.values[i] * (b - a);
  }
  return total;
}

double Measure::quantile(double target) const {
  if (target <= 0.0) return 0.0;
  double cum = 0.0;
  for (std::size_t i = 0; i < density_.pieces(); ++i) {
    const double piece = density_.values[i] * density_.length(i);
    if (cum + piece >= target) {
      return std::min(density_.breaks[i] + (target - cum) / density_.values[i], density_.breaks[i + 1]);
    }
    cum += piece;
  }
  return ground_.length();
}

Measure Measure::scaled(double factor) const {
  StepFunction d = density_;
  for (double& v : d.values) v *= factor;
  return Measure(ground_, std::move(d));
}

double total_mass(const Measure& m) { return m.density().integral(); }

DensityRatio density_ratio(const Measure& v, const Measure& beta) {
  require_same_ground(v.ground(), beta.ground(), "density_ratio");
  StepFunction out;
  out.breaks.push_back(0.0);
  sweep2(v.density(), beta.density(), [&](double, double hi, double dv, double db) {
    out.breaks.push_back(hi);
    out.values.push_back(dv / db);
  });
  return DensityRatio{v.ground(), std::move(out)};
}

NormalizedMeasure normalize_budget(const Measure& beta) {
  const double scale = total_mass(beta);
  if (scale == 1.0) return {beta, 1.0};
  return {beta.scaled(1.0 / scale), scale};
}

}  // namespace blotto
