#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "blotto/step_function.hpp"

namespace blotto {

enum class GroundKind { Interval01, Discrete, Circle };

/// The space players bid over. Every kind is parameterized by [0, length()):
/// the unit interval, n unit cells [j, j+1) for battlefield j, or a circle of
/// the given circumference cut open at 0.
class Battleground {
 public:
  static Battleground interval01() { return Battleground(GroundKind::Interval01, 0, 1.0); }
  static Battleground discrete(std::size_t n);
  static Battleground circle(double circumference);

  GroundKind kind() const noexcept { return kind_; }
  bool is_discrete() const noexcept { return kind_ == GroundKind::Discrete; }
  std::size_t battlefields() const noexcept { return n_; }
  double length() const noexcept { return length_; }

  /// Maps a point to the parameter domain. For discrete grounds a point is a
  /// battlefield index; anything in [j, j+1) means battlefield j.
  double clamp(double x) const noexcept;

  friend bool operator==(const Battleground&, const Battleground&) = default;

 private:
  Battleground(GroundKind kind, std::size_t n, double length) : kind_(kind), n_(n), length_(length) {}

  GroundKind kind_;
  std::size_t n_;
  double length_;
};

/// Finite measure with a piecewise-constant density against Lebesgue measure
/// on the parameter domain. Discrete weights are densities on unit cells.
class Measure {
 public:
  Measure(Battleground ground, std::vector<double> breakpoints, std::vector<double> densities);
  Measure(Battleground ground, StepFunction density);

  static Measure lebesgue(Battleground ground, double density = 1.0);
  static Measure weights(std::span<const double> weights);

  const Battleground& ground() const noexcept { return ground_; }
  const StepFunction& density() const noexcept { return density_; }

  /// Discrete weights; empty for continuous grounds.
  std::vector<double> weights() const;

  /// Mass of [lo, hi) in the parameter domain.
  double mass(double lo, double hi) const;

  /// Smallest x with mass([0, x)) = target; target is clamped to [0, total].
  double quantile(double target) const;

  Measure scaled(double factor) const;

  friend bool operator==(const Measure&, const Measure&) = default;

 private:
  void validate();

  Battleground ground_;
  StepFunction density_;
};

/// dv/dβ stored on the common refinement of both measures' pieces.
struct DensityRatio {
  Battleground ground;
  StepFunction values;

  double at(double x) const { return values.at(ground.clamp(x)); }
};

double total_mass(const Measure& m);

DensityRatio density_ratio(const Measure& v, const Measure& beta);

struct NormalizedMeasure {
  Measure measure;
  double scale;
};

NormalizedMeasure normalize_budget(const Measure& beta);

void require_same_ground(const Battleground& a, const Battleground& b, const char* what);

}  // namespace blotto
