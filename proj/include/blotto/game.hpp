#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "blotto/measure.hpp"

namespace blotto {

/// A pure strategy: a nonnegative piecewise-constant bid function.
/// Discrete bids keep one piece per battlefield.
class Bid {
 public:
  Bid(Battleground ground, StepFunction values);

  static Bid constant(const Battleground& ground, double value);
  static Bid discrete(std::span<const double> weights);
  static Bid zero(const Battleground& ground) { return constant(ground, 0.0); }

  const Battleground& ground() const noexcept { return ground_; }
  const StepFunction& values() const noexcept { return values_; }

  double at(double x) const { return values_.at(ground_.clamp(x)); }

  /// Per-battlefield weights; empty for continuous grounds.
  std::vector<double> weights() const;

  /// Adjacent equal pieces merged (continuous grounds only).
  Bid canonical() const;

  Bid scaled(double factor) const;

  friend bool operator==(const Bid&, const Bid&) = default;

 private:
  Battleground ground_;
  StepFunction values_;
};

using BidProfile = std::vector<Bid>;

double bid_integral(const Bid& b, const Measure& m);

/// The game (k, Ω, ℝ₊, budgets, β, v). β is stored normalized to mass 1;
/// `budget_scale` is the original β mass, so a bid φ stated against the
/// original β corresponds to the internal bid budget_scale·φ.
class GameSpec {
 public:
  GameSpec(std::size_t k, std::vector<double> budgets, const Measure& beta, Measure value);

  std::size_t k() const noexcept { return k_; }
  const Battleground& ground() const noexcept { return beta_.ground(); }
  const std::vector<double>& budgets() const noexcept { return budgets_; }
  const Measure& beta() const noexcept { return beta_; }
  const Measure& value() const noexcept { return value_; }
  double upsilon() const noexcept { return upsilon_; }
  const DensityRatio& ratio() const noexcept { return ratio_; }
  double budget_scale() const noexcept { return budget_scale_; }
  bool symmetric() const noexcept;

  Bid from_original_units(const Bid& b) const { return b.scaled(budget_scale_); }
  Bid to_original_units(const Bid& b) const { return b.scaled(1.0 / budget_scale_); }

 private:
  std::size_t k_;
  std::vector<double> budgets_;
  Measure beta_;
  Measure value_;
  double upsilon_;
  DensityRatio ratio_;
  double budget_scale_;
};

inline constexpr double kBudgetSlack = 1e-9;

struct BudgetCheck {
  bool ok;
  double integral;
  double excess;  // integral - budget, positive on violation
};

BudgetCheck validate_bid(const Bid& b, const GameSpec& g, std::size_t player);

GameSpec interval_blotto(std::size_t k);
GameSpec discrete_blotto(std::size_t k, std::span<const double> values);
GameSpec circle_blotto(std::size_t k, double circumference = 1.0);

void require_profile(const BidProfile& p, const GameSpec& g);

}  // namespace blotto
