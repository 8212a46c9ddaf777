#include "blotto/game.hpp"

#include <cmath>
#include <string>

#include "blotto/error.hpp"

namespace blotto {

Bid::Bid(Battleground ground, StepFunction values) : ground_(ground), values_(std::move(values)) {
  values_.check_shape();
  const double len = ground_.length();
  if (values_.lo() != 0.0 || std::abs(values_.hi() - len) > 1e-12 * len) {
    fail(ErrorKind::SpaceMismatch, "bid must cover exactly the battleground's parameter domain");
  }
  values_.breaks.back() = len;
  for (double v : values_.values) {
    if (!(v >= 0.0)) fail(ErrorKind::ValidationError, "bid values must be nonnegative");
  }
  if (ground_.is_discrete()) {
    const auto n = ground_.battlefields();
    if (values_.pieces() != n) fail(ErrorKind::ValidationError, "discrete bid needs one weight per battlefield");
    for (std::size_t j = 0; j <= n; ++j) {
      if (values_.breaks[j] != static_cast<double>(j)) {
        fail(ErrorKind::ValidationError, "discrete bid pieces must align with battlefields");
      }
    }
  }
}

Bid Bid::constant(const Battleground& ground, double value) {
  if (ground.is_discrete()) {
    std::vector<double> w(ground.battlefields(), value);
    return discrete(w);
  }
  return Bid(ground, StepFunction::constant(0.0, ground.length(), value));
}

Bid Bid::discrete(std::span<const double> weights) {
  if (weights.empty()) fail(ErrorKind::EmptyValues, "discrete bid needs at least one weight");
  std::vector<double> b(weights.size() + 1);
  for (std::size_t j = 0; j < b.size(); ++j) b[j] = static_cast<double>(j);
  return Bid(Battleground::discrete(weights.size()),
             StepFunction(std::move(b), std::vector<double>(weights.begin(), weights.end())));
}

std::vector<double> Bid::weights() const {
  if (!ground_.is_discrete()) return {};
  return values_.values;
}

Bid Bid::canonical() const {
  if (ground_.is_discrete()) return *this;
  return Bid(ground_, values_.merged());
}

Bid Bid::scaled(double factor) const {
  if (factor == 1.0) return *this;
  StepFunction v = values_;
  for (double& x : v.values) x *= factor;
  return Bid(ground_, std::move(v));
}

double bid_integral(const Bid& b, const Measure& m) {
  require_same_ground(b.ground(), m.ground(), "bid_integral");
  return product_integral(b.values(), m.density());
}

GameSpec::GameSpec(std::size_t k, std::vector<double> budgets, const Measure& beta, Measure value)
    : k_(k),
      budgets_(std::move(budgets)),
      beta_(normalize_budget(beta).measure),
      value_(std::move(value)),
      upsilon_(total_mass(value_)),
      ratio_(density_ratio(value_, beta_)),
      budget_scale_(total_mass(beta)) {
  if (k_ < 1) fail(ErrorKind::ValidationError, "player count k must be at least 1");
  if (budgets_.size() != k_) {
    fail(ErrorKind::ValidationError,
         "budgets must list one entry per player (k=" + std::to_string(k_) + ", got " +
             std::to_string(budgets_.size()) + ")");
  }
  for (double b : budgets_) {
    if (!(b > 0.0) || !std::isfinite(b)) fail(ErrorKind::ValidationError, "budgets must be positive and finite");
  }
  require_same_ground(beta_.ground(), value_.ground(), "GameSpec");
}

bool GameSpec::symmetric() const noexcept {
  for (double b : budgets_) {
    if (b != 1.0) return false;
  }
  return true;
}

BudgetCheck validate_bid(const Bid& b, const GameSpec& g, std::size_t player) {
  if (player >= g.k()) fail(ErrorKind::InvalidArgument, "player index out of range");
  const double integral = bid_integral(b, g.beta());
  const double excess = integral - g.budgets()[player];
  return {excess <= kBudgetSlack, integral, excess};
}

GameSpec interval_blotto(std::size_t k) {
  const auto ground = Battleground::interval01();
  return GameSpec(k, std::vector<double>(k, 1.0), Measure::lebesgue(ground), Measure::lebesgue(ground));
}

GameSpec discrete_blotto(std::size_t k, std::span<const double> values) {
  if (values.empty()) fail(ErrorKind::EmptyValues, "discrete Blotto needs at least one battlefield value");
  const auto counting = Measure::lebesgue(Battleground::discrete(values.size()));
  return GameSpec(k, std::vector<double>(k, 1.0), counting, Measure::weights(values));
}

GameSpec circle_blotto(std::size_t k, double circumference) {
  const auto ground = Battleground::circle(circumference);
  return GameSpec(k, std::vector<double>(k, 1.0), Measure::lebesgue(ground), Measure::lebesgue(ground));
}

void require_profile(const BidProfile& p, const GameSpec& g) {
  if (p.size() != g.k()) {
    fail(ErrorKind::ProfileLengthMismatch,
         "profile has " + std::to_string(p.size()) + " bids for a " + std::to_string(g.k()) + "-player game");
  }
  for (const auto& b : p) require_same_ground(b.ground(), g.ground(), "bid profile");
}

}  // namespace blotto
