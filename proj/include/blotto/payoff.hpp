#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "blotto/equilibrium.hpp"
#include "blotto/game.hpp"
#include "blotto/random.hpp"

namespace blotto {

struct PayoffVector {
  std::vector<double> utilities;
  double upsilon = 0.0;

  double total() const noexcept;
};

/// A mixed strategy: draws one bid per call from the stream it is handed.
struct StrategySource {
  std::function<Bid(RngStream&)> draw;
  std::string label;
  bool deterministic = false;
  bool fair = false;

  Bid operator()(RngStream& rng) const { return draw(rng); }

  static StrategySource fixed(Bid bid, std::string label = "fixed");
  static StrategySource constant(const Battleground& ground, double c);
  static StrategySource equilibrium(const GameSpec& g, const EquipartitionMap& pi);
  static StrategySource equilibrium(std::shared_ptr<const EquilibriumSampler> sampler);
  /// Finite mixture; weights need not be normalized.
  static StrategySource finite(std::vector<std::pair<Bid, double>> support, std::string label = "finite");
};

/// Utilities over the common refinement of all bids. Ties are exact
/// floating-point equality and split the piece's value evenly.
PayoffVector exact_utilities(const BidProfile& p, const GameSpec& g);

/// Utility of a single player; same rules as exact_utilities.
double exact_utility(const BidProfile& p, const GameSpec& g, std::size_t player);

struct MonteCarloEstimate {
  std::vector<double> mean;
  std::vector<double> std_error;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

struct McOptions {
  std::size_t workers = 1;
};

/// Draw d of player i uses rng.split(d).split(i), so the estimate is a
/// function of (seed, stream, n) alone, whatever the worker count.
MonteCarloEstimate monte_carlo_utilities(const std::vector<StrategySource>& sources, const GameSpec& g,
                                         std::size_t n, const RngStream& rng, McOptions opts = {});

/// Expected utility of the deterministic bid ψ against k-1 opponents playing
/// the equilibrium marginals: ∫ min(1, ψ·(Υ/k)·dβ/dv) dv.
double deviation_payoff_oracle(const Bid& psi, const GameSpec& g);

/// Sample mean and standard error of a stream of observations.
struct RunningStats {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) noexcept;
  double variance() const noexcept { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
  double std_error() const noexcept;
};

}  // namespace blotto
