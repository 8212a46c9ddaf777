#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "blotto/game.hpp"
#include "blotto/random.hpp"

namespace blotto::testing {

// Step function on [0, len) with up to `max_pieces` pieces and values drawn
// uniformly from [lo, hi).
inline StepFunction random_step(RngStream& rng, double len, std::size_t max_pieces, double lo, double hi) {
  const std::size_t pieces = 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(max_pieces));
  std::set<double> cuts;
  while (cuts.size() + 1 < pieces) cuts.insert(rng.uniform() * len);
  StepFunction f;
  f.breaks.push_back(0.0);
  f.breaks.insert(f.breaks.end(), cuts.begin(), cuts.end());
  f.breaks.push_back(len);
  for (std::size_t i = 0; i + 1 < f.breaks.size(); ++i) f.values.push_back(lo + (hi - lo) * rng.uniform());
  return f;
}

// Random bid on the game's ground; values up to `cap`, budget ignored.
inline Bid random_bid(const GameSpec& g, RngStream& rng, double cap) {
  const auto& ground = g.ground();
  if (ground.is_discrete()) {
    std::vector<double> w(ground.battlefields());
    for (double& x : w) x = rng.uniform() < 0.2 ? 0.0 : cap * rng.uniform();
    return Bid::discrete(w);
  }
  return Bid(ground, random_step(rng, ground.length(), 6, 0.0, cap));
}

// Midpoint-rule value of ∫ f over [lo, hi) on a fine uniform grid, for
// cross-checking exact piecewise integrals.
template <class F>
double grid_integral(F&& f, double lo, double hi, std::size_t cells) {
  const double h = (hi - lo) / static_cast<double>(cells);
  double total = 0.0;
  for (std::size_t i = 0; i < cells; ++i) total += f(lo + (static_cast<double>(i) + 0.5) * h);
  return total * h;
}

}  // namespace blotto::testing
