#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "blotto/game.hpp"
#include "blotto/random.hpp"

namespace blotto {

/// π : Ω → {0, ..., k-1}, stored as sorted disjoint [lo, hi) segments tagged
/// with their cell. Discrete grounds use one unit segment per battlefield.
class EquipartitionMap {
 public:
  struct Segment {
    double lo;
    double hi;
    std::size_t cell;
    friend bool operator==(const Segment&, const Segment&) = default;
  };

  EquipartitionMap(Battleground ground, std::size_t k, std::vector<Segment> segments);

  const Battleground& ground() const noexcept { return ground_; }
  std::size_t k() const noexcept { return k_; }
  const std::vector<Segment>& segments() const noexcept { return segments_; }

  std::size_t cell_of(double x) const;

  /// Value mass carried by each cell.
  std::vector<double> cell_masses(const Measure& value) const;

  /// Battlefield assignment (discrete grounds only).
  std::vector<std::size_t> assignment() const;

 private:
  Battleground ground_;
  std::size_t k_;
  std::vector<Segment> segments_;
};

EquipartitionMap equipartition_interval(std::size_t k);
EquipartitionMap equipartition_circle(std::size_t k, double circumference = 1.0);

/// Homogeneous values with n mod k = 0 use π(j) = (j mod k) + 1 (1-based j);
/// heterogeneous values go through an exact equal-value search.
EquipartitionMap equipartition_discrete(std::size_t n, std::size_t k, std::span<const double> values);

/// Cells between consecutive k-quantiles of a continuous value measure.
EquipartitionMap equipartition_value_quantiles(const Measure& value, std::size_t k);

/// Throws BadPartition unless every cell carries Υ/k of value, to 1e-12·Υ.
void check_equipartition(const EquipartitionMap& pi, const GameSpec& g);

/// Equilibrium sampler bound to one game and partition. The partition is
/// validated once at construction; each draw is O(k + pieces).
class EquilibriumSampler {
 public:
  EquilibriumSampler(const GameSpec& g, EquipartitionMap pi, std::optional<double> alpha_override = std::nullopt);

  Bid sample(RngStream& rng) const;

  /// The bid produced from a given Dirichlet draw.
  Bid bid_from_weights(std::span<const double> cell_weights) const;

  double alpha() const noexcept { return alpha_; }
  std::size_t k() const noexcept { return k_; }

 private:
  std::size_t k_;
  Battleground ground_;
  double alpha_;
  // Common refinement of the density ratio and the partition; each piece
  // carries (k/Υ)·dv/dβ and its cell.
  std::vector<double> breaks_;
  std::vector<double> scale_;
  std::vector<std::size_t> cell_;
};

Bid sample_equilibrium_bid(const GameSpec& g, const EquipartitionMap& pi, RngStream& rng);

/// Law of one equilibrium player's bid at a point: (k/Υ)·r·Beta(1/(k-1), 1).
struct EquilibriumMarginal {
  std::size_t k;
  double upsilon;
  double ratio;

  double support_top() const noexcept { return static_cast<double>(k) * ratio / upsilon; }
  double cdf(double t) const noexcept;
};

EquilibriumMarginal equilibrium_marginal(const GameSpec& g, double x);

double marginal_cdf(const GameSpec& g, double x, double t);

}  // namespace blotto
