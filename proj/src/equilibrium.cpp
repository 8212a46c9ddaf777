#include "blotto/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "blotto/error.hpp"

namespace blotto {

EquipartitionMap::EquipartitionMap(Battleground ground, std::size_t k, std::vector<Segment> segments)
    : ground_(ground), k_(k), segments_(std::move(segments)) {
  if (k_ < 1) fail(ErrorKind::InvalidArgument, "equipartition needs k >= 1");
  if (segments_.empty()) fail(ErrorKind::BadPartition, "equipartition has no segments");
  double at = 0.0;
  for (const auto& s : segments_) {
    if (s.lo != at || !(s.hi > s.lo)) fail(ErrorKind::BadPartition, "segments must tile the battleground in order");
    if (s.cell >= k_) fail(ErrorKind::BadPartition, "segment cell index out of range");
    if (ground_.is_discrete() && s.hi != s.lo + 1.0) {
      fail(ErrorKind::BadPartition, "discrete partitions assign whole battlefields");
    }
    at = s.hi;
  }
  if (std::abs(at - ground_.length()) > 1e-12 * ground_.length()) {
    fail(ErrorKind::BadPartition, "segments must cover the whole battleground");
  }
  segments_.back().hi = ground_.length();
}

std::size_t EquipartitionMap::cell_of(double x) const {
  x = ground_.clamp(x);
  auto it = std::upper_bound(segments_.begin(), segments_.end(), x,
                             [](double v, const Segment& s) { return v < s.hi; });
  if (it == segments_.end()) return segments_.back().cell;
  return it->cell;
}

std::vector<double> EquipartitionMap::cell_masses(const Measure& value) const {
  require_same_ground(ground_, value.ground(), "equipartition");
  std::vector<double> masses(k_, 0.0);
  const auto& d = value.density();
  std::size_t p = 0;
  for (const auto& s : segments_) {
    while (p + 1 < d.pieces() && d.breaks[p + 1] <= s.lo) ++p;
    for (std::size_t q = p; q < d.pieces() && d.breaks[q] < s.hi; ++q) {
      const double a = std::max(s.lo, d.breaks[q]);
      const double b = std::min(s.hi, d.breaks[q + 1]);
      if (b > a) masses[s.cell] += d.values[q] * (b - a);
    }
  }
  return masses;
}

std::vector<std::size_t> EquipartitionMap::assignment() const {
  if (!ground_.is_discrete()) return {};
  std::vector<std::size_t> out;
  out.reserve(segments_.size());
  for (const auto& s : segments_) out.push_back(s.cell);
  return out;
}

namespace {

std::vector<EquipartitionMap::Segment> equal_arcs(std::size_t k, double length) {
  std::vector<EquipartitionMap::Segment> segs(k);
  const double kd = static_cast<double>(k);
  for (std::size_t i = 0; i < k; ++i) {
    segs[i] = {length * static_cast<double>(i) / kd, length * static_cast<double>(i + 1) / kd, i};
  }
  segs.back().hi = length;
  return segs;
}

EquipartitionMap from_assignment(std::size_t k, const std::vector<std::size_t>& cells) {
  std::vector<EquipartitionMap::Segment> segs(cells.size());
  for (std::size_t j = 0; j < cells.size(); ++j) {
    segs[j] = {static_cast<double>(j), static_cast<double>(j + 1), cells[j]};
  }
  return EquipartitionMap(Battleground::discrete(cells.size()), k, std::move(segs));
}

// Exact equal-value bin filling by depth-first search over battlefields in
// decreasing value order. Cells with equal load are interchangeable, so only
// the first of them is tried.
class EqualValueSearch {
 public:
  EqualValueSearch(std::span<const double> values, std::size_t k)
      : values_(values.begin(), values.end()), k_(k), loads_(k, 0.0), cells_(values.size(), 0) {
    const double total = std::accumulate(values_.begin(), values_.end(), 0.0);
    target_ = total / static_cast<double>(k);
    tol_ = 1e-12 * total;
    order_.resize(values_.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return values_[a] > values_[b]; });
  }

  std::optional<std::vector<std::size_t>> run() {
    if (values_[order_.front()] > target_ + tol_) return std::nullopt;
    if (!place(0)) return std::nullopt;
    return cells_;
  }

 private:
  static constexpr std::size_t kNodeLimit = 20'000'000;

  bool place(std::size_t depth) {
    if (depth == order_.size()) {
      return std::all_of(loads_.begin(), loads_.end(), [&](double l) { return std::abs(l - target_) <= tol_; });
    }
    if (++nodes_ > kNodeLimit) return false;
    const std::size_t item = order_[depth];
    const double v = values_[item];
    for (std::size_t c = 0; c < k_; ++c) {
      bool seen = false;
      for (std::size_t d = 0; d < c; ++d) seen = seen || loads_[d] == loads_[c];
      if (seen) continue;
      if (loads_[c] + v > target_ + tol_) continue;
      loads_[c] += v;
      cells_[item] = c;
      if (place(depth + 1)) return true;
      loads_[c] -= v;
      if (loads_[c] == 0.0) break;
    }
    return false;
  }

  std::vector<double> values_;
  std::size_t k_;
  std::vector<double> loads_;
  std::vector<std::size_t> cells_;
  std::vector<std::size_t> order_;
  double target_ = 0.0;
  double tol_ = 0.0;
  std::size_t nodes_ = 0;
};

}  // namespace

EquipartitionMap equipartition_interval(std::size_t k) {
  if (k < 1) fail(ErrorKind::InvalidArgument, "equipartition needs k >= 1");
  return EquipartitionMap(Battleground::interval01(), k, equal_arcs(k, 1.0));
}

EquipartitionMap equipartition_circle(std::size_t k, double circumference) {
  if (k < 1) fail(ErrorKind::InvalidArgument, "equipartition needs k >= 1");
  const auto ground = Battleground::circle(circumference);
  return EquipartitionMap(ground, k, equal_arcs(k, ground.length()));
}

EquipartitionMap equipartition_discrete(std::size_t n, std::size_t k, std::span<const double> values) {
  if (k < 1) fail(ErrorKind::InvalidArgument, "equipartition needs k >= 1");
  if (values.size() != n) fail(ErrorKind::InvalidArgument, "need one value per battlefield");
  if (n == 0) fail(ErrorKind::EmptyValues, "no battlefields to partition");
  for (double v : values) {
    if (!(v > 0.0)) fail(ErrorKind::ValidationError, "battlefield values must be positive");
  }
  const bool homogeneous = std::all_of(values.begin(), values.end(), [&](double v) { return v == values[0]; });
  if (homogeneous) {
    if (n % k != 0) {
      fail(ErrorKind::NotEquipartitionable,
           std::to_string(n) + " equal battlefields cannot be split into " + std::to_string(k) + " equal parts");
    }
    std::vector<std::size_t> cells(n);
    for (std::size_t j = 0; j < n; ++j) cells[j] = (j + 1) % k;
    return from_assignment(k, cells);
  }
  auto found = EqualValueSearch(values, k).run();
  if (!found) {
    fail(ErrorKind::NotEquipartitionable, "no partition of the battlefields into " + std::to_string(k) +
                                              " cells of equal value was found");
  }
  return from_assignment(k, *found);
}

EquipartitionMap equipartition_value_quantiles(const Measure& value, std::size_t k) {
  if (k < 1) fail(ErrorKind::InvalidArgument, "equipartition needs k >= 1");
  if (value.ground().is_discrete()) {
    fail(ErrorKind::InvalidArgument, "quantile cells need a continuous battleground; use equipartition_discrete");
  }
  const double total = total_mass(value);
  std::vector<EquipartitionMap::Segment> segs(k);
  double lo = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double hi = i + 1 == k ? value.ground().length()
                                 : value.quantile(total * static_cast<double>(i + 1) / static_cast<double>(k));
    segs[i] = {lo, hi, i};
    lo = hi;
  }
  return EquipartitionMap(value.ground(), k, std::move(segs));
}

void check_equipartition(const EquipartitionMap& pi, const GameSpec& g) {
  require_same_ground(pi.ground(), g.ground(), "equipartition");
  if (pi.k() != g.k()) {
    fail(ErrorKind::BadPartition,
         "partition has " + std::to_string(pi.k()) + " cells for a " + std::to_string(g.k()) + "-player game");
  }
  const double share = g.upsilon() / static_cast<double>(g.k());
  const auto masses = pi.cell_masses(g.value());
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (std::abs(masses[i] - share) > 1e-12 * g.upsilon()) {
      fail(ErrorKind::BadPartition, "cell " + std::to_string(i) + " carries value " + std::to_string(masses[i]) +
                                        ", expected " + std::to_string(share));
    }
  }
}

EquilibriumSampler::EquilibriumSampler(const GameSpec& g, EquipartitionMap pi, std::optional<double> alpha_override)
    : k_(g.k()), ground_(g.ground()), alpha_(0.0) {
  if (!g.symmetric()) fail(ErrorKind::AsymmetricGame, "equilibrium sampling needs all budgets equal to 1");
  if (k_ == 1) return;
  check_equipartition(pi, g);
  alpha_ = alpha_override.value_or(1.0 / static_cast<double>(k_ - 1));
  if (!(alpha_ > 0.0)) fail(ErrorKind::NonPositiveShape, "Dirichlet concentration must be > 0");

  StepFunction cells;
  cells.breaks.reserve(pi.segments().size() + 1);
  cells.values.reserve(pi.segments().size());
  cells.breaks.push_back(0.0);
  for (const auto& s : pi.segments()) {
    cells.breaks.push_back(s.hi);
    cells.values.push_back(static_cast<double>(s.cell));
  }
  const double factor = static_cast<double>(k_) / g.upsilon();
  breaks_.push_back(0.0);
  sweep2(g.ratio().values, cells, [&](double, double hi, double r, double c) {
    breaks_.push_back(hi);
    scale_.push_back(factor * r);
    cell_.push_back(static_cast<std::size_t>(c));
  });
}

Bid EquilibriumSampler::bid_from_weights(std::span<const double> cell_weights) const {
  if (cell_weights.size() != k_) fail(ErrorKind::InvalidArgument, "need one weight per cell");
  StepFunction f;
  f.breaks = breaks_;
  f.values.resize(scale_.size());
  for (std::size_t i = 0; i < scale_.size(); ++i) f.values[i] = scale_[i] * cell_weights[cell_[i]];
  return Bid(ground_, std::move(f)).canonical();
}

Bid EquilibriumSampler::sample(RngStream& rng) const {
  if (k_ == 1) return Bid::zero(ground_);
  const auto x = sample_dirichlet(alpha_, k_, rng);
  return bid_from_weights(x);
}

Bid sample_equilibrium_bid(const GameSpec& g, const EquipartitionMap& pi, RngStream& rng) {
  return EquilibriumSampler(g, pi).sample(rng);
}

double EquilibriumMarginal::cdf(double t) const noexcept {
  if (!(t > 0.0)) return 0.0;
  const double base = t * upsilon / (static_cast<double>(k) * ratio);
  if (base >= 1.0) return 1.0;
  return std::pow(base, 1.0 / static_cast<double>(k - 1));
}

EquilibriumMarginal equilibrium_marginal(const GameSpec& g, double x) {
  if (g.k() < 2) fail(ErrorKind::SinglePlayer, "the equilibrium marginal is defined for k >= 2");
  return {g.k(), g.upsilon(), g.ratio().at(x)};
}

double marginal_cdf(const GameSpec& g, double x, double t) { return equilibrium_marginal(g, x).cdf(t); }

}  // namespace blotto
