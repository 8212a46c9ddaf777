#include "blotto/payoff.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "blotto/error.hpp"

namespace blotto {

double PayoffVector::total() const noexcept { return std::accumulate(utilities.begin(), utilities.end(), 0.0); }

void RunningStats::add(double x) noexcept {
  ++n;
  const double delta = x - mean;
  mean += delta / static_cast<double>(n);
  m2 += delta * (x - mean);
}

double RunningStats::std_error() const noexcept {
  return n > 1 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
}

StrategySource StrategySource::fixed(Bid bid, std::string label) {
  return StrategySource{[bid = std::move(bid)](RngStream&) { return bid; }, std::move(label), true, false};
}

StrategySource StrategySource::constant(const Battleground& ground, double c) {
  auto s = fixed(Bid::constant(ground, c), "constant:" + std::to_string(c));
  s.fair = true;
  return s;
}

StrategySource StrategySource::equilibrium(const GameSpec& g, const EquipartitionMap& pi) {
  return equilibrium(std::make_shared<const EquilibriumSampler>(g, pi));
}

StrategySource StrategySource::equilibrium(std::shared_ptr<const EquilibriumSampler> sampler) {
  return StrategySource{[sampler = std::move(sampler)](RngStream& rng) { return sampler->sample(rng); },
                        "equilibrium", false, true};
}

StrategySource StrategySource::finite(std::vector<std::pair<Bid, double>> support, std::string label) {
  if (support.empty()) fail(ErrorKind::InvalidArgument, "finite strategy needs at least one bid");
  std::vector<double> cumulative;
  double total = 0.0;
  for (const auto& [bid, w] : support) {
    if (!(w >= 0.0)) fail(ErrorKind::InvalidArgument, "mixture weights must be nonnegative");
    total += w;
    cumulative.push_back(total);
  }
  if (!(total > 0.0)) fail(ErrorKind::InvalidArgument, "mixture weights sum to zero");
  const bool single = support.size() == 1;
  return StrategySource{[support = std::move(support), cumulative = std::move(cumulative), total](RngStream& rng) {
                          const double u = rng.uniform() * total;
                          auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
                          const auto idx = std::min<std::size_t>(it - cumulative.begin(), support.size() - 1);
                          return support[idx].first;
                        },
                        std::move(label), single, false};
}

namespace {

template <class OnPiece>
void sweep_profile(const BidProfile& p, const GameSpec& g, OnPiece&& on_piece) {
  std::vector<const StepFunction*> fns;
  fns.reserve(p.size() + 1);
  fns.push_back(&g.value().density());
  for (const auto& b : p) fns.push_back(&b.values());
  sweep(std::span<const StepFunction* const>(fns), [&](double lo, double hi, std::span<const double> v) {
    on_piece(v[0] * (hi - lo), v.subspan(1));
  });
}

}  // namespace

PayoffVector exact_utilities(const BidProfile& p, const GameSpec& g) {
  require_profile(p, g);
  PayoffVector out{std::vector<double>(p.size(), 0.0), g.upsilon()};
  sweep_profile(p, g, [&](double mass, std::span<const double> bids) {
    const double top = *std::max_element(bids.begin(), bids.end());
    const auto winners = std::count(bids.begin(), bids.end(), top);
    const double share = mass / static_cast<double>(winners);
    for (std::size_t i = 0; i < bids.size(); ++i) {
      if (bids[i] == top) out.utilities[i] += share;
    }
  });
  return out;
}

double exact_utility(const BidProfile& p, const GameSpec& g, std::size_t player) {
  require_profile(p, g);
  if (player >= p.size()) fail(ErrorKind::InvalidArgument, "player index out of range");
  double total = 0.0;
  sweep_profile(p, g, [&](double mass, std::span<const double> bids) {
    const double mine = bids[player];
    std::size_t ties = 0;
    for (double b : bids) {
      if (b > mine) return;
      if (b == mine) ++ties;
    }
    total += mass / static_cast<double>(ties);
  });
  return total;
}

MonteCarloEstimate monte_carlo_utilities(const std::vector<StrategySource>& sources, const GameSpec& g,
                                         std::size_t n, const RngStream& rng, McOptions opts) {
  const std::size_t k = g.k();
  if (sources.size() != k) {
    fail(ErrorKind::ProfileLengthMismatch,
         std::to_string(sources.size()) + " strategy sources for a " + std::to_string(k) + "-player game");
  }
  if (n < 1) fail(ErrorKind::InvalidArgument, "Monte Carlo needs n >= 1 draws");

  std::vector<double> per_draw(n * k);
  auto run_range = [&](std::size_t begin, std::size_t end) {
    BidProfile profile;
    profile.reserve(k);
    for (std::size_t d = begin; d < end; ++d) {
      profile.clear();
      const RngStream draw_rng = rng.split(d);
      for (std::size_t i = 0; i < k; ++i) {
        RngStream player_rng = draw_rng.split(i);
        profile.push_back(sources[i](player_rng));
      }
      const auto u = exact_utilities(profile, g);
      std::copy(u.utilities.begin(), u.utilities.end(), per_draw.begin() + static_cast<std::ptrdiff_t>(d * k));
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(opts.workers, 1, n);
  if (workers == 1) {
    run_range(0, n);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin < end) pool.emplace_back(run_range, begin, end);
    }
  }

  std::vector<RunningStats> stats(k);
  for (std::size_t d = 0; d < n; ++d) {
    for (std::size_t i = 0; i < k; ++i) stats[i].add(per_draw[d * k + i]);
  }
  MonteCarloEstimate est;
  est.n = n;
  est.seed = rng.seed();
  est.stream = rng.stream();
  for (const auto& s : stats) {
    est.mean.push_back(s.mean);
    est.std_error.push_back(s.std_error());
  }
  return est;
}

double deviation_payoff_oracle(const Bid& psi, const GameSpec& g) {
  if (!g.symmetric()) fail(ErrorKind::AsymmetricGame, "the deviation oracle assumes budgets of 1 for every player");
  require_same_ground(psi.ground(), g.ground(), "deviation_payoff_oracle");
  if (g.k() == 1) return g.upsilon();
  const double per_player = g.upsilon() / static_cast<double>(g.k());
  const StepFunction* fns[] = {&g.value().density(), &g.ratio().values, &psi.values()};
  double total = 0.0;
  sweep(std::span<const StepFunction* const>(fns), [&](double lo, double hi, std::span<const double> v) {
    const double win_prob = std::min(1.0, v[2] * per_player / v[1]);
    total += v[0] * (hi - lo) * win_prob;
  });
  return total;
}

}  // namespace blotto
