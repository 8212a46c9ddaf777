#include <doctest.h>

#include <cmath>

#include "blotto/error.hpp"
#include "blotto/payoff.hpp"
#include "support.hpp"

using namespace blotto;

namespace {

// Pointwise oracle: evaluates the winner rule at the midpoint of every cell of
// a fine grid, for comparison with the exact sweep.
std::vector<double> grid_utilities(const BidProfile& p, const GameSpec& g, std::size_t cells) {
  std::vector<double> u(p.size(), 0.0);
  const double len = g.ground().length();
  const double h = len / static_cast<double>(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    const double x = (static_cast<double>(c) + 0.5) * h;
    double top = -1.0;
    for (const auto& b : p) top = std::max(top, b.at(x));
    std::size_t ties = 0;
    for (const auto& b : p) ties += b.at(x) == top;
    const double mass = g.value().density().at(x) * h;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i].at(x) == top) u[i] += mass / static_cast<double>(ties);
    }
  }
  return u;
}

}  // namespace

TEST_CASE("exact utilities on hand-checked profiles") {
  const auto g2 = interval_blotto(2);
  const auto one = Bid::constant(g2.ground(), 1.0);
  const auto u = exact_utilities({one, one}, g2);
  CHECK(u.utilities == std::vector<double>{0.5, 0.5});

  const auto g3 = interval_blotto(3);
  const Bid spike(g3.ground(), StepFunction({0.0, 1.0 / 3, 1.0}, {3.0, 0.0}));
  const auto v = exact_utilities({one, one, spike}, g3);
  CHECK(v.utilities[0] == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(v.utilities[1] == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(v.utilities[2] == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(exact_utility({one, one, spike}, g3, 2) == v.utilities[2]);
}

TEST_CASE("utilities always sum to the total value") {
  RngStream rng(21);
  const double vals[] = {1.0, 2.5, 0.5, 4.0};
  const std::vector<GameSpec> games{interval_blotto(2), interval_blotto(4), circle_blotto(3, 2.0),
                                    discrete_blotto(3, vals)};
  for (const auto& g : games) {
    for (int t = 0; t < 200; ++t) {
      BidProfile p;
      for (std::size_t i = 0; i < g.k(); ++i) p.push_back(testing::random_bid(g, rng, 3.0));
      const auto u = exact_utilities(p, g);
      CHECK(std::abs(u.total() - g.upsilon()) <= 1e-12 * g.upsilon());
      for (std::size_t i = 0; i < g.k(); ++i) CHECK(exact_utility(p, g, i) == doctest::Approx(u.utilities[i]));
    }
  }
}

TEST_CASE("exact utilities agree with a fine-grid oracle") {
  RngStream rng(22);
  const Measure value(Battleground::interval01(), {0.0, 0.3, 1.0}, {2.0, 0.5});
  const GameSpec g(3, {1.0, 1.0, 1.0}, Measure::lebesgue(Battleground::interval01()), value);
  for (int t = 0; t < 30; ++t) {
    BidProfile p;
    for (int i = 0; i < 3; ++i) p.push_back(testing::random_bid(g, rng, 2.0));
    const auto exact = exact_utilities(p, g).utilities;
    const auto grid = grid_utilities(p, g, 100000);
    for (int i = 0; i < 3; ++i) CHECK(exact[i] == doctest::Approx(grid[i]).epsilon(1e-3));
  }
}

TEST_CASE("profile shape errors") {
  const auto g = interval_blotto(2);
  const auto one = Bid::constant(g.ground(), 1.0);
  CHECK_THROWS_AS(exact_utilities({one}, g), Error);
  CHECK_THROWS_AS(exact_utilities({one, Bid::constant(Battleground::discrete(2), 1.0)}, g), Error);
}

TEST_CASE("Monte Carlo over deterministic sources reproduces exact utilities") {
  const auto g = interval_blotto(2);
  const Bid a(g.ground(), StepFunction({0.0, 0.7, 1.0}, {1.2, 0.6}));
  const Bid b = Bid::constant(g.ground(), 1.0);
  const auto est =
      monte_carlo_utilities({StrategySource::fixed(a), StrategySource::fixed(b)}, g, 50, RngStream(1));
  const auto exact = exact_utilities({a, b}, g).utilities;
  CHECK(est.mean == exact);
  CHECK(est.std_error == std::vector<double>{0.0, 0.0});
}

TEST_CASE("equilibrium payoffs are fair") {
  const auto g2 = interval_blotto(2);
  const auto s2 = StrategySource::equilibrium(g2, equipartition_interval(2));
  const auto e2 = monte_carlo_utilities({s2, s2}, g2, 10000, RngStream(2));
  for (std::size_t i = 0; i < 2; ++i) CHECK(std::abs(e2.mean[i] - 0.5) <= 3 * e2.std_error[i] + 1e-12);

  const auto g3 = interval_blotto(3);
  const auto s3 = StrategySource::equilibrium(g3, equipartition_interval(3));
  const auto e3 = monte_carlo_utilities({s3, s3, s3}, g3, 100000, RngStream(3));
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(e3.mean[i] - 1.0 / 3) <= 3 * e3.std_error[i]);
}

TEST_CASE("Monte Carlo results do not depend on the worker count") {
  const auto g = interval_blotto(3);
  const auto s = StrategySource::equilibrium(g, equipartition_interval(3));
  const auto one = monte_carlo_utilities({s, s, s}, g, 3001, RngStream(4, 2));
  const auto four = monte_carlo_utilities({s, s, s}, g, 3001, RngStream(4, 2), McOptions{4});
  CHECK(one.mean == four.mean);
  CHECK(one.std_error == four.std_error);
  CHECK(one.seed == 4);
  CHECK(one.stream == 2);
}

TEST_CASE("deviation oracle examples") {
  for (std::size_t k : {2u, 3u, 5u}) {
    const auto g = interval_blotto(k);
    CHECK(deviation_payoff_oracle(Bid::constant(g.ground(), 1.0), g) == doctest::Approx(1.0 / double(k)));
  }
  const auto g = interval_blotto(2);
  const Bid half(g.ground(), StepFunction({0.0, 0.5, 1.0}, {2.0, 0.0}));
  CHECK(deviation_payoff_oracle(half, g) == doctest::Approx(0.5));
  CHECK(deviation_payoff_oracle(Bid::constant(g.ground(), 3.0), g) == doctest::Approx(1.0));
  CHECK(deviation_payoff_oracle(Bid::constant(g.ground(), 1.0), interval_blotto(1)) == 1.0);
  const auto unit = Measure::lebesgue(Battleground::interval01());
  CHECK_THROWS_AS(deviation_payoff_oracle(half, GameSpec(2, {1.0, 2.0}, unit, unit)), Error);
}

TEST_CASE("deviation oracle matches Monte Carlo against equilibrium opponents") {
  RngStream rng(23);
  for (std::size_t k : {2u, 4u}) {
    const auto g = interval_blotto(k);
    const auto eq = StrategySource::equilibrium(g, equipartition_interval(k));
    for (int t = 0; t < 4; ++t) {
      Bid psi = testing::random_bid(g, rng, 2.0);
      psi = psi.scaled(1.0 / bid_integral(psi, g.beta()));
      std::vector<StrategySource> srcs(k - 1, eq);
      srcs.push_back(StrategySource::fixed(psi));
      const auto est = monte_carlo_utilities(srcs, g, 20000, RngStream(24, t));
      const double oracle = deviation_payoff_oracle(psi, g);
      CHECK(std::abs(est.mean.back() - oracle) <= 3 * est.std_error.back());
    }
  }
}

TEST_CASE("finite mixtures draw by weight") {
  const auto g = interval_blotto(2);
  const auto s = StrategySource::finite(
      {{Bid::constant(g.ground(), 0.0), 1.0}, {Bid::constant(g.ground(), 2.0), 3.0}});
  RngStream rng(25);
  int high = 0;
  for (int i = 0; i < 40000; ++i) high += s(rng).at(0.5) == 2.0;
  CHECK(high / 40000.0 == doctest::Approx(0.75).epsilon(0.02));
}
