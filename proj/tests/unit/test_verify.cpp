#include <doctest.h>

#include <cmath>

#include "blotto/error.hpp"
#include "blotto/verify.hpp"
#include "support.hpp"

using namespace blotto;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

// Mass 1/2 uniform on [0, 0.5], mass 1/2 uniform on [1.5, 2]; mean 1, flat on (0.5, 1.5).
Cdf flat_gap() {
  return Cdf({}, {CdfSegment::linear(0.0, 0.5, 0.5), CdfSegment::linear(1.5, 2.0, 0.5)});
}

}  // namespace

TEST_CASE("deviation payoff against a max law") {
  for (std::size_t k = 2; k <= 5; ++k) {
    const auto g = equilibrium_marginal_cdf(k);
    const auto m = g.max_of(static_cast<unsigned>(k - 1));
    CHECK(deviation_payoff_from_marginal(g, m) == doctest::Approx(1.0 / double(k)).epsilon(1e-12));
  }
  const auto u = Cdf::uniform(0.0, 2.0);
  CHECK(deviation_payoff_from_marginal(u, u) == doctest::Approx(0.5).epsilon(1e-12));
  // Point mass at 1 strictly below the opponents' support never wins.
  const auto above = Cdf::uniform(3.0, 4.0);
  CHECK(deviation_payoff_from_marginal(Cdf::point_mass(1.0), above) == 0.0);
  CHECK(kind_of([&] { deviation_payoff_from_marginal(u, Cdf::point_mass(1.0)); }) == ErrorKind::AtomicOpponentMarginal);
  CHECK(kind_of([&] { deviation_payoff_from_marginal(Cdf::uniform(0.0, 3.0), u); }) == ErrorKind::OffBudgetMean);
}

TEST_CASE("deviation payoff matches an independent quadrature") {
  const auto h = flat_gap();
  const auto m = Cdf::uniform(0.0, 2.0).max_of(2);
  // E[M(X)] = ∫ M dH: density 1 on [0, 0.5] and [1.5, 2], M(t) = t^2 / 4.
  const double expected =
      testing::grid_integral([](double t) { return t * t / 4.0; }, 0.0, 0.5, 100000) +
      testing::grid_integral([](double t) { return t * t / 4.0; }, 1.5, 2.0, 100000);
  CHECK(deviation_payoff_from_marginal(h, m) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("KS distance") {
  std::vector<double> xs{0.5};
  CHECK(ks_distance(xs, [](double t) { return t; }) == doctest::Approx(0.5));
  std::vector<double> ys{0.1, 0.3, 0.5, 0.7, 0.9};
  CHECK(ks_distance(ys, [](double t) { return t; }) == doctest::Approx(0.1));
  CHECK(ks_threshold(10000) == doctest::Approx(0.0163));
}

TEST_CASE("KS marginal test separates the sampler from corrupted sources") {
  const auto g = interval_blotto(2);
  const auto eq = StrategySource::equilibrium(g, equipartition_interval(2));
  CHECK(ks_marginal_test(eq, g, 0.37, 100000, RngStream(41)).pass);
  CHECK_FALSE(ks_marginal_test(StrategySource::constant(g.ground(), 1.0), g, 0.37, 1000, RngStream(42)).pass);
  auto bad = std::make_shared<const EquilibriumSampler>(g, equipartition_interval(2), 3.0);
  CHECK_FALSE(ks_marginal_test(StrategySource::equilibrium(bad), g, 0.37, 100000, RngStream(43)).pass);
}

TEST_CASE("inverse-CDF strategy spends the mean") {
  const auto g = interval_blotto(3);
  const auto h = equilibrium_marginal_cdf(3);
  const Bid psi = inverse_cdf_strategy(h, g);
  CHECK(std::abs(bid_integral(psi, g.beta()) - 1.0) < 1e-9);
  const double ones[] = {1, 1, 1, 1};
  const auto d = discrete_blotto(2, ones);
  const Bid q = inverse_cdf_strategy(Cdf::uniform(0.0, 2.0), d);
  CHECK(q.weights().size() == 4);
  CHECK(std::abs(bid_integral(q, d.beta()) - 1.0) < 1e-12);
  CHECK(q.weights()[0] == doctest::Approx(0.25));
}

TEST_CASE("probe family is feasible") {
  const double ones[] = {1, 1, 1, 1, 1, 1};
  for (const auto& g : {interval_blotto(3), discrete_blotto(3, ones), circle_blotto(2, 3.0)}) {
    const std::vector<double> v = g.ground().is_discrete() ? g.value().weights() : std::vector<double>{};
    const auto pi = g.ground().is_discrete() ? equipartition_discrete(6, 3, v) : equipartition_value_quantiles(g.value(), g.k());
    const auto sources = ProfileSources::equilibrium_profile(g, pi);
    const auto probes = default_probe_family(g, sources, RngStream(44));
    CHECK(probes.size() >= 50);
    for (const auto& p : probes) CHECK_MESSAGE(validate_bid(p.bid, g, 0).ok, p.label);
  }
}

TEST_CASE("best-response probing certifies the equilibrium") {
  const auto g = interval_blotto(3);
  const auto sources = ProfileSources::equilibrium_profile(g, equipartition_interval(3));
  const auto probes = default_probe_family(g, sources, RngStream(45));
  const auto cert = best_response_probe(sources, g, probes, 1000, RngStream(46));
  CHECK(cert.verdict == Verdict::Consistent);
  CHECK(cert.max_gap <= 1e-12);
  CHECK_FALSE(cert.witness.has_value());
}

TEST_CASE("best-response probing refutes the pure all-ones profile") {
  const auto g = interval_blotto(2);
  const auto sources = ProfileSources::repeated(StrategySource::constant(g.ground(), 1.0), 2);
  const auto probes = default_probe_family(g, sources, RngStream(47));
  const auto cert = best_response_probe(sources, g, probes, 1000, RngStream(48));
  CHECK(cert.verdict == Verdict::Refuted);
  REQUIRE(cert.witness_outcome.has_value());
  CHECK(cert.witness_outcome->payoff > 0.5);
  CHECK(validate_bid(cert.witness->bid, g, 1).ok);
}

TEST_CASE("best-response probing edge cases") {
  const auto g1 = interval_blotto(1);
  const auto s1 = ProfileSources::repeated(StrategySource::constant(g1.ground(), 1.0), 1);
  const auto c1 = best_response_probe(s1, g1, {}, 10, RngStream(1));
  CHECK(c1.verdict == Verdict::Consistent);
  CHECK(c1.payoff_mean == std::vector<double>{1.0});

  const auto g = interval_blotto(2);
  const auto s = ProfileSources::repeated(StrategySource::constant(g.ground(), 1.0), 2);
  CHECK(kind_of([&] { best_response_probe(s, g, {Probe{"big", Bid::constant(g.ground(), 2.0)}}, 10, RngStream(1)); }) ==
        ErrorKind::InfeasibleProbe);
  const auto short_profile = ProfileSources::repeated(StrategySource::constant(g.ground(), 1.0), 1);
  CHECK(kind_of([&] { best_response_probe(short_profile, g, {}, 10, RngStream(1)); }) ==
        ErrorKind::ProfileLengthMismatch);
}

TEST_CASE("atom exploit against the all-ones profile") {
  const auto g = interval_blotto(2);
  const auto ex = exploit_atom_strategy(g, 1.0, 1.0, 0.1);
  CHECK(ex.gain_bound == doctest::Approx(0.4));
  const Bid one = Bid::constant(g.ground(), 1.0);
  const Bid psi = ex.apply(one);
  CHECK(validate_bid(psi, g, 1).ok);
  CHECK(std::abs(bid_integral(psi, g.beta()) - 1.0) < 1e-12);
  CHECK(psi.at(0.05) == 0.0);
  CHECK(exact_utility({one, psi}, g, 1) >= 0.9 - 1e-12);
}

TEST_CASE("atom exploit bound") {
  CHECK(atom_exploit_bound(3, 0.5, 0.01) == doctest::Approx(2.0 / 3 * 0.99 * 0.125 - 0.01 / 3));
  for (double d : {0.01, 0.3, 0.9}) CHECK(atom_exploit_bound(4, 0.0, d) <= 0.0);
  const auto g = interval_blotto(2);
  CHECK(kind_of([&] { exploit_atom_strategy(g, 1.0, 1.0, 0.0); }) == ErrorKind::DeltaOutOfRange);
  CHECK(kind_of([&] { exploit_atom_strategy(g, 1.0, 1.0, 1.0); }) == ErrorKind::DeltaOutOfRange);
}

TEST_CASE("atom exploit output is always feasible") {
  RngStream rng(49);
  const auto g = interval_blotto(3);
  for (int t = 0; t < 100; ++t) {
    Bid b = testing::random_bid(g, rng, 2.0);
    b = b.scaled(rng.uniform() / bid_integral(b, g.beta()));
    const auto ex = exploit_atom_strategy(g, b.at(0.99), 0.5, 0.05 + 0.5 * rng.uniform());
    const Bid psi = ex.apply(b);
    CHECK(validate_bid(psi, g, 2).ok);
    CHECK(std::abs(bid_integral(psi, g.beta()) - 1.0) < 1e-12);
  }
}

TEST_CASE("mass move on a flat gap") {
  const auto g = flat_gap();
  const auto mm = exploit_mass_move_cdf(g, 0.5, 1.5, 0.5, 0.05);
  CHECK(std::abs(mm.h.mean() - 1.0) <= 1e-12);
  CHECK(mm.mu == doctest::Approx(0.05));
  CHECK(mm.epsilon > 0.0);
  CHECK(std::abs(mm.h.inverse_integral() - 1.0) < 1e-9);
  // Against M = G (k = 2) the move gains strictly.
  const double base = deviation_payoff_from_marginal(g, g);
  const double moved = deviation_payoff_from_marginal(mm.h, g);
  CHECK(moved > base + 1e-6);
}

TEST_CASE("mass move preconditions") {
  CHECK(kind_of([] { exploit_mass_move_cdf(equilibrium_marginal_cdf(2), 0.5, 1.5, 0.5, 0.05); }) ==
        ErrorKind::NotFlatOnGap);
  CHECK(kind_of([] { exploit_mass_move_cdf(flat_gap(), 0.5, 1.5, 0.05, 0.5); }) == ErrorKind::DeltaOutOfRange);
  CHECK(kind_of([] { exploit_mass_move_cdf(flat_gap(), 0.5, 1.5, 1.0, 0.05); }) == ErrorKind::DeltaOutOfRange);
}

TEST_CASE("step swap is neutral against the equilibrium marginal") {
  const auto g = interval_blotto(3);
  const auto gcdf = equilibrium_marginal_cdf(3);
  const auto m = gcdf.max_of(2);
  for (double eps : {0.2, 0.05, 0.01}) {
    const auto swap = exploit_step_swap(gcdf, 1.0, 2.5, eps, g);
    CHECK(std::abs(bid_integral(swap.swapped, g.beta()) - 1.0) < 1e-9);
    CHECK(std::abs(bid_integral(swap.baseline, g.beta()) - 1.0) < 1e-9);
    const double gain = payoff_against_law(swap.swapped, m, g) - payoff_against_law(swap.baseline, m, g);
    CHECK(std::abs(gain) < 1e-12);
  }
}

TEST_CASE("step swap gains when M is convex between a and b") {
  const auto g = interval_blotto(2);
  const auto u = Cdf::uniform(0.0, 2.0);
  // M(t) = (t / 2)^2 has M(a) / a < M(b) / b for a < b.
  const auto m = u.max_of(2);
  const auto swap = exploit_step_swap(u, 0.5, 1.8, 0.05, g);
  CHECK(std::abs(bid_integral(swap.swapped, g.beta()) - 1.0) < 1e-9);
  CHECK(payoff_against_law(swap.swapped, m, g) > payoff_against_law(swap.baseline, m, g));
}

TEST_CASE("step swap preconditions") {
  const auto g = interval_blotto(2);
  const auto u = Cdf::uniform(0.0, 2.0);
  CHECK(kind_of([&] { exploit_step_swap(u, 1.0, 0.5, 0.1, g); }) == ErrorKind::DegenerateInterval);
  CHECK(kind_of([&] { exploit_step_swap(u, 0.5, 1.0, 0.0, g); }) == ErrorKind::DegenerateInterval);
  CHECK(kind_of([&] { exploit_step_swap(flat_gap(), 0.2, 1.8, 0.1, g); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("Lotto soft budget") {
  const double ones[] = {1, 1};
  const auto g = discrete_blotto(2, ones);
  const double hi[] = {1, 1};
  const double lo[] = {0, 0};
  const Bid high = g.from_original_units(Bid::discrete(hi));
  const auto lotto = StrategySource::finite({{high, 0.5}, {Bid::discrete(lo), 0.5}});
  const auto check = lotto_budget_check(lotto, g, 0, 10000, RngStream(50));
  CHECK(check.pass);
  CHECK(check.mean == doctest::Approx(1.0).epsilon(0.05));
  CHECK_FALSE(validate_bid(high, g, 0).ok);

  const auto eq = StrategySource::equilibrium(g, equipartition_discrete(2, 2, ones));
  CHECK(lotto_budget_check(eq, g, 0, 1000, RngStream(51)).pass);
  CHECK_FALSE(lotto_budget_check(StrategySource::constant(g.ground(), 2.0), g, 0, 100, RngStream(52)).pass);
  CHECK(kind_of([&] { lotto_budget_check(eq, g, 0, 10, RngStream(1)); }) == ErrorKind::InvalidArgument);
}
