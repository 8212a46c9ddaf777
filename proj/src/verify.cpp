#include "blotto/verify.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "blotto/error.hpp"

namespace blotto {

namespace {

template <class F>
double integrate_smooth(F f, double a, double b) {
  if (!(b > a)) return 0.0;
  thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(f, a, b, 1e-14);
}

StepFunction with_break(const StepFunction& f, double x) {
  if (x <= f.lo() || x >= f.hi()) return f;
  const std::size_t i = f.piece_index(x);
  if (f.breaks[i] == x) return f;
  StepFunction out = f;
  out.breaks.insert(out.breaks.begin() + static_cast<std::ptrdiff_t>(i) + 1, x);
  out.values.insert(out.values.begin() + static_cast<std::ptrdiff_t>(i) + 1, f.values[i]);
  return out;
}

// Adds c on [lo, hi) of the parameter domain.
StepFunction add_on(const StepFunction& f, double lo, double hi, double c) {
  StepFunction out = with_break(with_break(f, lo), hi);
  for (std::size_t i = 0; i < out.pieces(); ++i) {
    if (out.breaks[i] >= lo && out.breaks[i + 1] <= hi) out.values[i] += c;
  }
  return out;
}

double beta_mass(const GameSpec& g, double lo, double hi) { return g.beta().mass(lo, hi); }

}  // namespace

// ---------------------------------------------------------------------------

double inverse_cdf(const Cdf& h, double p) { return h.inverse(p); }

double inverse_cdf_integral(const Cdf& h) { return h.inverse_integral(0.0, 1.0); }

double deviation_payoff_from_marginal(const Cdf& h, const Cdf& m) {
  if (m.has_atoms()) {
    fail(ErrorKind::AtomicOpponentMarginal, "the opponents' max law M must have no atoms");
  }
  const double mean = h.mean();
  if (std::abs(mean - 1.0) > 1e-9) {
    fail(ErrorKind::OffBudgetMean, "deviation law has mean " + std::to_string(mean) + ", expected 1");
  }
  // Integrate M(H^{-1}(p)) over p, split wherever H^{-1} jumps or crosses a
  // point where M changes shape.
  std::set<double> cuts{0.0, 1.0};
  for (double x : h.breakpoints()) {
    cuts.insert(h.cdf(x));
    cuts.insert(h.cdf(std::nextafter(x, -std::numeric_limits<double>::infinity())));
  }
  for (double x : m.breakpoints()) cuts.insert(std::clamp(h.cdf(x), 0.0, 1.0));
  double total = 0.0;
  double prev = 0.0;
  for (auto it = std::next(cuts.begin()); it != cuts.end(); ++it) {
    total += integrate_smooth([&](double p) { return m.cdf(h.inverse(p)); }, prev, *it);
    prev = *it;
  }
  return total;
}

double payoff_against_law(const Bid& psi, const Cdf& m, const GameSpec& g) {
  require_same_ground(psi.ground(), g.ground(), "payoff_against_law");
  double total = 0.0;
  sweep2(g.value().density(), psi.values(),
         [&](double lo, double hi, double dv, double bid) { total += dv * (hi - lo) * m.cdf(bid); });
  return total;
}

Cdf equilibrium_marginal_cdf(std::size_t k, double upsilon, double ratio) {
  if (k < 2) fail(ErrorKind::SinglePlayer, "the equilibrium marginal is defined for k >= 2");
  return Cdf::scaled_beta_a1(static_cast<double>(k) * ratio / upsilon, 1.0 / static_cast<double>(k - 1));
}

// ---------------------------------------------------------------------------

double ks_distance(std::vector<double>& samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) fail(ErrorKind::InvalidArgument, "KS distance needs samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return std::clamp(d, 0.0, 1.0);
}

KsReport ks_marginal_test(const StrategySource& source, const GameSpec& g, double x, std::size_t n,
                          const RngStream& rng) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "KS test needs n >= 1");
  const auto marginal = equilibrium_marginal(g, x);
  std::vector<double> values(n);
  for (std::size_t d = 0; d < n; ++d) {
    RngStream r = rng.split(d);
    values[d] = source(r).at(x);
  }
  KsReport rep;
  rep.n = n;
  rep.x = x;
  rep.distance = ks_distance(values, [&](double t) { return marginal.cdf(t); });
  rep.threshold = ks_threshold(n);
  rep.pass = rep.distance < rep.threshold;
  return rep;
}

// ---------------------------------------------------------------------------

ProfileSources ProfileSources::equilibrium_profile(const GameSpec& g, const EquipartitionMap& pi) {
  auto sampler = std::make_shared<const EquilibriumSampler>(g, pi);
  ProfileSources s = repeated(StrategySource::equilibrium(sampler), g.k());
  s.equilibrium = true;
  return s;
}

ProfileSources ProfileSources::repeated(const StrategySource& src, std::size_t k) {
  return ProfileSources{std::vector<StrategySource>(k, src), false, true};
}

ProfileSources ProfileSources::of(std::vector<StrategySource> players) {
  return ProfileSources{std::move(players), false, false};
}

Probe random_step_probe(const GameSpec& g, RngStream& rng, std::size_t max_pieces) {
  const auto& ground = g.ground();
  std::size_t pieces = 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(max_pieces));
  pieces = std::min(pieces, max_pieces);
  std::vector<double> cuts;
  if (ground.is_discrete()) {
    const std::size_t n = ground.battlefields();
    pieces = std::min(pieces, n);
    std::set<std::size_t> chosen;
    while (chosen.size() + 1 < pieces) chosen.insert(1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(n - 1)));
    std::vector<double> w(n);
    std::size_t j = 0;
    double level = -std::log(rng.uniform());
    for (std::size_t b = 0; b < n; ++b) {
      if (chosen.count(b) != 0 && b != 0) level = -std::log(rng.uniform());
      w[b] = level;
      (void)j;
    }
    Bid bid = Bid::discrete(w);
    return {"step:" + std::to_string(pieces), bid.scaled(1.0 / bid_integral(bid, g.beta()))};
  }
  std::set<double> xs;
  while (xs.size() + 1 < pieces) xs.insert(rng.uniform() * ground.length());
  StepFunction f;
  f.breaks.push_back(0.0);
  for (double x : xs) f.breaks.push_back(x);
  f.breaks.push_back(ground.length());
  for (std::size_t i = 0; i + 1 < f.breaks.size(); ++i) f.values.push_back(-std::log(rng.uniform()));
  Bid bid(ground, std::move(f));
  return {"step:" + std::to_string(pieces), bid.scaled(1.0 / bid_integral(bid, g.beta()))};
}

Bid inverse_cdf_strategy(const Cdf& h, const GameSpec& g, std::size_t cells) {
  const auto& ground = g.ground();
  if (ground.is_discrete()) {
    const auto w = g.beta().weights();
    std::vector<double> values(w.size());
    double cum = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      const double next = j + 1 == w.size() ? 1.0 : cum + w[j];
      values[j] = h.inverse_integral(cum, next) / w[j];
      cum = next;
    }
    return Bid::discrete(values);
  }
  if (cells < 1) fail(ErrorKind::InvalidArgument, "need at least one cell");
  StepFunction f;
  f.breaks.push_back(0.0);
  const double c = static_cast<double>(cells);
  for (std::size_t j = 0; j < cells; ++j) {
    const double p0 = static_cast<double>(j) / c;
    const double p1 = static_cast<double>(j + 1) / c;
    f.breaks.push_back(j + 1 == cells ? ground.length() : g.beta().quantile(p1));
    f.values.push_back(h.inverse_integral(p0, p1) * c);
  }
  return Bid(ground, std::move(f)).canonical();
}

std::vector<Probe> default_probe_family(const GameSpec& g, const ProfileSources& sources, const RngStream& rng,
                                        std::size_t random_steps) {
  const auto& ground = g.ground();
  const double budget = *std::min_element(g.budgets().begin(), g.budgets().end());
  std::vector<Probe> probes;

  const std::size_t steps = 8 * g.k();
  for (std::size_t j = 1; j <= steps; ++j) {
    const double c = 0.25 * static_cast<double>(j);
    std::ostringstream label_text;
    label_text << "constant:" << c;
    const std::string label = label_text.str();
    if (c <= budget) {
      probes.push_back({label, Bid::constant(ground, c)});
      continue;
    }
    const double share = budget / c;
    if (ground.is_discrete()) {
      const auto w = g.beta().weights();
      std::vector<double> bid(w.size(), 0.0);
      double cum = 0.0;
      std::size_t used = 0;
      for (std::size_t b = 0; b < w.size() && cum + w[b] <= share; ++b) {
        cum += w[b];
        bid[b] = c;
        ++used;
      }
      if (used == 0) continue;
      probes.push_back({label, Bid::discrete(bid)});
    } else {
      const double x = g.beta().quantile(share);
      probes.push_back({label, Bid(ground, StepFunction({0.0, x, ground.length()}, {c, 0.0}))});
    }
  }

  for (std::size_t i = 0; i < random_steps; ++i) {
    RngStream r = rng.split(1000 + i);
    Probe p = random_step_probe(g, r);
    p.bid = p.bid.scaled(budget);
    probes.push_back(std::move(p));
  }

  if (g.k() >= 2 && sources.players.size() == g.k()) {
    std::vector<double> pooled;
    for (std::size_t d = 0; d < 256; ++d) {
      const RngStream draw = rng.split(5000 + d);
      for (std::size_t j = 0; j + 1 < g.k(); ++j) {
        RngStream r = draw.split(j);
        const Bid bid = sources.players[j](r);
        for (int s = 0; s < 4; ++s) pooled.push_back(bid.at(g.beta().quantile(r.uniform())));
      }
    }
    const Cdf raw = Cdf::empirical(pooled);
    const double mean = raw.mean();
    if (mean > 0.0) {
      for (double& v : pooled) v *= budget / mean;
      probes.push_back({"inverse-cdf", inverse_cdf_strategy(Cdf::empirical(pooled), g)});
    }
  }
  return probes;
}

EquilibriumCertificate best_response_probe(const ProfileSources& sources, const GameSpec& g,
                                           const std::vector<Probe>& probes, std::size_t n, const RngStream& rng) {
  const std::size_t k = g.k();
  if (sources.players.size() != k) {
    fail(ErrorKind::ProfileLengthMismatch,
         std::to_string(sources.players.size()) + " strategy sources for a " + std::to_string(k) + "-player game");
  }
  if (n < 1) fail(ErrorKind::InvalidArgument, "probing needs n >= 1 draws");

  EquilibriumCertificate cert;
  cert.k = k;
  cert.upsilon = g.upsilon();
  cert.fair_share = g.upsilon() / static_cast<double>(k);
  cert.seed = rng.seed();
  cert.stream = rng.stream();

  if (k == 1) {
    cert.n = n;
    cert.payoff_mean = {g.upsilon()};
    cert.payoff_std_error = {0.0};
    return cert;
  }

  const bool deterministic =
      std::all_of(sources.players.begin(), sources.players.end(), [](const auto& s) { return s.deterministic; });
  const std::size_t draws = deterministic ? 1 : n;
  cert.n = draws;

  std::vector<std::size_t> seats;
  if (sources.symmetric) {
    seats.push_back(k - 1);
  } else {
    for (std::size_t i = 0; i < k; ++i) seats.push_back(i);
  }
  for (const auto& p : probes) {
    for (std::size_t seat : seats) {
      const auto check = validate_bid(p.bid, g, seat);
      if (!check.ok) {
        fail(ErrorKind::InfeasibleProbe, "probe '" + p.label + "' spends " + std::to_string(check.integral) +
                                             " against a budget of " + std::to_string(g.budgets()[seat]));
      }
    }
  }

  const auto payoffs = monte_carlo_utilities(sources.players, g, draws, rng.split(0));
  cert.payoff_mean = payoffs.mean;
  cert.payoff_std_error = payoffs.std_error;

  const double tol = 1e-12 * g.upsilon();
  struct Scored {
    ProbeOutcome outcome;
    bool refutes;
    std::size_t probe;
  };
  std::vector<Scored> scored;

  if (sources.equilibrium && g.symmetric()) {
    for (std::size_t p = 0; p < probes.size(); ++p) {
      const double payoff = deviation_payoff_oracle(probes[p].bid, g);
      ProbeOutcome o{probes[p].label, k - 1, payoff, 0.0, payoff - cert.fair_share};
      scored.push_back({o, o.gap > tol, p});
    }
  } else {
    const RngStream probe_rng = rng.split(1);
    for (std::size_t seat : seats) {
      RunningStats baseline;
      std::vector<RunningStats> payoff(probes.size());
      std::vector<RunningStats> lift(probes.size());
      BidProfile profile;
      for (std::size_t d = 0; d < draws; ++d) {
        const RngStream draw = probe_rng.split(d);
        profile.clear();
        for (std::size_t j = 0; j < k; ++j) {
          RngStream r = draw.split(j);
          profile.push_back(sources.players[j](r));
        }
        const double own = exact_utility(profile, g, seat);
        baseline.add(own);
        const Bid kept = profile[seat];
        for (std::size_t p = 0; p < probes.size(); ++p) {
          profile[seat] = probes[p].bid;
          const double u = exact_utility(profile, g, seat);
          payoff[p].add(u);
          lift[p].add(u - own);
        }
        profile[seat] = kept;
      }
      for (std::size_t p = 0; p < probes.size(); ++p) {
        ProbeOutcome o{probes[p].label, seat, payoff[p].mean, payoff[p].std_error(),
                       payoff[p].mean - cert.fair_share};
        const bool beats_share = o.gap > 3.0 * o.std_error + tol;
        const bool beats_own = lift[p].mean > 3.0 * lift[p].std_error() + tol;
        scored.push_back({o, beats_share && beats_own, p});
      }
    }
  }

  cert.max_gap = -std::numeric_limits<double>::infinity();
  const Scored* witness = nullptr;
  for (const auto& s : scored) {
    cert.probes.push_back(s.outcome);
    if (s.outcome.gap > cert.max_gap) {
      cert.max_gap = s.outcome.gap;
      cert.max_gap_std_error = s.outcome.std_error;
    }
    if (s.refutes && (witness == nullptr || s.outcome.gap > witness->outcome.gap)) witness = &s;
  }
  if (scored.empty()) cert.max_gap = 0.0;
  if (witness != nullptr) {
    cert.verdict = Verdict::Refuted;
    cert.witness = probes[witness->probe];
    cert.witness_outcome = witness->outcome;
  }
  return cert;
}

EquilibriumCertificate certify(const ProfileSources& sources, const GameSpec& g, const std::vector<Probe>& probes,
                               std::size_t n, const RngStream& rng, std::span<const double> points) {
  auto cert = best_response_probe(sources, g, probes, n, rng);
  if (g.k() >= 2) {
    const RngStream ks_rng = rng.split(2);
    for (std::size_t i = 0; i < points.size(); ++i) {
      cert.marginals.push_back(ks_marginal_test(sources.players.front(), g, points[i], n, ks_rng.split(i)));
    }
  }
  return cert;
}

// ---------------------------------------------------------------------------

double atom_exploit_bound(std::size_t k, double eta, double delta) {
  const double kd = static_cast<double>(k);
  return (kd - 1.0) / kd * (1.0 - delta) * std::pow(eta, kd) - delta / kd;
}

AtomExploit exploit_atom_strategy(const GameSpec& g, double atom, double eta, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) fail(ErrorKind::DeltaOutOfRange, "delta must lie in (0, 1)");
  if (!(eta >= 0.0 && eta <= 1.0)) fail(ErrorKind::InvalidArgument, "atom mass eta must lie in [0, 1]");
  if (g.ground().is_discrete()) {
    fail(ErrorKind::InvalidArgument, "the atom exploit zeroes a prefix of the battleground; it needs a continuous one");
  }
  return AtomExploit{atom, eta, delta, g.upsilon() * atom_exploit_bound(g.k(), eta, delta), g};
}

Bid AtomExploit::apply(const Bid& psi) const {
  require_same_ground(psi.ground(), game.ground(), "atom exploit");
  const double budget = game.budgets().back();
  const double cut = game.beta().quantile(delta);
  const double len = game.ground().length();

  StepFunction f = with_break(psi.values(), cut);
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    if (f.breaks[i + 1] <= cut) f.values[i] = 0.0;
  }

  double spent = product_integral(f, game.beta().density());
  double raised_mass = 0.0;
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    if (f.breaks[i] >= cut && f.values[i] == atom) raised_mass += beta_mass(game, f.breaks[i], f.breaks[i + 1]);
  }
  const double slack = budget - spent;
  if (raised_mass > 0.0 && slack > 0.0) {
    const double eps = std::min(slack / raised_mass, 1e-3);
    for (std::size_t i = 0; i < f.pieces(); ++i) {
      if (f.breaks[i] >= cut && f.values[i] == atom) f.values[i] = atom + eps;
    }
    spent = product_integral(f, game.beta().density());
  }

  const double deficit = budget - spent;
  if (deficit > 0.0) {
    // Top up on the highest-ratio piece of the density ratio right of the cut.
    const auto& r = game.ratio().values;
    double best = -1.0;
    double lo = cut;
    double hi = len;
    for (std::size_t i = 0; i < r.pieces(); ++i) {
      const double a = std::max(cut, r.breaks[i]);
      const double b = r.breaks[i + 1];
      if (b <= a) continue;
      if (r.values[i] > best) {
        best = r.values[i];
        lo = a;
        hi = b;
      }
    }
    const double mass = beta_mass(game, lo, hi);
    f = add_on(f, lo, hi, deficit / mass);
  }
  return Bid(game.ground(), std::move(f)).canonical();
}

StrategySource AtomExploit::wrap(StrategySource base) const {
  const bool det = base.deterministic;
  return StrategySource{[base = std::move(base), self = *this](RngStream& rng) { return self.apply(base(rng)); },
                        "atom-exploit", det, false};
}

MassMove exploit_mass_move_cdf(const Cdf& g_cdf, double a, double b, double big_delta, double delta) {
  if (g_cdf.power() != 1) fail(ErrorKind::InvalidArgument, "mass move works on a plain marginal, not a max law");
  if (!(delta > 0.0 && delta < big_delta && big_delta < b - a)) {
    fail(ErrorKind::DeltaOutOfRange, "need 0 < delta < Delta < b - a");
  }
  const double ga = g_cdf.cdf(a);
  const double gb = g_cdf.cdf(b);
  if (std::abs(gb - ga) > 1e-15 || ga >= 1.0) {
    fail(ErrorKind::NotFlatOnGap, "G must be constant on (a, b) and below 1 there");
  }
  const double hi_edge = b + delta;
  const double mu = g_cdf.cdf(hi_edge) - gb;
  if (!(mu > 0.0)) fail(ErrorKind::NotFlatOnGap, "G must increase immediately to the right of b");

  std::vector<CdfAtom> atoms;
  for (const auto& at : g_cdf.atoms()) {
    if (!(at.at > b && at.at <= hi_edge)) atoms.push_back(at);
  }
  std::vector<CdfSegment> segs;
  for (const auto& s : g_cdf.segments()) {
    if (s.hi <= b || s.lo >= hi_edge) {
      segs.push_back(s);
      continue;
    }
    if (s.lo < b) segs.push_back(s.sub(s.lo, b));
    if (s.hi > hi_edge) segs.push_back(s.sub(hi_edge, s.hi));
  }
  atoms.push_back({b + big_delta, mu / 2.0});

  auto build = [&](double eps) {
    auto with_low = atoms;
    with_low.push_back({a + eps, mu / 2.0});
    return Cdf(std::move(with_low), segs);
  };
  auto excess = [&](double eps) { return build(eps).mean() - 1.0; };

  double lo = 0.0;
  double hi = b + big_delta - a;
  if (excess(lo) > 0.0 || excess(hi) < 0.0) {
    fail(ErrorKind::NoFeasibleEpsilon, "no epsilon in (0, b + Delta - a) restores mean 1");
  }
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (excess(mid) < 0.0 ? lo : hi) = mid;
  }
  const double eps = std::abs(excess(lo)) <= std::abs(excess(hi)) ? lo : hi;
  if (!(eps > 0.0) || std::abs(excess(eps)) > 1e-12) {
    fail(ErrorKind::NoFeasibleEpsilon, "could not solve for epsilon to 1e-12");
  }
  return MassMove{build(eps), mu, eps};
}

StepSwap exploit_step_swap(const Cdf& g_cdf, double a, double b, double eps, const GameSpec& g, std::size_t cells) {
  const auto& ground = g.ground();
  if (ground.is_discrete() || g.beta().density().pieces() != 1) {
    fail(ErrorKind::InvalidArgument, "the step swap needs a continuous battleground with uniform budget measure");
  }
  if (g_cdf.has_atoms() || !g_cdf.strictly_increasing()) {
    fail(ErrorKind::InvalidArgument, "the step swap needs a strictly increasing, atomless G");
  }
  if (!(a >= 0.0 && a < b && b <= g_cdf.support_hi() && eps > 0.0 && a + eps <= b)) {
    fail(ErrorKind::DegenerateInterval, "need 0 <= a < a + eps <= b <= top of support");
  }
  const double p_lo = a - eps <= g_cdf.support_lo() ? 0.0 : g_cdf.cdf(a - eps);
  const double p_hi = g_cdf.cdf(a + eps);
  if (!(p_hi > p_lo)) fail(ErrorKind::DegenerateInterval, "G puts no mass near a");
  const double inner = g_cdf.inverse_integral(p_lo, p_hi);
  const double b_width = inner / b;
  if (b_width > p_hi - p_lo) fail(ErrorKind::DegenerateInterval, "b is too small to carry the swapped budget");

  std::vector<double> grid;
  for (std::size_t j = 0; j <= cells; ++j) grid.push_back(static_cast<double>(j) / static_cast<double>(cells));
  grid.push_back(p_lo);
  grid.push_back(p_hi);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  const double len = ground.length();
  StepFunction base;
  StepFunction swap;
  base.breaks.push_back(0.0);
  swap.breaks.push_back(0.0);
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
    const double p0 = grid[j];
    const double p1 = grid[j + 1];
    const double avg = g_cdf.inverse_integral(p0, p1) / (p1 - p0);
    base.breaks.push_back(p1 * len);
    base.values.push_back(avg);
    if (p0 >= p_lo && p1 <= p_hi) continue;
    swap.breaks.push_back(p1 * len);
    swap.values.push_back(avg);
    if (p1 == p_lo) {
      const double split = p_hi - b_width;
      if (split > p_lo) {
        swap.breaks.push_back(split * len);
        swap.values.push_back(0.0);
      }
      swap.breaks.push_back(p_hi * len);
      swap.values.push_back(b);
    }
  }
  if (p_lo == 0.0) {
    // The swapped stretch starts at the left end; splice it in front.
    StepFunction head;
    head.breaks.push_back(0.0);
    const double split = p_hi - b_width;
    if (split > 0.0) {
      head.breaks.push_back(split * len);
      head.values.push_back(0.0);
    }
    head.breaks.push_back(p_hi * len);
    head.values.push_back(b);
    for (std::size_t i = 0; i < swap.values.size(); ++i) {
      head.breaks.push_back(swap.breaks[i + 1]);
      head.values.push_back(swap.values[i]);
    }
    swap = std::move(head);
  }
  base.breaks.back() = len;
  swap.breaks.back() = len;
  return StepSwap{Bid(ground, std::move(swap)), Bid(ground, std::move(base)), p_lo, p_hi};
}

// ---------------------------------------------------------------------------

LottoCheck lotto_budget_check(const StrategySource& source, const GameSpec& g, std::size_t player, std::size_t n,
                              const RngStream& rng) {
  if (n < 30) fail(ErrorKind::InvalidArgument, "the Lotto budget check needs n >= 30 draws");
  if (player >= g.k()) fail(ErrorKind::InvalidArgument, "player index out of range");
  RunningStats stats;
  for (std::size_t d = 0; d < n; ++d) {
    RngStream r = rng.split(d);
    stats.add(bid_integral(source(r), g.beta()));
  }
  LottoCheck out;
  out.n = n;
  out.mean = stats.mean;
  out.std_error = stats.std_error();
  out.budget = g.budgets()[player];
  out.pass = out.mean <= out.budget + 3.0 * out.std_error + kBudgetSlack;
  return out;
}

}  // namespace blotto
