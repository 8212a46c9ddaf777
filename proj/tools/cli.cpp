#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "blotto/error.hpp"
#include "blotto/io.hpp"

namespace blotto::cli {

namespace {

enum class Format { Json, Csv };

struct RunConfig {
  std::string command;
  std::string game;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::size_t n = 1000;
  Format format = Format::Json;
  std::string out;
  std::vector<double> points;
  std::string profile;
  std::string sources = "equilibrium";
  std::size_t probes = 50;
  std::string partition = "auto";
  double delta = 0.1;
};

struct Report {
  Json json;
  std::string csv;
  int status = kExitOk;
};

std::string num(double x) { return format_number(x); }

EquipartitionMap choose_partition(const GameSpec& g, const std::string& spec) {
  if (spec != "auto") return equipartition_from_json(read_json_file(spec));
  if (g.ground().is_discrete()) {
    const auto w = g.value().weights();
    return equipartition_discrete(w.size(), g.k(), w);
  }
  return equipartition_value_quantiles(g.value(), g.k());
}

ProfileSources make_sources(const GameSpec& g, const RunConfig& cfg) {
  const std::string& s = cfg.profile.empty() ? cfg.sources : cfg.profile;
  if (s == "equilibrium") return ProfileSources::equilibrium_profile(g, choose_partition(g, cfg.partition));
  if (s.rfind("constant:", 0) == 0) {
    double c = 0.0;
    try {
      std::size_t used = 0;
      c = std::stod(s.substr(9), &used);
      if (used != s.size() - 9) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      fail(ErrorKind::ParseError, "bad constant source \"" + s + "\"");
    }
    return ProfileSources::repeated(StrategySource::constant(g.ground(), c), g.k());
  }
  const BidProfile bids = profile_from_json(read_json_file(s), g.ground());
  if (bids.size() == 1) return ProfileSources::repeated(StrategySource::fixed(bids[0], "profile"), g.k());
  if (bids.size() != g.k()) {
    fail(ErrorKind::ProfileLengthMismatch,
         "profile file has " + std::to_string(bids.size()) + " bids for a " + std::to_string(g.k()) + "-player game");
  }
  std::vector<StrategySource> players;
  for (std::size_t i = 0; i < bids.size(); ++i) {
    players.push_back(StrategySource::fixed(bids[i], "profile:" + std::to_string(i)));
  }
  auto out = ProfileSources::of(std::move(players));
  out.symmetric = std::all_of(bids.begin(), bids.end(), [&](const Bid& b) { return b == bids.front(); });
  return out;
}

std::vector<double> default_points(const GameSpec& g) {
  std::vector<double> pts;
  const auto& ground = g.ground();
  if (ground.is_discrete()) {
    for (std::size_t j = 0; j < std::min<std::size_t>(5, ground.battlefields()); ++j) pts.push_back(double(j));
  } else {
    for (int j = 0; j < 5; ++j) pts.push_back(ground.length() * (j + 0.5) / 5.0);
  }
  return pts;
}

Json header(const RunConfig& cfg, const LoadedGame& lg, bool stochastic) {
  Json j;
  j["command"] = cfg.command;
  j["game"] = lg.name;
  j["k"] = lg.game.k();
  j["budget_scale"] = lg.scale;
  if (stochastic) {
    j["seed"] = cfg.seed;
    j["stream"] = cfg.stream;
    j["n"] = cfg.n;
  }
  return j;
}

std::string csv_meta(const Json& head) {
  std::string s;
  for (const auto& [key, value] : head.items()) s += "# " + key + "=" + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
  return s;
}

// ---------------------------------------------------------------------------

Report cmd_sample(const RunConfig& cfg, const LoadedGame& lg) {
  const GameSpec& g = lg.game;
  const EquilibriumSampler sampler(g, choose_partition(g, cfg.partition));
  const RngStream rng(cfg.seed, cfg.stream);
  Report r;
  r.json = header(cfg, lg, true);
  Json bids = Json::array();
  std::string rows = "draw,integral,breakpoints,values\n";
  for (std::size_t d = 0; d < cfg.n; ++d) {
    RngStream draw = rng.split(d);
    const Bid bid = sampler.sample(draw);
    const double integral = bid_integral(bid, g.beta());
    Json b = to_json(bid);
    b["integral"] = integral;
    bids.push_back(std::move(b));
    std::string br;
    std::string vs;
    for (std::size_t i = 0; i < bid.values().breaks.size(); ++i) br += (i ? ";" : "") + num(bid.values().breaks[i]);
    for (std::size_t i = 0; i < bid.values().values.size(); ++i) vs += (i ? ";" : "") + num(bid.values().values[i]);
    rows += std::to_string(d) + "," + num(integral) + "," + br + "," + vs + "\n";
  }
  r.json["bids"] = std::move(bids);
  r.csv = csv_meta(header(cfg, lg, true)) + rows;
  return r;
}

Report cmd_payoff(const RunConfig& cfg, const LoadedGame& lg) {
  const GameSpec& g = lg.game;
  Report r;
  std::vector<double> mean;
  std::vector<double> se;
  std::size_t n = 1;
  if (!cfg.profile.empty()) {
    const auto bids = profile_from_json(read_json_file(cfg.profile), g.ground());
    mean = exact_utilities(bids, g).utilities;
    se.assign(mean.size(), 0.0);
    r.json = header(cfg, lg, false);
    r.json["exact"] = true;
    r.json["n"] = 1;
  } else {
    const auto sources = make_sources(g, cfg);
    const auto est = monte_carlo_utilities(sources.players, g, cfg.n, RngStream(cfg.seed, cfg.stream));
    mean = est.mean;
    se = est.std_error;
    n = est.n;
    r.json = header(cfg, lg, true);
    r.json["exact"] = false;
  }
  r.json["upsilon"] = g.upsilon();
  Json players = Json::array();
  std::string rows = "player,mean,std_error,n\n";
  double total = 0.0;
  for (std::size_t i = 0; i < mean.size(); ++i) {
    players.push_back({{"player", i}, {"mean", mean[i]}, {"std_error", se[i]}});
    rows += std::to_string(i) + "," + num(mean[i]) + "," + num(se[i]) + "," + std::to_string(n) + "\n";
    total += mean[i];
  }
  r.json["players"] = std::move(players);
  r.json["total"] = total;
  r.csv = csv_meta(r.json.contains("seed") ? header(cfg, lg, true) : header(cfg, lg, false)) + rows;
  return r;
}

Report cmd_certify(const RunConfig& cfg, const LoadedGame& lg) {
  const GameSpec& g = lg.game;
  const auto sources = make_sources(g, cfg);
  const RngStream rng(cfg.seed, cfg.stream);
  const auto probes = default_probe_family(g, sources, rng.split(3), cfg.probes);
  const auto points = cfg.points.empty() ? default_points(g) : cfg.points;
  const auto cert = certify(sources, g, probes, cfg.n, rng, points);
  Report r;
  r.json = header(cfg, lg, true);
  r.json["sources"] = cfg.profile.empty() ? cfg.sources : cfg.profile;
  r.json["certificate"] = to_json(cert);
  std::string rows = "label,player,payoff,std_error,gap\n";
  for (const auto& p : cert.probes) {
    rows += p.label + "," + std::to_string(p.player) + "," + num(p.payoff) + "," + num(p.std_error) + "," +
            num(p.gap) + "\n";
  }
  Json meta = header(cfg, lg, true);
  meta["verdict"] = cert.verdict == Verdict::Refuted ? "refuted" : "consistent";
  meta["max_gap"] = cert.max_gap;
  r.csv = csv_meta(meta) + rows;
  r.status = cert.verdict == Verdict::Refuted ? kExitRefuted : kExitOk;
  return r;
}

Report cmd_marginal(const RunConfig& cfg, const LoadedGame& lg) {
  const GameSpec& g = lg.game;
  const auto sources = make_sources(g, cfg);
  const RngStream rng(cfg.seed, cfg.stream);
  const auto points = cfg.points.empty() ? default_points(g) : cfg.points;
  Report r;
  r.json = header(cfg, lg, true);
  Json reports = Json::array();
  std::string rows = "x,n,distance,threshold,pass\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto ks = ks_marginal_test(sources.players.front(), g, points[i], cfg.n, rng.split(i));
    reports.push_back(to_json(ks));
    rows += num(ks.x) + "," + std::to_string(ks.n) + "," + num(ks.distance) + "," + num(ks.threshold) + "," +
            (ks.pass ? "true" : "false") + "\n";
  }
  r.json["marginals"] = std::move(reports);
  r.csv = csv_meta(header(cfg, lg, true)) + rows;
  return r;
}

// ---------------------------------------------------------------------------

struct ExploitResult {
  std::string name;
  bool applicable = false;
  std::string reason;
  double payoff = 0.0;
  double std_error = 0.0;
  double gain = 0.0;
  Json detail = Json::object();
};

// Pooled draws of the opponents' bids at β-random points.
std::vector<double> pooled_marginal(const GameSpec& g, const ProfileSources& s, const RngStream& rng) {
  std::vector<double> pooled;
  for (std::size_t d = 0; d < 256; ++d) {
    const RngStream draw = rng.split(d);
    for (std::size_t j = 0; j + 1 < g.k(); ++j) {
      RngStream r = draw.split(j);
      const Bid bid = s.players[j](r);
      for (int t = 0; t < 4; ++t) pooled.push_back(bid.at(g.beta().quantile(r.uniform())));
    }
  }
  return pooled;
}

// Payoff of a pure deviation by the last seat.
std::pair<double, double> deviation_value(const Bid& bid, const GameSpec& g, const ProfileSources& s, std::size_t n,
                                          const RngStream& rng) {
  if (s.equilibrium && g.symmetric()) return {deviation_payoff_oracle(bid, g), 0.0};
  ProfileSources one_seat = s;
  one_seat.symmetric = true;
  const auto cert = best_response_probe(one_seat, g, {Probe{"deviation", bid}}, n, rng);
  return {cert.probes.front().payoff, cert.probes.front().std_error};
}

ExploitResult run_atom(const GameSpec& g, const ProfileSources& s, const std::vector<double>& pooled, double delta,
                       std::size_t n, const RngStream& rng) {
  ExploitResult out;
  out.name = "atom";
  double atom = 0.0;
  double eta = 0.0;
  if (!s.equilibrium) {
    std::map<double, std::size_t> counts;
    for (double v : pooled) ++counts[v];
    for (const auto& [v, c] : counts) {
      const double share = double(c) / double(pooled.size());
      if (share > eta) {
        eta = share;
        atom = v;
      }
    }
  }
  try {
    const AtomExploit ex = exploit_atom_strategy(g, atom, eta, delta);
    auto players = s.players;
    players.back() = ex.wrap(players.back());
    const bool det = std::all_of(players.begin(), players.end(), [](const auto& p) { return p.deterministic; });
    const auto est = monte_carlo_utilities(players, g, det ? 1 : n, rng);
    out.applicable = true;
    out.payoff = est.mean.back();
    out.std_error = est.std_error.back();
    out.detail = {{"atom", atom}, {"eta", eta}, {"delta", delta}, {"bound", ex.gain_bound}};
  } catch (const Error& e) {
    out.reason = e.what();
  }
  return out;
}

ExploitResult run_mass_move(const GameSpec& g, const ProfileSources& s, std::vector<double> pooled, std::size_t n,
                            const RngStream& rng) {
  ExploitResult out;
  out.name = "mass_move";
  const double budget = g.budgets().back();
  try {
    std::optional<Cdf> marginal;
    double a = 0.0;
    double b = 0.0;
    double big = 0.0;
    double small = 0.0;
    if (s.equilibrium) {
      marginal = equilibrium_marginal_cdf(g.k(), g.upsilon(), g.ratio().at(0.0));
      const double top = marginal->support_hi();
      a = 0.25 * top;
      b = 0.5 * top;
      big = 0.1 * top;
      small = 0.05 * top;
    } else {
      double mean = 0.0;
      for (double v : pooled) mean += v;
      mean /= double(pooled.size());
      if (!(mean > 0.0)) fail(ErrorKind::NotFlatOnGap, "opponents never bid");
      for (double& v : pooled) v /= mean;
      std::sort(pooled.begin(), pooled.end());
      pooled.erase(std::unique(pooled.begin(), pooled.end()), pooled.end());
      if (pooled.size() < 2) fail(ErrorKind::NotFlatOnGap, "opponent marginal has a single support point");
      std::size_t widest = 0;
      for (std::size_t i = 1; i + 1 < pooled.size(); ++i) {
        if (pooled[i + 1] - pooled[i] > pooled[widest + 1] - pooled[widest]) widest = i;
      }
      const double w = pooled[widest + 1] - pooled[widest];
      a = pooled[widest];
      b = a + 0.8 * w;
      big = 0.5 * w;
      small = 0.25 * w;
      std::vector<double> samples = pooled_marginal(g, s, rng.split(1));
      for (double& v : samples) v /= mean;
      marginal = Cdf::empirical(samples);
    }
    const auto mm = exploit_mass_move_cdf(*marginal, a, b, big, small);
    const Bid bid = inverse_cdf_strategy(mm.h, g).scaled(budget);
    const auto [payoff, se] = deviation_value(bid, g, s, n, rng.split(2));
    out.applicable = true;
    out.payoff = payoff;
    out.std_error = se;
    out.detail = {{"a", a}, {"b", b}, {"Delta", big}, {"delta", small}, {"mu", mm.mu}, {"epsilon", mm.epsilon}};
  } catch (const Error& e) {
    out.reason = e.what();
  }
  return out;
}

ExploitResult run_step_swap(const GameSpec& g, const ProfileSources& s, std::vector<double> pooled, std::size_t n,
                            const RngStream& rng) {
  ExploitResult out;
  out.name = "step_swap";
  const double budget = g.budgets().back();
  try {
    std::optional<Cdf> marginal;
    if (s.equilibrium) {
      marginal = equilibrium_marginal_cdf(g.k(), g.upsilon(), g.ratio().at(0.0));
    } else {
      std::sort(pooled.begin(), pooled.end());
      std::vector<double> knots;
      std::vector<double> levels;
      for (std::size_t i = 0; i < pooled.size(); ++i) {
        if (i + 1 < pooled.size() && pooled[i + 1] == pooled[i]) continue;
        knots.push_back(pooled[i]);
        levels.push_back(knots.size() == 1 ? 0.0 : double(i + 1) / double(pooled.size()));
      }
      if (knots.size() < 2) fail(ErrorKind::DegenerateInterval, "opponent marginal has a single support point");
      marginal = Cdf::piecewise_linear(knots, levels);
    }
    const double lo = marginal->support_lo();
    const double top = marginal->support_hi();
    const double a = lo + 0.5 * (top - lo);
    const double eps = 0.05 * (top - lo);
    const auto swap = exploit_step_swap(*marginal, a, top, eps, g);
    const double norm = budget / bid_integral(swap.baseline, g.beta());
    const auto [payoff, se] = deviation_value(swap.swapped.scaled(norm), g, s, n, rng.split(1));
    const auto [base, base_se] = deviation_value(swap.baseline.scaled(norm), g, s, n, rng.split(1));
    out.applicable = true;
    out.payoff = payoff;
    out.std_error = se;
    out.detail = {{"a", a}, {"b", top}, {"eps", eps}, {"baseline_payoff", base}, {"baseline_std_error", base_se}};
  } catch (const Error& e) {
    out.reason = e.what();
  }
  return out;
}

Report cmd_exploit(const RunConfig& cfg, const LoadedGame& lg) {
  const GameSpec& g = lg.game;
  if (g.k() < 2) fail(ErrorKind::SinglePlayer, "exploits need at least two players");
  const auto sources = make_sources(g, cfg);
  const RngStream rng(cfg.seed, cfg.stream);
  const auto pooled = pooled_marginal(g, sources, rng.split(0));
  std::vector<ExploitResult> results{run_atom(g, sources, pooled, cfg.delta, cfg.n, rng.split(1)),
                                     run_mass_move(g, sources, pooled, cfg.n, rng.split(2)),
                                     run_step_swap(g, sources, pooled, cfg.n, rng.split(3))};
  const double share = g.upsilon() / double(g.k());
  Report r;
  r.json = header(cfg, lg, true);
  r.json["sources"] = cfg.profile.empty() ? cfg.sources : cfg.profile;
  r.json["fair_share"] = share;
  Json list = Json::array();
  std::string rows = "exploit,applicable,payoff,std_error,gain\n";
  for (auto& e : results) {
    if (e.applicable) e.gain = e.payoff - share;
    Json j = {{"name", e.name}, {"applicable", e.applicable}};
    if (e.applicable) {
      j["payoff"] = e.payoff;
      j["std_error"] = e.std_error;
      j["gain"] = e.gain;
      j["detail"] = e.detail;
    } else {
      j["reason"] = e.reason;
    }
    list.push_back(std::move(j));
    rows += e.name + "," + (e.applicable ? "true" : "false") + "," + num(e.payoff) + "," + num(e.std_error) + "," +
            num(e.gain) + "\n";
  }
  r.json["exploits"] = std::move(list);
  r.csv = csv_meta(header(cfg, lg, true)) + rows;
  return r;
}

// ---------------------------------------------------------------------------

void add_common(CLI::App* sub, RunConfig& cfg, bool stochastic) {
  sub->add_option("--game", cfg.game, "builtin name or GameSpec JSON path")->required();
  sub->add_option("--format", cfg.format, "report format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"json", Format::Json}, {"csv", Format::Csv}}));
  sub->add_option("--out", cfg.out, "report path (default stdout)");
  sub->add_option("--partition", cfg.partition, "equipartition JSON path, or auto");
  if (stochastic) {
    sub->add_option("--seed", cfg.seed, "RNG seed")->required();
    sub->add_option("--stream", cfg.stream, "RNG stream id");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Measure-space multiplayer Blotto: sample equilibria, score profiles and test for deviations", "blotto"};
  app.require_subcommand(1);

  auto* sample = app.add_subcommand("sample", "draw equilibrium bids and their budget integrals");
  add_common(sample, cfg, true);
  sample->add_option("--n", cfg.n, "number of bids")->default_val(1);

  auto* payoff = app.add_subcommand("payoff", "exact utilities of a bid profile, or Monte Carlo over sources");
  add_common(payoff, cfg, false);
  payoff->add_option("--profile", cfg.profile, "bid-profile JSON");
  payoff->add_option("--sources", cfg.sources, "equilibrium | constant:c | profile path");
  payoff->add_option("--seed", cfg.seed, "RNG seed");
  payoff->add_option("--stream", cfg.stream, "RNG stream id");
  payoff->add_option("--n", cfg.n, "Monte Carlo draws");

  auto* cert = app.add_subcommand("certify", "best-response probing and marginal KS tests");
  add_common(cert, cfg, true);
  cert->add_option("--sources", cfg.sources, "equilibrium | constant:c | profile path");
  cert->add_option("--profile", cfg.profile, "bid-profile JSON (same as --sources PATH)");
  cert->add_option("--n", cfg.n, "draws");
  cert->add_option("--points", cfg.points, "points for marginal tests");
  cert->add_option("--probes", cfg.probes, "random step probes");

  auto* marginal = app.add_subcommand("marginal", "KS tests of player 0's marginal at given points");
  add_common(marginal, cfg, true);
  marginal->add_option("--sources", cfg.sources, "equilibrium | constant:c | profile path");
  marginal->add_option("--profile", cfg.profile, "bid-profile JSON");
  marginal->add_option("--n", cfg.n, "draws per point");
  marginal->add_option("--points", cfg.points, "points to test");

  auto* exploit = app.add_subcommand("exploit", "atom, mass-move and step-swap deviations against a profile");
  add_common(exploit, cfg, true);
  exploit->add_option("--sources", cfg.sources, "equilibrium | constant:c | profile path");
  exploit->add_option("--profile", cfg.profile, "bid-profile JSON");
  exploit->add_option("--n", cfg.n, "draws");
  exploit->add_option("--delta", cfg.delta, "atom exploit prefix mass");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    if (cfg.command == "payoff" && cfg.profile.empty() && payoff->count("--seed") == 0) {
      fail(ErrorKind::InvalidArgument, "payoff over strategy sources needs --seed");
    }
    if (cfg.n < 1) fail(ErrorKind::InvalidArgument, "--n must be at least 1");
    const LoadedGame lg = load_game_spec(cfg.game);
    Report report;
    if (cfg.command == "sample") report = cmd_sample(cfg, lg);
    if (cfg.command == "payoff") report = cmd_payoff(cfg, lg);
    if (cfg.command == "certify") report = cmd_certify(cfg, lg);
    if (cfg.command == "marginal") report = cmd_marginal(cfg, lg);
    if (cfg.command == "exploit") report = cmd_exploit(cfg, lg);

    const std::string text = cfg.format == Format::Json ? report.json.dump(2) + "\n" : report.csv;
    if (cfg.out.empty()) {
      out << text;
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file) fail(ErrorKind::InvalidArgument, "cannot write " + cfg.out);
      file << text;
    }
    return report.status;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace blotto::cli
