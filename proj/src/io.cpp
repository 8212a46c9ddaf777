#include "blotto/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "blotto/error.hpp"

namespace blotto {

namespace {

const char* kind_name(GroundKind kind) {
  switch (kind) {
    case GroundKind::Interval01: return "interval";
    case GroundKind::Discrete: return "discrete";
    case GroundKind::Circle: return "circle";
  }
  return "interval";
}

// Runs a parse step, mapping JSON access errors to ParseError and invariant
// breaches from the library to ValidationError.
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::ValidationError) throw;
    fail(ErrorKind::ValidationError, std::string(what) + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string(what) + ": " + e.what());
  }
}

const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object()) fail(ErrorKind::ParseError, std::string(what) + " must be a JSON object");
  auto it = j.find(key);
  if (it == j.end()) fail(ErrorKind::ParseError, std::string(what) + " is missing \"" + key + "\"");
  return *it;
}

std::vector<double> numbers(const Json& j, const char* what) {
  if (!j.is_array()) fail(ErrorKind::ParseError, std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) fail(ErrorKind::ParseError, std::string(what) + " must be an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::size_t count(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    fail(ErrorKind::ParseError, std::string(what) + " must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

}  // namespace

std::string format_number(double x) { return Json(x).dump(); }

Json to_json(const Battleground& ground) {
  Json j;
  j["kind"] = kind_name(ground.kind());
  if (ground.kind() == GroundKind::Discrete) j["n"] = ground.battlefields();
  if (ground.kind() == GroundKind::Circle) j["circumference"] = ground.length();
  return j;
}

Json to_json(const Measure& m) {
  Json j;
  j["kind"] = kind_name(m.ground().kind());
  if (m.ground().is_discrete()) {
    j["weights"] = m.weights();
  } else {
    j["breakpoints"] = m.density().breaks;
    j["densities"] = m.density().values;
  }
  return j;
}

Json to_json(const Bid& b) {
  Json j;
  if (b.ground().is_discrete()) {
    j["weights"] = b.weights();
  } else {
    j["breakpoints"] = b.values().breaks;
    j["values"] = b.values().values;
  }
  return j;
}

Json to_json(const GameSpec& g) {
  Json j;
  j["k"] = g.k();
  j["battleground"] = to_json(g.ground());
  j["budgets"] = g.budgets();
  j["beta"] = to_json(g.beta());
  j["value"] = to_json(g.value());
  return j;
}

Json to_json(const EquipartitionMap& pi) {
  Json j;
  j["k"] = pi.k();
  j["battleground"] = to_json(pi.ground());
  Json cells = Json::array();
  for (const auto& s : pi.segments()) cells.push_back({{"lo", s.lo}, {"hi", s.hi}, {"cell", s.cell}});
  j["cells"] = std::move(cells);
  return j;
}

Json to_json(const KsReport& r) {
  return {{"x", r.x}, {"n", r.n}, {"distance", r.distance}, {"threshold", r.threshold}, {"pass", r.pass}};
}

Json to_json(const MonteCarloEstimate& e) {
  Json players = Json::array();
  for (std::size_t i = 0; i < e.mean.size(); ++i) {
    players.push_back({{"player", i}, {"mean", e.mean[i]}, {"std_error", e.std_error[i]}});
  }
  return {{"n", e.n}, {"seed", e.seed}, {"stream", e.stream}, {"players", std::move(players)}};
}

Json to_json(const ProbeOutcome& o) {
  return {{"label", o.label}, {"player", o.player}, {"payoff", o.payoff}, {"std_error", o.std_error}, {"gap", o.gap}};
}

Json to_json(const EquilibriumCertificate& c) {
  Json j;
  j["verdict"] = c.verdict == Verdict::Refuted ? "refuted" : "consistent";
  j["k"] = c.k;
  j["upsilon"] = c.upsilon;
  j["fair_share"] = c.fair_share;
  j["n"] = c.n;
  j["seed"] = c.seed;
  j["stream"] = c.stream;
  Json players = Json::array();
  for (std::size_t i = 0; i < c.payoff_mean.size(); ++i) {
    players.push_back({{"player", i}, {"mean", c.payoff_mean[i]}, {"std_error", c.payoff_std_error[i]}});
  }
  j["payoffs"] = std::move(players);
  j["max_gap"] = c.max_gap;
  j["max_gap_std_error"] = c.max_gap_std_error;
  Json probes = Json::array();
  for (const auto& p : c.probes) probes.push_back(to_json(p));
  j["probes"] = std::move(probes);
  Json marginals = Json::array();
  for (const auto& m : c.marginals) marginals.push_back(to_json(m));
  j["marginals"] = std::move(marginals);
  if (c.witness && c.witness_outcome) {
    j["witness"] = {{"label", c.witness->label},
                    {"player", c.witness_outcome->player},
                    {"payoff", c.witness_outcome->payoff},
                    {"std_error", c.witness_outcome->std_error},
                    {"gap", c.witness_outcome->gap},
                    {"bid", to_json(c.witness->bid)}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Battleground battleground_from_json(const Json& j) {
  return guarded("battleground", [&] {
    const std::string kind = field(j, "kind", "battleground").get<std::string>();
    if (kind == "interval") return Battleground::interval01();
    if (kind == "discrete") return Battleground::discrete(count(field(j, "n", "discrete battleground"), "n"));
    if (kind == "circle") {
      const auto c = j.find("circumference");
      return Battleground::circle(c == j.end() ? 1.0 : c->get<double>());
    }
    fail(ErrorKind::ParseError, "unknown battleground kind \"" + kind + "\" (expected interval, discrete, circle)");
  });
}

Measure measure_from_json(const Json& j) {
  return guarded("measure", [&] {
    const std::string kind = field(j, "kind", "measure").get<std::string>();
    if (kind == "discrete" && j.contains("weights")) {
      const auto w = numbers(j["weights"], "weights");
      if (w.empty()) fail(ErrorKind::ValidationError, "discrete measure needs at least one weight");
      return Measure::weights(w);
    }
    auto breaks = numbers(field(j, "breakpoints", "measure"), "breakpoints");
    auto dens = numbers(field(j, "densities", "measure"), "densities");
    if (breaks.size() < 2) fail(ErrorKind::ValidationError, "measure needs at least two breakpoints");
    if (kind == "interval") return Measure(Battleground::interval01(), std::move(breaks), std::move(dens));
    if (kind == "circle") {
      const auto ground = Battleground::circle(breaks.back());
      return Measure(ground, std::move(breaks), std::move(dens));
    }
    if (kind == "discrete") {
      const double last = breaks.back();
      if (!(last >= 1.0) || last != std::floor(last)) {
        fail(ErrorKind::ValidationError, "discrete breakpoints must end at the battlefield count");
      }
      const auto ground = Battleground::discrete(static_cast<std::size_t>(last));
      return Measure(ground, std::move(breaks), std::move(dens));
    }
    fail(ErrorKind::ParseError, "unknown measure kind \"" + kind + "\" (expected interval, discrete, circle)");
  });
}

Measure measure_from_json(const Json& j, const Battleground& ground) {
  Measure m = measure_from_json(j);
  if (!(m.ground() == ground)) {
    fail(ErrorKind::ValidationError, "measure lives on a different battleground than the game");
  }
  return m;
}

Bid bid_from_json(const Json& j, const Battleground& ground) {
  return guarded("bid", [&] {
    if (j.is_object() && j.contains("weights")) {
      if (!ground.is_discrete()) fail(ErrorKind::ValidationError, "weights bids need a discrete battleground");
      const auto w = numbers(j["weights"], "weights");
      if (w.size() != ground.battlefields()) {
        fail(ErrorKind::ValidationError, "bid has " + std::to_string(w.size()) + " weights for " +
                                             std::to_string(ground.battlefields()) + " battlefields");
      }
      return Bid::discrete(w);
    }
    StepFunction f{numbers(field(j, "breakpoints", "bid"), "breakpoints"), numbers(field(j, "values", "bid"), "values")};
    return Bid(ground, std::move(f));
  });
}

GameSpec game_spec_from_json(const Json& j) {
  return guarded("game spec", [&] {
    const std::size_t k = count(field(j, "k", "game spec"), "k");
    const Battleground ground = battleground_from_json(field(j, "battleground", "game spec"));
    const auto budgets = numbers(field(j, "budgets", "game spec"), "budgets");
    const Measure beta = measure_from_json(field(j, "beta", "game spec"), ground);
    Measure value = measure_from_json(field(j, "value", "game spec"), ground);
    return GameSpec(k, budgets, beta, std::move(value));
  });
}

EquipartitionMap equipartition_from_json(const Json& j) {
  return guarded("partition", [&] {
    const std::size_t k = count(field(j, "k", "partition"), "k");
    const Battleground ground = battleground_from_json(field(j, "battleground", "partition"));
    std::vector<EquipartitionMap::Segment> segs;
    const Json& cells = field(j, "cells", "partition");
    if (!cells.is_array()) fail(ErrorKind::ParseError, "partition cells must be an array");
    for (const auto& c : cells) {
      segs.push_back({field(c, "lo", "cell").get<double>(), field(c, "hi", "cell").get<double>(),
                      count(field(c, "cell", "cell"), "cell")});
    }
    return EquipartitionMap(ground, k, std::move(segs));
  });
}

BidProfile profile_from_json(const Json& j, const Battleground& ground) {
  const Json& bids = j.is_array() ? j : field(j, "bids", "profile");
  if (!bids.is_array()) fail(ErrorKind::ParseError, "profile bids must be an array");
  BidProfile out;
  for (const auto& b : bids) out.push_back(bid_from_json(b, ground));
  return out;
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::ParseError, origin + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_json_text(text.str(), path);
}

namespace {

std::vector<std::size_t> builtin_args(const std::string& spec, std::size_t prefix, std::size_t expected) {
  std::vector<std::size_t> out;
  std::size_t pos = prefix;
  while (pos <= spec.size()) {
    const std::size_t next = std::min(spec.find(':', pos), spec.size());
    std::size_t v = 0;
    const auto* first = spec.data() + pos;
    const auto* last = spec.data() + next;
    const auto res = std::from_chars(first, last, v);
    if (first == last || res.ec != std::errc() || res.ptr != last) {
      fail(ErrorKind::ParseError, "bad integer in builtin game \"" + spec + "\"");
    }
    out.push_back(v);
    pos = next + 1;
  }
  if (out.size() != expected) fail(ErrorKind::ParseError, "builtin game \"" + spec + "\" has the wrong arity");
  return out;
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

}  // namespace

LoadedGame load_game_spec(const std::string& spec) {
  const std::string interval = "interval-blotto:";
  const std::string discrete = "discrete-blotto:";
  const std::string circle = "circle-blotto:";
  auto validated = [](auto&& make) {
    try {
      return make();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::ValidationError) throw;
      fail(ErrorKind::ValidationError, e.what());
    }
  };
  if (starts_with(spec, interval)) {
    const auto a = builtin_args(spec, interval.size(), 1);
    return validated([&] { return LoadedGame{interval_blotto(a[0]), spec, 1.0}; });
  }
  if (starts_with(spec, discrete)) {
    const auto a = builtin_args(spec, discrete.size(), 2);
    return validated([&] {
      const std::vector<double> values(a[1], 1.0);
      GameSpec g = discrete_blotto(a[0], values);
      const double scale = g.budget_scale();
      return LoadedGame{std::move(g), spec, scale};
    });
  }
  if (starts_with(spec, circle)) {
    const auto a = builtin_args(spec, circle.size(), 1);
    return validated([&] {
      GameSpec g = circle_blotto(a[0]);
      const double scale = g.budget_scale();
      return LoadedGame{std::move(g), spec, scale};
    });
  }
  GameSpec g = game_spec_from_json(read_json_file(spec));
  const double scale = g.budget_scale();
  return LoadedGame{std::move(g), spec, scale};
}

}  // namespace blotto
