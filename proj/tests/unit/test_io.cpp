#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "blotto/error.hpp"
#include "blotto/io.hpp"

using namespace blotto;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = "io_test_" + name + ".json";
  std::ofstream(path) << text;
  return path;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("builtin game names") {
  const auto g = load_game_spec("interval-blotto:3");
  CHECK(g.game.k() == 3);
  CHECK(g.game.ground().kind() == GroundKind::Interval01);
  CHECK(g.scale == 1.0);
  const auto d = load_game_spec("discrete-blotto:2:4");
  CHECK(d.game.ground().battlefields() == 4);
  CHECK(d.scale == 4.0);
  CHECK(load_game_spec("circle-blotto:5").game.k() == 5);
  CHECK(kind_of([] { load_game_spec("interval-blotto:x"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { load_game_spec("discrete-blotto:2"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { load_game_spec("interval-blotto:0"); }) == ErrorKind::ValidationError);
}

TEST_CASE("game spec JSON with budget mass 4 is normalized") {
  const auto path = write_temp("mass4", R"({
    "k": 2, "battleground": {"kind": "discrete", "n": 4}, "budgets": [1, 1],
    "beta": {"kind": "discrete", "weights": [1, 1, 1, 1]},
    "value": {"kind": "discrete", "weights": [1, 2, 2, 1]}})");
  const auto g = load_game_spec(path);
  CHECK(g.scale == 4.0);
  CHECK(g.game.beta().weights() == std::vector<double>{0.25, 0.25, 0.25, 0.25});
  CHECK(g.game.upsilon() == 6.0);
  std::remove(path.c_str());
}

TEST_CASE("zero weight is a validation error naming absolute continuity") {
  const auto path = write_temp("zero", R"({
    "k": 2, "battleground": {"kind": "discrete", "n": 3}, "budgets": [1, 1],
    "beta": {"kind": "discrete", "weights": [1, 0, 1]},
    "value": {"kind": "discrete", "weights": [1, 1, 1]}})");
  try {
    load_game_spec(path);
    FAIL("accepted a zero weight");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ValidationError);
    CHECK(std::string(e.what()).find("absolutely continuous") != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("malformed files are parse errors") {
  const auto bad = write_temp("bad", "{\"k\": 2,");
  CHECK(kind_of([&] { load_game_spec(bad); }) == ErrorKind::ParseError);
  const auto missing = write_temp("missing", R"({"k": 2, "budgets": [1, 1]})");
  CHECK(kind_of([&] { load_game_spec(missing); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { load_game_spec("no_such_file.json"); }) == ErrorKind::ParseError);
  std::remove(bad.c_str());
  std::remove(missing.c_str());
}

TEST_CASE("mismatched measure grounds are rejected") {
  const auto path = write_temp("mismatch", R"({
    "k": 2, "battleground": {"kind": "interval"}, "budgets": [1, 1],
    "beta": {"kind": "discrete", "weights": [1, 1]},
    "value": {"kind": "interval", "breakpoints": [0, 1], "densities": [1]}})");
  CHECK(kind_of([&] { load_game_spec(path); }) == ErrorKind::ValidationError);
  std::remove(path.c_str());
}

TEST_CASE("round trips") {
  for (const auto& name : {"interval-blotto:3", "discrete-blotto:2:4", "circle-blotto:2"}) {
    const auto g = load_game_spec(name).game;
    const auto back = game_spec_from_json(to_json(g));
    CHECK(back.k() == g.k());
    CHECK(back.beta() == g.beta());
    CHECK(back.value() == g.value());
    CHECK(back.budgets() == g.budgets());
  }
  const Bid b(Battleground::interval01(), StepFunction({0.0, 0.1, 1.0}, {0.3, 1.0 / 3.0}));
  CHECK(bid_from_json(to_json(b), b.ground()) == b);
  const double w[] = {0.5, 1.5};
  CHECK(bid_from_json(to_json(Bid::discrete(w)), Battleground::discrete(2)) == Bid::discrete(w));
  const auto pi = equipartition_interval(4);
  const auto pj = equipartition_from_json(to_json(pi));
  CHECK(pj.segments() == pi.segments());
}

TEST_CASE("profiles parse from either layout") {
  const auto ground = Battleground::discrete(2);
  const auto a = profile_from_json(Json::parse(R"({"bids": [{"weights": [1, 1]}, {"weights": [2, 0]}]})"), ground);
  const auto b = profile_from_json(Json::parse(R"([{"weights": [1, 1]}, {"weights": [2, 0]}])"), ground);
  CHECK(a == b);
  CHECK(a.size() == 2);
  CHECK_THROWS_AS(profile_from_json(Json::parse(R"([{"weights": [1, 1, 1]}])"), ground), Error);
}

TEST_CASE("certificate JSON carries verdict, witness and provenance") {
  EquilibriumCertificate c;
  c.k = 2;
  c.seed = 9;
  c.stream = 4;
  c.n = 100;
  c.verdict = Verdict::Refuted;
  c.witness = Probe{"w", Bid::constant(Battleground::interval01(), 1.0)};
  c.witness_outcome = ProbeOutcome{"w", 1, 0.9, 0.0, 0.4};
  const auto j = to_json(c);
  CHECK(j["verdict"] == "refuted");
  CHECK(j["seed"] == 9);
  CHECK(j["stream"] == 4);
  CHECK(j["n"] == 100);
  CHECK(j["witness"]["gap"] == 0.4);
  CHECK(format_number(0.1) == "0.1");
}
