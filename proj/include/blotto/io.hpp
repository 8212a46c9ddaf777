#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "blotto/equilibrium.hpp"
#include "blotto/game.hpp"
#include "blotto/payoff.hpp"
#include "blotto/verify.hpp"

namespace blotto {

using Json = nlohmann::ordered_json;

Json to_json(const Battleground& ground);
Json to_json(const Measure& m);
Json to_json(const Bid& b);
Json to_json(const GameSpec& g);
Json to_json(const EquipartitionMap& pi);
Json to_json(const KsReport& r);
Json to_json(const MonteCarloEstimate& e);
Json to_json(const ProbeOutcome& o);
Json to_json(const EquilibriumCertificate& c);

/// Parse failures raise ParseError; well-formed input that breaks an
/// invariant raises ValidationError naming it.
Battleground battleground_from_json(const Json& j);
Measure measure_from_json(const Json& j);
/// Parses a measure that must live on `ground`.
Measure measure_from_json(const Json& j, const Battleground& ground);
Bid bid_from_json(const Json& j, const Battleground& ground);
GameSpec game_spec_from_json(const Json& j);
EquipartitionMap equipartition_from_json(const Json& j);

/// A profile file is {"bids": [...]} or a bare array of bids.
BidProfile profile_from_json(const Json& j, const Battleground& ground);

Json parse_json_text(const std::string& text, const std::string& origin);
Json read_json_file(const std::string& path);

struct LoadedGame {
  GameSpec game;
  std::string name;
  /// Total mass of β before normalization.
  double scale;
};

/// `interval-blotto:k`, `discrete-blotto:k:n`, `circle-blotto:k`, or a path
/// to a GameSpec JSON file.
LoadedGame load_game_spec(const std::string& path_or_builtin);

/// Shortest round-trip decimal form of x, as JSON renders it.
std::string format_number(double x);

}  // namespace blotto
