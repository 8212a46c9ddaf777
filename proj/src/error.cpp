#include "blotto/error.hpp"

namespace blotto {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::ProfileLengthMismatch: return "ProfileLengthMismatch";
    case ErrorKind::NonPositiveShape: return "NonPositiveShape";
    case ErrorKind::PlayerCountTooSmall: return "PlayerCountTooSmall";
    case ErrorKind::EmptyValues: return "EmptyValues";
    case ErrorKind::NotEquipartitionable: return "NotEquipartitionable";
    case ErrorKind::AsymmetricGame: return "AsymmetricGame";
    case ErrorKind::BadPartition: return "BadPartition";
    case ErrorKind::SinglePlayer: return "SinglePlayer";
    case ErrorKind::AtomicOpponentMarginal: return "AtomicOpponentMarginal";
    case ErrorKind::OffBudgetMean: return "OffBudgetMean";
    case ErrorKind::InfeasibleProbe: return "InfeasibleProbe";
    case ErrorKind::DeltaOutOfRange: return "DeltaOutOfRange";
    case ErrorKind::NotFlatOnGap: return "NotFlatOnGap";
    case ErrorKind::NoFeasibleEpsilon: return "NoFeasibleEpsilon";
    case ErrorKind::DegenerateInterval: return "DegenerateInterval";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace blotto
