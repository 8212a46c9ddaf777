#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace blotto {

enum class ErrorKind {
  SpaceMismatch,
  ProfileLengthMismatch,
  NonPositiveShape,
  PlayerCountTooSmall,
  EmptyValues,
  NotEquipartitionable,
  AsymmetricGame,
  BadPartition,
  SinglePlayer,
  AtomicOpponentMarginal,
  OffBudgetMean,
  InfeasibleProbe,
  DeltaOutOfRange,
  NotFlatOnGap,
  NoFeasibleEpsilon,
  DegenerateInterval,
  ParseError,
  ValidationError,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure in the library is reported through this type. The kind names
/// the violated contract; the message carries the details.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace blotto
