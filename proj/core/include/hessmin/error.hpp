#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hessmin {

/// Failure classes raised by the library. Every public operation reports
/// failures by throwing hessmin::Error carrying one of these kinds.
enum class ErrorKind {
  InvalidArg,
  RejectedGeometry,
  RegionOutOfRange,
  NonFiniteEnergy,
  DegenerateModel,
  UnsupportedTestFunction,
  LineSearchStall,
  TooLarge,
  SingularSystem,
  InsufficientData,
  RadiiTooFine,
  DegenerateDenominator,
  EmptyRegion,
  InvalidParams,
  NoMatchingPairs,
  ParseError,
  ValidationError,
  IoError,
  FormatError,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hessmin
