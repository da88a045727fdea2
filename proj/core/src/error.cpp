#include "hessmin/error.hpp"

namespace hessmin {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArg: return "InvalidArg";
    case ErrorKind::RejectedGeometry: return "RejectedGeometry";
    case ErrorKind::RegionOutOfRange: return "RegionOutOfRange";
    case ErrorKind::NonFiniteEnergy: return "NonFiniteEnergy";
    case ErrorKind::DegenerateModel: return "DegenerateModel";
    case ErrorKind::UnsupportedTestFunction: return "UnsupportedTestFunction";
    case ErrorKind::LineSearchStall: return "LineSearchStall";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::RadiiTooFine: return "RadiiTooFine";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::EmptyRegion: return "EmptyRegion";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::NoMatchingPairs: return "NoMatchingPairs";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::FormatError: return "FormatError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace hessmin
