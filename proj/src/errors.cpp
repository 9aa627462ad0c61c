#include "wsnloc/errors.hpp"

namespace wsnloc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CollinearAnchors: return "CollinearAnchors";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::ParallelBearings: return "ParallelBearings";
    case ErrorKind::NonPositiveDistance: return "NonPositiveDistance";
    case ErrorKind::DegenerateVariance: return "DegenerateVariance";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::WrongGeometry: return "WrongGeometry";
    case ErrorKind::TooManySources: return "TooManySources";
    case ErrorKind::TooFewSources: return "TooFewSources";
    case ErrorKind::InsufficientElements: return "InsufficientElements";
    case ErrorKind::BesselNearZero: return "BesselNearZero";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::OutOfSupportedRange: return "OutOfSupportedRange";
    case ErrorKind::InvalidPlan: return "InvalidPlan";
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::NoPeaksFound: return "NoPeaksFound";
    case ErrorKind::RootSolveFailure: return "RootSolveFailure";
    case ErrorKind::ArcsinOutOfRange: return "ArcsinOutOfRange";
    case ErrorKind::RankDeficientSubspace: return "RankDeficientSubspace";
    case ErrorKind::BehindRay: return "BehindRay";
    case ErrorKind::AllIntersectionsFailed: return "AllIntersectionsFailed";
    case ErrorKind::SingularFusionMatrix: return "SingularFusionMatrix";
    case ErrorKind::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
    case ErrorKind::NearSingular: return "NearSingular";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::AllTrialsFailed: return "AllTrialsFailed";
  }
  return "Unknown";
}

}  // namespace wsnloc
