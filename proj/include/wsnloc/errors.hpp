#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wsnloc {

enum class ErrorKind {
  CollinearAnchors,
  LengthMismatch,
  ParallelBearings,
  NonPositiveDistance,
  DegenerateVariance,
  SingularSystem,
  WrongGeometry,
  TooManySources,
  TooFewSources,
  InsufficientElements,
  BesselNearZero,
  DimensionMismatch,
  OutOfSupportedRange,
  InvalidPlan,
  NonHermitian,
  NoPeaksFound,
  RootSolveFailure,
  ArcsinOutOfRange,
  RankDeficientSubspace,
  BehindRay,
  AllIntersectionsFailed,
  SingularFusionMatrix,
  DegenerateLeadingCoefficient,
  NearSingular,
  InvalidArgument,
  ConfigError,
  IoError,
  AllTrialsFailed,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace wsnloc
