#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace curvegeo {

enum class ErrorKind {
  OutOfDomain,
  SingularJet,
  UmbilicPoint,
  NonTangentDirection,
  NonUnitSpeed,
  VanishingCurvature,
  DegenerateParameter,
  TooFewSamples,
  NonOrthogonalChart,
  ThetaOutOfRange,
  SingularDecomposition,
  UmbilicEncountered,
  BoundaryExit,
  PreimageMismatch,
  Tangency,
  UnknownFixture,
  UnknownSurface,
  InvalidArgument,
  Io,
  Config,
};

std::string_view to_string(ErrorKind kind);

/// Every library failure carries a kind so callers can branch without
/// parsing messages.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace curvegeo
