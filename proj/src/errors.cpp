#include "curvegeo/errors.hpp"

namespace curvegeo {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::SingularJet: return "SingularJet";
    case ErrorKind::UmbilicPoint: return "UmbilicPoint";
    case ErrorKind::NonTangentDirection: return "NonTangentDirection";
    case ErrorKind::NonUnitSpeed: return "NonUnitSpeed";
    case ErrorKind::VanishingCurvature: return "VanishingCurvature";
    case ErrorKind::DegenerateParameter: return "DegenerateParameter";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::NonOrthogonalChart: return "NonOrthogonalChart";
    case ErrorKind::ThetaOutOfRange: return "ThetaOutOfRange";
    case ErrorKind::SingularDecomposition: return "SingularDecomposition";
    case ErrorKind::UmbilicEncountered: return "UmbilicEncountered";
    case ErrorKind::BoundaryExit: return "BoundaryExit";
    case ErrorKind::PreimageMismatch: return "PreimageMismatch";
    case ErrorKind::Tangency: return "Tangency";
    case ErrorKind::UnknownFixture: return "UnknownFixture";
    case ErrorKind::UnknownSurface: return "UnknownSurface";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Io: return "Io";
    case ErrorKind::Config: return "Config";
  }
  return "Unknown";
}

}  // namespace curvegeo
