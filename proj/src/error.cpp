#include "dparity/error.hpp"

namespace dparity {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroRow: return "ZeroRow";
    case ErrorKind::ZeroColumn: return "ZeroColumn";
    case ErrorKind::NonPositiveExponent: return "NonPositiveExponent";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::EmptySubset: return "EmptySubset";
    case ErrorKind::SingularBasis: return "SingularBasis";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::ExhaustedCandidates: return "ExhaustedCandidates";
    case ErrorKind::ZeroPairing: return "ZeroPairing";
    case ErrorKind::CapMismatch: return "CapMismatch";
    case ErrorKind::NonUnitSeries: return "NonUnitSeries";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::SingularConfiguration: return "SingularConfiguration";
    case ErrorKind::RankDeficientLambda: return "RankDeficientLambda";
    case ErrorKind::ConvergenceUnknown: return "ConvergenceUnknown";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace dparity
