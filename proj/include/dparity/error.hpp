#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dparity {

enum class ErrorKind {
  ZeroRow,
  ZeroColumn,
  NonPositiveExponent,
  DimensionMismatch,
  EmptySubset,
  SingularBasis,
  SingularMatrix,
  ExhaustedCandidates,
  ZeroPairing,
  CapMismatch,
  NonUnitSeries,
  CapExceeded,
  SingularConfiguration,
  RankDeficientLambda,
  ConvergenceUnknown,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so that callers (the CLI
// in particular) can map it onto exit codes without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dparity
