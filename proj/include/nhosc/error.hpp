#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nhosc {

enum class ErrorKind {
  InvalidArgument,        // violated precondition or type invariant
  DimensionMismatch,
  SingularNormalization,  // 1 + L*R == 0
  DomainError,            // operation undefined for this parameter regime
  SolverFailure,
  IoFailure,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised when the shifted QR iteration exhausts its sweep budget.
// stuck_index is the row l of the subdiagonal entry H(l, l-1) that refused
// to deflate.
class SolverError : public Error {
 public:
  SolverError(std::size_t stuck_index, const std::string& what)
      : Error(ErrorKind::SolverFailure, what), stuck_index_(stuck_index) {}

  std::size_t stuck_index() const noexcept { return stuck_index_; }

 private:
  std::size_t stuck_index_;
};

}  // namespace nhosc
