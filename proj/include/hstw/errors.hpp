#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hstw {

enum class ErrorKind {
  InvalidParams,
  NoWave,
  NoSignChange,
  MaxIterExceeded,
  SingularPivot,
  StepSizeUnderflow,
  StepPsiUnsupported,
  BracketFailure,
  CFLViolation,
  InsufficientSamples,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so the CLI can map it
/// onto a stable exit code.
class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// NoWave and InvalidParams are "the physics says no"; everything else is a
  /// numerical failure.
  bool is_no_wave() const noexcept {
    return kind_ == ErrorKind::NoWave || kind_ == ErrorKind::InvalidParams;
  }

 private:
  ErrorKind kind_;
};

}  // namespace hstw
