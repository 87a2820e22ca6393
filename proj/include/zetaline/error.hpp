#pragma once

#include <stdexcept>
#include <string>

namespace zetaline {

enum class ErrorCode {
  kUsage,
  kDomain,
  kPole,
  kRegion,
  kPrecisionCeiling,
  kInsufficientPrecision,
  kInsufficientTable,
  kToleranceNotMet,
  kTailBoundUnreachable,
  kSlowConvergence,
  kNonConvergence,
  kContourHitsPole,
  kCircleTooClose,
  kSingularityIsolation,
  kIo,
};

const char* error_name(ErrorCode code);

// CLI exit code: 2 for bad input, 3 for precision/tolerance that cannot be reached.
int exit_code_for(ErrorCode code);

class NumericError : public std::runtime_error {
 public:
  NumericError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace zetaline
