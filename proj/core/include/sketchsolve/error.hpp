#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sketchsolve {

enum class ErrorCode {
  BadDimensions,
  DimensionMismatch,
  NonFinite,
  NotSymmetric,
  RankDeficient,
  NotPositiveDefinite,
  NoConvergence,
  NotPowerOfTwo,
  TooLarge,
  EmptySketch,
  BadRatios,
  BadRho,
  InvalidZ,
  PoleInput,
  BadSchedule,
  InitRequiresXStar,
  EmptySamples,
  Io,
  Parse,
  BadConfig,
};

std::string_view to_string(ErrorCode code);

// All library failures surface as this exception; code() is stable and
// machine-readable, what() carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace sketchsolve
