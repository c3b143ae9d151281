#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace perptail {

// Machine-readable failure codes. The CLI prints the code name and maps it to
// a nonzero exit status.
enum class ErrorCode {
  NoRoot,
  DivergedMoment,
  InvalidTilt,
  Infeasible,
  InvalidModel,
  QuantileFailure,
  NotContracting,
  TruncationNotConverged,
  CaseMismatch,
  HorizonExceeded,
  InsufficientMoment,
  EmptySample,
  GridTooCoarse,
  StepMismatch,
  FixedPointDiverged,
  MCNoiseTooLarge,
  NormalizerMismatch,
  NoDensity,
  InsufficientRange,
  ParamViolation,
  ConfigInvalid,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace perptail
