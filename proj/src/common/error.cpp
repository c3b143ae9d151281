#include "perptail/common/error.hpp"

namespace perptail {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::DivergedMoment: return "DivergedMoment";
    case ErrorCode::InvalidTilt: return "InvalidTilt";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::QuantileFailure: return "QuantileFailure";
    case ErrorCode::NotContracting: return "NotContracting";
    case ErrorCode::TruncationNotConverged: return "TruncationNotConverged";
    case ErrorCode::CaseMismatch: return "CaseMismatch";
    case ErrorCode::HorizonExceeded: return "HorizonExceeded";
    case ErrorCode::InsufficientMoment: return "InsufficientMoment";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::StepMismatch: return "StepMismatch";
    case ErrorCode::FixedPointDiverged: return "FixedPointDiverged";
    case ErrorCode::MCNoiseTooLarge: return "MCNoiseTooLarge";
    case ErrorCode::NormalizerMismatch: return "NormalizerMismatch";
    case ErrorCode::NoDensity: return "NoDensity";
    case ErrorCode::InsufficientRange: return "InsufficientRange";
    case ErrorCode::ParamViolation: return "ParamViolation";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace perptail
