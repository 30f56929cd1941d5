#include "sketchsolve/error.hpp"

namespace sketchsolve {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadDimensions: return "BadDimensions";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::EmptySketch: return "EmptySketch";
    case ErrorCode::BadRatios: return "BadRatios";
    case ErrorCode::BadRho: return "BadRho";
    case ErrorCode::InvalidZ: return "InvalidZ";
    case ErrorCode::PoleInput: return "PoleInput";
    case ErrorCode::BadSchedule: return "BadSchedule";
    case ErrorCode::InitRequiresXStar: return "InitRequiresXStar";
    case ErrorCode::EmptySamples: return "EmptySamples";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::BadConfig: return "BadConfig";
  }
  return "Unknown";
}

}  // namespace sketchsolve
