#include "share_sense/error.hpp"

namespace share_sense {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::kInvalidInput: return "InvalidInput";
        case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
        case ErrorCode::kInfeasible: return "Infeasible";
        case ErrorCode::kUnbounded: return "Unbounded";
        case ErrorCode::kSingularBasis: return "SingularBasis";
        case ErrorCode::kBracketFailure: return "BracketFailure";
        case ErrorCode::kDegenerateBase: return "DegenerateBase";
        case ErrorCode::kMismatchedSampleSize: return "MismatchedSampleSize";
        case ErrorCode::kIterationLimit: return "IterationLimit";
    }
    return "Unknown";
}

}  // namespace share_sense
