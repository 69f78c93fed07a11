#include "hypoexp/error.hpp"

namespace hypoexp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::non_positive_rate: return "NonPositiveRate";
    case ErrorCode::not_distinct: return "NotDistinct";
    case ErrorCode::too_few_rates: return "TooFewRates";
    case ErrorCode::overflow: return "Overflow";
    case ErrorCode::precision_loss: return "PrecisionLoss";
    case ErrorCode::negative_density: return "NegativeDensity";
    case ErrorCode::non_convergence: return "NonConvergence";
    case ErrorCode::zero_constant_term: return "ZeroConstantTerm";
    case ErrorCode::order_mismatch: return "OrderMismatch";
    case ErrorCode::budget_exceeded: return "BudgetExceeded";
    case ErrorCode::structure_violation: return "StructureViolation";
    case ErrorCode::not_normalized: return "NotNormalized";
    case ErrorCode::zero_divisor: return "ZeroDivisor";
    case ErrorCode::grid_too_coarse: return "GridTooCoarse";
    case ErrorCode::insufficient_data: return "InsufficientData";
    case ErrorCode::non_positive_observation: return "NonPositiveObservation";
    case ErrorCode::parse_error: return "ParseError";
  }
  return "Unknown";
}

}  // namespace hypoexp
