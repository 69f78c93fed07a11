#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypoexp {

enum class ErrorCode {
  invalid_argument,
  non_positive_rate,
  not_distinct,
  too_few_rates,
  overflow,
  precision_loss,
  negative_density,
  non_convergence,
  zero_constant_term,
  order_mismatch,
  budget_exceeded,
  structure_violation,
  not_normalized,
  zero_divisor,
  grid_too_coarse,
  insufficient_data,
  non_positive_observation,
  parse_error,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hypoexp
