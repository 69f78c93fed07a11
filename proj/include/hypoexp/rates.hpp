#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hypoexp {

inline constexpr double kDefaultDistinctTolerance = 1e-9;

/// Pairwise-distinct positive exponential rates, stored ascending.
///
/// The permutation from sorted position back to the caller's input position is
/// kept so results can be reported in the order the rates were given.
class RateVector {
 public:
  std::span<const double> values() const noexcept { return rates_; }
  std::size_t size() const noexcept { return rates_.size(); }
  double operator[](std::size_t i) const { return rates_[i]; }
  double min() const noexcept { return rates_.front(); }
  double max() const noexcept { return rates_.back(); }

  /// input_index()[k] is the position in the raw input of sorted entry k.
  std::span<const std::size_t> input_index() const noexcept { return input_index_; }

  /// Reorders a per-rate quantity (indexed like values()) into input order.
  std::vector<double> to_input_order(std::span<const double> sorted) const;

 private:
  friend RateVector validate_rates(std::span<const double>, double);
  RateVector(std::vector<double> rates, std::vector<std::size_t> index)
      : rates_(std::move(rates)), input_index_(std::move(index)) {}

  std::vector<double> rates_;
  std::vector<std::size_t> input_index_;
};

/// Dimensionless scale coefficients mu_1 > mu_2 > ... > mu_n > 0.
///
/// Scales relate to rates through lambda_i = lambda / mu_i, so the descending
/// scale order lines up index-for-index with the ascending rate order.
class ScaleVector {
 public:
  std::span<const double> values() const noexcept { return scales_; }
  std::size_t size() const noexcept { return scales_.size(); }
  double operator[](std::size_t i) const { return scales_[i]; }
  std::span<const std::size_t> input_index() const noexcept { return input_index_; }

  /// Rates lambda / mu_i for a reference rate lambda (ascending).
  RateVector to_rates(double reference_rate = 1.0) const;

 private:
  friend ScaleVector validate_scales(std::span<const double>, double);
  ScaleVector(std::vector<double> scales, std::vector<std::size_t> index)
      : scales_(std::move(scales)), input_index_(std::move(index)) {}

  std::vector<double> scales_;
  std::vector<std::size_t> input_index_;
};

/// Lagrange-basis weights l_1..l_n with the sign and log-magnitude kept
/// alongside the value. Weights may be large and alternate in sign, so the
/// log form is what overflow checks and products work from.
struct WeightVector {
  std::vector<double> values;
  std::vector<int> signs;
  std::vector<double> log_magnitudes;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double max_abs() const noexcept;
};

/// Throws Error{non_positive_rate | not_distinct | too_few_rates}.
RateVector validate_rates(std::span<const double> raw,
                          double tol = kDefaultDistinctTolerance);

/// Same checks as validate_rates, sorting descending.
ScaleVector validate_scales(std::span<const double> raw,
                            double tol = kDefaultDistinctTolerance);

/// l_j = prod_{i != j} lambda_i / (lambda_i - lambda_j), indexed like rates.values().
WeightVector lagrange_weights(const RateVector& rates);

/// l_j = prod_{i != j} mu_j / (mu_j - mu_i), indexed like mu.values().
WeightVector weights_from_scales(const ScaleVector& mu);

/// Largest n for which every binomial weight is an exactly representable double.
inline constexpr int kMaxBinomialOrder = 56;

/// (n choose j)(-1)^(j-1), j = 1..n. These are the weights of mu_j = 1/j.
WeightVector binomial_weights(int n);

/// Complete homogeneous symmetric polynomials h_0..h_k of x, via the prefix
/// recurrence h_m(x_1..x_i) = h_m(x_1..x_{i-1}) + x_i h_{m-1}(x_1..x_i).
std::vector<double> complete_homogeneous(std::span<const double> x, int k);

/// Elementary symmetric polynomials e_0..e_k of x.
std::vector<double> elementary_symmetric(std::span<const double> x, int k);

}  // namespace hypoexp
