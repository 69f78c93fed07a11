#pragma once

// Coefficient-level checks of the functional equations
//
//   (h)  1  = sum_j l_j      prod_{i != j} psi(mu_i t)
//   (q)  -t = sum_j l_j/mu_j prod_{i != j} psi(mu_i t)
//
// for psi = 1/phi, the reciprocal of a candidate Laplace transform. Only
// psi(t) = 1 + t/lambda solves (h) and only psi(t) = 1 + t solves (q); the
// functions here measure how far a given series is from solving them and
// rebuild the unique solution order by order.

#include <optional>
#include <string>
#include <vector>

#include "hypoexp/rates.hpp"
#include "hypoexp/series.hpp"

namespace hypoexp {

inline constexpr double kDefaultTolerance = 1e-10;

enum class CoefficientKind { c, d };

/// c_k = sum_i mu_i^k - sum_j l_j mu_j^k    (coefficient of a_k in h_k)
/// d_k = sum_j l_j mu_j^(k-1)               (coefficient of a_k in q_k)
struct StructuralCoefficients {
  CoefficientKind kind = CoefficientKind::c;
  std::vector<double> values;      // values[k - 1] holds the order-k coefficient
  std::vector<double> magnitudes;  // sum of |terms| behind each value

  int order() const noexcept { return static_cast<int>(values.size()); }
  double at(int k) const { return values.at(static_cast<std::size_t>(k - 1)); }
};

/// Throws Error{structure_violation} unless c_1 ~ 0 and c_k < 0 for k >= 2.
StructuralCoefficients c_coefficients(const ScaleVector& mu, int order,
                                      double tol = kDefaultTolerance);

/// Throws Error{structure_violation} unless d_1 ~ 1 and d_k > 0 for k >= 2.
StructuralCoefficients d_coefficients(const ScaleVector& mu, int order,
                                      double tol = kDefaultTolerance);

struct Lemma2Report {
  int order = 0;
  double tolerance = 0.0;

  double weight_sum = 0.0;  // sum_j l_j
  double weight_scale = 0.0;

  // k = 1..n-1: sum_j l_j lambda_j^k, which must vanish.
  std::vector<double> power_sums;
  std::vector<double> power_sum_scales;

  // k = 1..order: sum_j l_j / lambda_j^k - sum_j 1 / lambda_j^k.
  std::vector<double> inverse_gaps;
  std::vector<double> inverse_gap_scales;

  // k = 1..order: sum_j l_j / lambda_j^k - h_k(1/lambda) from the recurrence.
  std::vector<double> symmetric_residuals;

  bool sum_ok = false;
  bool power_sums_ok = false;
  bool gaps_ok = false;               // zero at k = 1, positive for 2 <= k <= n-1
  bool gaps_beyond_range_ok = false;  // positive for n-1 < k <= order; reported only
  bool symmetric_ok = false;

  bool passed() const noexcept { return sum_ok && power_sums_ok && gaps_ok && symmetric_ok; }
};

Lemma2Report lemma2_check(const RateVector& rates, int order, double tol = kDefaultTolerance);

enum class ResidualKind { h, q };

enum class Verdict { exponential_compatible, incompatible, degenerate };

struct ResidualReport {
  ResidualKind kind = ResidualKind::h;
  int order = 0;
  std::vector<double> residuals;  // r_0..r_K
  std::vector<double> scales;     // max(1, magnitude of contributing terms) per order
  double tolerance = 0.0;
  Verdict verdict = Verdict::incompatible;
  std::optional<int> first_violation_k;
  std::optional<double> fitted_lambda;

  /// "exponential-compatible", "incompatible-at-order-<k>" or "degenerate".
  std::string verdict_label() const;
};

/// r_k = h_k - [k == 0]. psi is rescaled to psi_0 = 1 first; throws
/// Error{not_normalized} if that is impossible.
ResidualReport residual_h(const Series& psi, const ScaleVector& mu, double tol = kDefaultTolerance);

/// r_k = q_k - [k == 1], where -q_k is the t^k coefficient of the right side of (q).
ResidualReport residual_q(const Series& psi, const ScaleVector& mu, double tol = kDefaultTolerance);

/// Builds psi order by order from h_k = 0 given a_0 = 1 and a free a_1 > 0.
/// Each a_k enters h_k linearly as c_k a_k, so a_k = -h_k(a_k = 0) / c_k.
/// Throws Error{zero_divisor} if some c_k vanishes and
/// Error{structure_violation} if the all-ones contribution fails to cancel.
Series forward_solve_theorem1(const ScaleVector& mu, double a1, int order = kDefaultOrder,
                              double tol = kDefaultTolerance);

/// Same construction from q_k = [k == 1] with a_k entering as d_k a_k.
Series forward_solve_theorem2(const ScaleVector& mu, int order = kDefaultOrder,
                              double tol = kDefaultTolerance);

struct ExponentialFit {
  bool exponential = false;
  std::optional<double> lambda;
};

/// True iff a_1 > 0 and every a_k, k >= 2, is within tol * max(1, |a_1|^k).
ExponentialFit is_exponential_series(const Series& psi, double tol = kDefaultTolerance);

/// The t^k coefficient of sum_j w_j prod_{i != j} psi(mu_i t), split by the
/// shape of the multi-index (see CompositionClass). w_j = l_j for kind h and
/// l_j / mu_j for kind q. Computed by explicit enumeration.
struct PartitionContributions {
  double single = 0.0;
  double all_ones = 0.0;
  double mixed = 0.0;
  double all_ones_scale = 0.0;  // sum of |terms| in the all_ones part

  double total() const noexcept { return single + all_ones + mixed; }
};

PartitionContributions partition_contributions(const Series& psi, const ScaleVector& mu, int k,
                                               ResidualKind kind);

}  // namespace hypoexp
