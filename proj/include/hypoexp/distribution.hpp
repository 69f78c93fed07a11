#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hypoexp/kernels.hpp"
#include "hypoexp/rates.hpp"

namespace hypoexp {

enum class LaplaceForm { product, mixture };

/// Law of Z_1 + ... + Z_n with Z_i ~ Exp(lambda_i) independent and the
/// lambda_i pairwise distinct. Weights are computed once on construction.
class HypoexpDistribution {
 public:
  explicit HypoexpDistribution(RateVector rates);

  /// Rates lambda / mu_i.
  static HypoexpDistribution from_scales(const ScaleVector& mu, double reference_rate = 1.0);

  const RateVector& rates() const noexcept { return rates_; }
  const WeightVector& weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return rates_.size(); }

 private:
  RateVector rates_;
  WeightVector weights_;
};

/// Relative size (against the largest term) of a negative rounding residue
/// that is silently clamped to zero.
inline constexpr double kClampEpsilon = 1e-12;

/// sum_j l_j lambda_j exp(-lambda_j x), x >= 0.
/// Throws Error{negative_density} if cancellation drives the sum below the
/// clamp band.
double pdf(const HypoexpDistribution& dist, double x);

/// 1 - survival, accumulated as sum_j l_j (1 - exp(-lambda_j x)).
double cdf(const HypoexpDistribution& dist, double x);

/// sum_j l_j exp(-lambda_j x).
double survival(const HypoexpDistribution& dist, double x);

/// E[exp(-t S)] as prod lambda_i/(lambda_i + t) or sum_j l_j lambda_j/(lambda_j + t).
double laplace(const HypoexpDistribution& dist, double t, LaplaceForm form = LaplaceForm::product);

/// E[S^k] = k! h_k(1/lambda_1, ..., 1/lambda_n).
double moment(const HypoexpDistribution& dist, int k);

double mean(const HypoexpDistribution& dist);
double variance(const HypoexpDistribution& dist);

/// pdf at every grid point.
std::vector<double> pdf_on_grid(const HypoexpDistribution& dist, std::span<const double> x,
                                Execution exec = Execution::parallel);

/// Bisection inverse of cdf for p in (0, 1). Throws Error{non_convergence}.
double quantile(const HypoexpDistribution& dist, double p);

}  // namespace hypoexp
