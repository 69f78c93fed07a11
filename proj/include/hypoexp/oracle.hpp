#pragma once

// Independent numerical checks of the closed-form distribution: a trapezoid
// convolution of the component densities, Monte Carlo draws of weighted sums,
// the Kolmogorov-Smirnov distance, and a goodness-of-fit test for
// exponentiality built on the weighted-sum identity.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hypoexp/distribution.hpp"
#include "hypoexp/kernels.hpp"
#include "hypoexp/rates.hpp"

namespace hypoexp {

struct GridSpec {
  double step = 1e-3;
  double upper = 20.0;
};

struct GridDensity {
  std::vector<double> grid;
  std::vector<double> values;
  double step = 0.0;

  /// Trapezoid integral over the whole grid.
  double integral() const;
};

/// n-fold convolution of lambda_i exp(-lambda_i x) on a uniform grid, without
/// using the closed-form weights. Accepts any positive rates (n >= 1, ties
/// allowed). Throws Error{grid_too_coarse} when the trapezoid mass of the
/// result misses 1 by more than 1e-6, i.e. the grid is too short or too coarse.
GridDensity convolve_numeric(std::span<const double> rates, GridSpec spec,
                             Execution exec = Execution::parallel);

/// max over grid points of |numeric - pdf|.
double sup_distance(const GridDensity& numeric, const HypoexpDistribution& dist);

/// Draws one variate of the common component distribution of X.
using ComponentSampler = std::function<double(RandomStream&)>;

ComponentSampler exponential_component(double rate);

/// N draws of mu_1 X_1 + ... + mu_n X_n with X_j i.i.d. from sampler.
/// The sampler is called concurrently and must not share mutable state.
std::vector<double> mc_weighted_sum(const ComponentSampler& sampler, const ScaleVector& mu,
                                    std::size_t count, std::uint64_t seed,
                                    Execution exec = Execution::parallel);

/// sum_j (l_j / mu_j) f(x / mu_j): the density of the weighted sum predicted
/// from a component density f when X is exponential.
double signed_mixture_density(const std::function<double(double)>& component_pdf,
                              const ScaleVector& mu, double x);

/// sup_x |F_N(x) - F(x)| for the empirical distribution of samples.
double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Asymptotic c(alpha) with c(0.05) = 1.36 and c(0.01) = 1.63; other levels use
/// sqrt(-log(alpha / 2) / 2).
double ks_critical_coefficient(double alpha);

enum class TestVerdict { reject, fail_to_reject };

struct TestReport {
  double statistic = 0.0;
  double threshold = 0.0;
  double alpha = 0.0;
  std::size_t sample_size = 0;  // observations supplied
  std::size_t tuple_count = 0;  // weighted sums compared against the cdf
  double fitted_lambda = 0.0;
  TestVerdict verdict = TestVerdict::fail_to_reject;
};

/// Fits lambda = 1/mean, shuffles with seed, groups consecutive n-tuples, and
/// KS-compares mu-weighted tuple sums with the hypoexponential law of rates
/// lambda / mu_j. Rejection indicates non-exponential data.
/// Throws Error{insufficient_data} below 50 n observations and
/// Error{non_positive_observation} on any value <= 0.
TestReport exponentiality_test(std::span<const double> data, const ScaleVector& mu, double alpha,
                               std::uint64_t seed);

}  // namespace hypoexp
