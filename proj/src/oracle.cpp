#include "hypoexp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "hypoexp/error.hpp"
#include "hypoexp/summation.hpp"

namespace hypoexp {

double GridDensity::integral() const {
  if (values.size() < 2) return 0.0;
  CompensatedSum s;
  s.add(0.5 * values.front());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) s.add(values[i]);
  s.add(0.5 * values.back());
  return step * s.value();
}

GridDensity convolve_numeric(std::span<const double> rates, GridSpec spec, Execution exec) {
  if (rates.empty()) throw Error(ErrorCode::too_few_rates, "need at least one rate");
  for (double r : rates) {
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::non_positive_rate, "rates must be positive");
  }
  if (!(spec.step > 0.0) || !(spec.upper > spec.step)) {
    throw Error(ErrorCode::invalid_argument, "grid needs 0 < step < upper");
  }

  const auto points = static_cast<std::size_t>(std::floor(spec.upper / spec.step + 0.5)) + 1;
  GridDensity out;
  out.step = spec.step;
  out.grid.resize(points);
  for (std::size_t i = 0; i < points; ++i) out.grid[i] = static_cast<double>(i) * spec.step;

  auto exponential_on_grid = [&](double rate) {
    std::vector<double> f(points);
    for (std::size_t i = 0; i < points; ++i) f[i] = rate * std::exp(-rate * out.grid[i]);
    return f;
  };

  out.values = exponential_on_grid(rates[0]);
  for (std::size_t i = 1; i < rates.size(); ++i) {
    out.values = kernels::trapezoid_convolve(exec, out.values, exponential_on_grid(rates[i]), spec.step);
  }

  const double mass = out.integral();
  if (std::abs(mass - 1.0) > 1e-6) {
    throw Error(ErrorCode::grid_too_coarse,
                "trapezoid mass " + std::to_string(mass) + " differs from 1 by more than 1e-6");
  }
  return out;
}

double sup_distance(const GridDensity& numeric, const HypoexpDistribution& dist) {
  const auto analytic = pdf_on_grid(dist, numeric.grid);
  double d = 0.0;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    d = std::max(d, std::abs(numeric.values[i] - analytic[i]));
  }
  return d;
}

ComponentSampler exponential_component(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw Error(ErrorCode::non_positive_rate, "exponential rate must be positive");
  }
  return [rate](RandomStream& rng) { return rng.exponential(rate); };
}

std::vector<double> mc_weighted_sum(const ComponentSampler& sampler, const ScaleVector& mu,
                                    std::size_t count, std::uint64_t seed, Execution exec) {
  if (count < 1) throw Error(ErrorCode::invalid_argument, "sample count must be >= 1");
  const auto scales = mu.values();
  std::vector<double> out(count);
  kernels::fill_blocks(exec, out, seed, [&sampler, scales](RandomStream& rng) {
    double s = 0.0;
    for (double m : scales) s += m * sampler(rng);
    return s;
  });
  return out;
}

double signed_mixture_density(const std::function<double(double)>& component_pdf,
                              const ScaleVector& mu, double x) {
  const WeightVector w = weights_from_scales(mu);
  std::vector<double> terms(mu.size());
  for (std::size_t j = 0; j < mu.size(); ++j) terms[j] = w[j] / mu[j] * component_pdf(x / mu[j]);
  return sorted_sum(std::move(terms)).value();
}

double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw Error(ErrorCode::insufficient_data, "KS distance needs samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double upper = static_cast<double>(i + 1) / n - f;
    const double lower = f - static_cast<double>(i) / n;
    d = std::max({d, upper, lower});
  }
  return d;
}

double ks_critical_coefficient(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "alpha must lie in (0, 1)");
  }
  if (alpha == 0.05) return 1.36;
  if (alpha == 0.01) return 1.63;
  return std::sqrt(-0.5 * std::log(alpha / 2.0));
}

TestReport exponentiality_test(std::span<const double> data, const ScaleVector& mu, double alpha,
                               std::uint64_t seed) {
  const std::size_t n = mu.size();
  if (data.size() < 50 * n) {
    throw Error(ErrorCode::insufficient_data, "need at least " + std::to_string(50 * n) +
                                                  " observations, got " + std::to_string(data.size()));
  }
  CompensatedSum total;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!(data[i] > 0.0) || !std::isfinite(data[i])) {
      throw Error(ErrorCode::non_positive_observation,
                  "observation " + std::to_string(i) + " = " + std::to_string(data[i]));
    }
    total.add(data[i]);
  }
  const double critical = ks_critical_coefficient(alpha);

  TestReport report;
  report.alpha = alpha;
  report.sample_size = data.size();
  report.fitted_lambda = static_cast<double>(data.size()) / total.value();

  std::vector<double> shuffled(data.begin(), data.end());
  std::mt19937_64 engine(seed);
  std::shuffle(shuffled.begin(), shuffled.end(), engine);

  const std::size_t tuples = shuffled.size() / n;
  std::vector<double> sums(tuples);
  for (std::size_t t = 0; t < tuples; ++t) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += mu[j] * shuffled[t * n + j];
    sums[t] = s;
  }

  const HypoexpDistribution null_law = HypoexpDistribution::from_scales(mu, report.fitted_lambda);
  report.tuple_count = tuples;
  report.statistic = ks_distance(sums, [&](double x) { return cdf(null_law, x); });
  report.threshold = critical / std::sqrt(static_cast<double>(tuples));
  report.verdict = report.statistic > report.threshold ? TestVerdict::reject : TestVerdict::fail_to_reject;
  return report;
}

}  // namespace hypoexp
