#include "hypoexp/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include "hypoexp/error.hpp"
#include "hypoexp/summation.hpp"

namespace hypoexp {

namespace {

void require_nonnegative(double x, const char* what) {
  if (!(x >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, std::string(what) + " must be >= 0, got " + std::to_string(x));
  }
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Clamps a probability-like alternating sum into [0, upper]. A negative value
// beyond the clamp band means the terms cancelled too badly to trust.
double clamp_sum(const std::vector<double>& terms, double upper, const char* what, double x) {
  const double value = sorted_sum(terms).value();
  const double band = kClampEpsilon * max_abs(terms);
  if (value < -band) {
    throw Error(ErrorCode::negative_density, std::string(what) + "(" + std::to_string(x) +
                                                 ") evaluated to " + std::to_string(value));
  }
  if (value < 0.0) return 0.0;
  return std::min(value, upper);
}

}  // namespace

HypoexpDistribution::HypoexpDistribution(RateVector rates)
    : rates_(std::move(rates)), weights_(lagrange_weights(rates_)) {}

HypoexpDistribution HypoexpDistribution::from_scales(const ScaleVector& mu, double reference_rate) {
  return HypoexpDistribution(mu.to_rates(reference_rate));
}

double pdf(const HypoexpDistribution& dist, double x) {
  require_nonnegative(x, "x");
  const auto rates = dist.rates().values();
  const auto& w = dist.weights().values;
  std::vector<double> terms(rates.size());
  for (std::size_t j = 0; j < rates.size(); ++j) terms[j] = w[j] * rates[j] * std::exp(-rates[j] * x);
  return clamp_sum(terms, INFINITY, "pdf", x);
}

double cdf(const HypoexpDistribution& dist, double x) {
  require_nonnegative(x, "x");
  const auto rates = dist.rates().values();
  const auto& w = dist.weights().values;
  std::vector<double> terms(rates.size());
  for (std::size_t j = 0; j < rates.size(); ++j) terms[j] = -w[j] * std::expm1(-rates[j] * x);
  return clamp_sum(terms, 1.0, "cdf", x);
}

double survival(const HypoexpDistribution& dist, double x) {
  require_nonnegative(x, "x");
  const auto rates = dist.rates().values();
  const auto& w = dist.weights().values;
  std::vector<double> terms(rates.size());
  for (std::size_t j = 0; j < rates.size(); ++j) terms[j] = w[j] * std::exp(-rates[j] * x);
  return clamp_sum(terms, 1.0, "survival", x);
}

double laplace(const HypoexpDistribution& dist, double t, LaplaceForm form) {
  require_nonnegative(t, "t");
  const auto rates = dist.rates().values();
  if (form == LaplaceForm::product) {
    double p = 1.0;
    for (double r : rates) p *= r / (r + t);
    return p;
  }
  const auto& w = dist.weights().values;
  std::vector<double> terms(rates.size());
  for (std::size_t j = 0; j < rates.size(); ++j) terms[j] = w[j] * rates[j] / (rates[j] + t);
  return sorted_sum(std::move(terms)).value();
}

double moment(const HypoexpDistribution& dist, int k) {
  if (k < 1) throw Error(ErrorCode::invalid_argument, "moment order must be >= 1");
  std::vector<double> inv;
  inv.reserve(dist.size());
  for (double r : dist.rates().values()) inv.push_back(1.0 / r);
  const double h = complete_homogeneous(inv, k).back();
  double factorial = 1.0;
  for (int i = 2; i <= k; ++i) factorial *= i;
  return factorial * h;
}

double mean(const HypoexpDistribution& dist) { return moment(dist, 1); }

double variance(const HypoexpDistribution& dist) {
  // Independent summands: sum 1/lambda_i^2, free of the m2 - m1^2 cancellation.
  double v = 0.0;
  for (double r : dist.rates().values()) v += 1.0 / (r * r);
  return v;
}

std::vector<double> pdf_on_grid(const HypoexpDistribution& dist, std::span<const double> x,
                                Execution exec) {
  std::vector<double> out(x.size());
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = pdf(dist, x[i]);
    return out;
  }
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = pdf(dist, x[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(hypoexp_pdf_grid_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

double quantile(const HypoexpDistribution& dist, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "quantile needs p in (0, 1), got " + std::to_string(p));
  }
  // Upper half is solved on the survival function, where 1 - p is exact.
  const bool upper_tail = p > 0.5;
  const double target = upper_tail ? 1.0 - p : p;
  auto below = [&](double x) {
    return upper_tail ? survival(dist, x) > target : cdf(dist, x) < target;
  };

  constexpr int kMaxDoublings = 2000;
  constexpr int kMaxBisections = 2000;

  double lo = 0.0;
  double hi = 1.0 / dist.rates().min();
  int doublings = 0;
  while (below(hi)) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > kMaxDoublings || !std::isfinite(hi)) {
      throw Error(ErrorCode::non_convergence, "could not bracket quantile " + std::to_string(p));
    }
  }

  for (int it = 0; it < kMaxBisections; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) return hi;
    if (below(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw Error(ErrorCode::non_convergence, "bisection did not converge for p = " + std::to_string(p));
}

}  // namespace hypoexp
