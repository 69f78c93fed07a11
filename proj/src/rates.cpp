#include "hypoexp/rates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>

#include "hypoexp/error.hpp"
#include "hypoexp/summation.hpp"

namespace hypoexp {

namespace {

struct Validated {
  std::vector<double> values;
  std::vector<std::size_t> index;
};

Validated validate_positive_distinct(std::span<const double> raw, double tol,
                                     bool descending, const char* what) {
  if (raw.size() < 2) {
    throw Error(ErrorCode::too_few_rates,
                std::string("need at least 2 ") + what + ", got " + std::to_string(raw.size()));
  }
  if (!(tol >= 0.0)) throw Error(ErrorCode::invalid_argument, "distinctness tolerance must be >= 0");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!std::isfinite(raw[i])) {
      throw Error(ErrorCode::invalid_argument,
                  std::string(what) + "[" + std::to_string(i) + "] is not finite");
    }
    if (raw[i] <= 0.0) {
      throw Error(ErrorCode::non_positive_rate,
                  std::string(what) + "[" + std::to_string(i) + "] = " + std::to_string(raw[i]));
    }
  }

  std::vector<std::size_t> index(raw.size());
  std::iota(index.begin(), index.end(), std::size_t{0});
  std::stable_sort(index.begin(), index.end(), [&](std::size_t a, std::size_t b) {
    return descending ? raw[a] > raw[b] : raw[a] < raw[b];
  });

  std::vector<double> values(raw.size());
  for (std::size_t k = 0; k < index.size(); ++k) values[k] = raw[index[k]];

  for (std::size_t k = 1; k < values.size(); ++k) {
    const double a = values[k - 1];
    const double b = values[k];
    const double gap = std::abs(a - b) / std::max(a, b);
    if (gap < tol) {
      char buf[160];
      std::snprintf(buf, sizeof buf, " %.17g and %.17g have relative gap %.3g below %.3g", a, b, gap, tol);
      throw Error(ErrorCode::not_distinct, std::string(what) + buf);
    }
  }
  return {std::move(values), std::move(index)};
}

// factor(i, j) is the i-th factor of the j-th weight product.
template <typename Factor>
WeightVector product_weights(std::size_t n, Factor factor) {
  constexpr double kLogMax = 709.0;  // just under log(DBL_MAX)
  WeightVector w;
  w.values.resize(n);
  w.signs.resize(n);
  w.log_magnitudes.resize(n);

  for (std::size_t j = 0; j < n; ++j) {
    double log_mag = 0.0;
    int sign = 1;
    double product = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j) continue;
      const double f = factor(i, j);
      log_mag += std::log(std::abs(f));
      if (f < 0) sign = -sign;
      product *= f;
    }
    if (!(log_mag < kLogMax)) {
      throw Error(ErrorCode::overflow,
                  "weight " + std::to_string(j) + " has log-magnitude " + std::to_string(log_mag) +
                      "; rates are too close to be resolved");
    }
    if (!std::isfinite(product) || product == 0.0) product = sign * std::exp(log_mag);
    w.values[j] = product;
    w.signs[j] = sign;
    w.log_magnitudes[j] = log_mag;
  }

  const double scale = w.max_abs();
  const double total = compensated_sum(w.values).value();
  if (std::abs(total - 1.0) > 1e-10 * std::max(1.0, scale)) {
    throw Error(ErrorCode::precision_loss,
                "weights sum to " + std::to_string(total) + " instead of 1");
  }
  return w;
}

}  // namespace

std::vector<double> RateVector::to_input_order(std::span<const double> sorted) const {
  std::vector<double> out(sorted.size());
  for (std::size_t k = 0; k < sorted.size(); ++k) out[input_index_[k]] = sorted[k];
  return out;
}

RateVector ScaleVector::to_rates(double reference_rate) const {
  if (!(reference_rate > 0.0) || !std::isfinite(reference_rate)) {
    throw Error(ErrorCode::non_positive_rate, "reference rate must be positive");
  }
  std::vector<double> rates(scales_.size());
  for (std::size_t i = 0; i < scales_.size(); ++i) rates[i] = reference_rate / scales_[i];
  // Mapping is monotone, so any gap that passed for the scales passes here too.
  return validate_rates(rates, 0.0);
}

double WeightVector::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

RateVector validate_rates(std::span<const double> raw, double tol) {
  auto v = validate_positive_distinct(raw, tol, false, "rates");
  return RateVector(std::move(v.values), std::move(v.index));
}

ScaleVector validate_scales(std::span<const double> raw, double tol) {
  auto v = validate_positive_distinct(raw, tol, true, "scales");
  return ScaleVector(std::move(v.values), std::move(v.index));
}

WeightVector lagrange_weights(const RateVector& rates) {
  const auto r = rates.values();
  return product_weights(r.size(), [&](std::size_t i, std::size_t j) {
    return r[i] / (r[i] - r[j]);
  });
}

WeightVector weights_from_scales(const ScaleVector& mu) {
  const auto m = mu.values();
  return product_weights(m.size(), [&](std::size_t i, std::size_t j) {
    return m[j] / (m[j] - m[i]);
  });
}

WeightVector binomial_weights(int n) {
  if (n < 2) throw Error(ErrorCode::too_few_rates, "binomial weights need n >= 2");
  if (n > kMaxBinomialOrder) {
    throw Error(ErrorCode::overflow, "binomial weights are exact only for n <= " +
                                         std::to_string(kMaxBinomialOrder));
  }
  WeightVector w;
  std::uint64_t c = 1;
  for (int j = 1; j <= n; ++j) {
    c = c * static_cast<std::uint64_t>(n - j + 1) / static_cast<std::uint64_t>(j);
    const int sign = (j % 2 == 1) ? 1 : -1;
    w.values.push_back(sign * static_cast<double>(c));
    w.signs.push_back(sign);
    w.log_magnitudes.push_back(std::log(static_cast<double>(c)));
  }
  return w;
}

std::vector<double> complete_homogeneous(std::span<const double> x, int k) {
  if (k < 0) throw Error(ErrorCode::invalid_argument, "degree must be >= 0");
  std::vector<double> h(static_cast<std::size_t>(k) + 1, 0.0);
  h[0] = 1.0;
  for (double xi : x) {
    for (std::size_t m = 1; m < h.size(); ++m) h[m] += xi * h[m - 1];
  }
  return h;
}

std::vector<double> elementary_symmetric(std::span<const double> x, int k) {
  if (k < 0) throw Error(ErrorCode::invalid_argument, "degree must be >= 0");
  std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
  e[0] = 1.0;
  for (double xi : x) {
    for (std::size_t m = e.size() - 1; m >= 1; --m) e[m] += xi * e[m - 1];
  }
  return e;
}

}  // namespace hypoexp
