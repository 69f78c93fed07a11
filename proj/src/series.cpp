#include "hypoexp/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hypoexp/error.hpp"

namespace hypoexp {

namespace {

void require_order(int order) {
  if (order < 0) throw Error(ErrorCode::invalid_argument, "truncation order must be >= 0");
}

}  // namespace

Series::Series(std::vector<double> coefficients) : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) throw Error(ErrorCode::invalid_argument, "series needs a constant term");
}

Series Series::zero(int order) {
  require_order(order);
  return Series(std::vector<double>(static_cast<std::size_t>(order) + 1, 0.0));
}

Series Series::one(int order) {
  Series s = zero(order);
  s[0] = 1.0;
  return s;
}

Series Series::polynomial(std::span<const double> coefficients, int order) {
  Series s = zero(order);
  for (std::size_t k = 0; k < coefficients.size() && k <= static_cast<std::size_t>(order); ++k) {
    s[static_cast<int>(k)] = coefficients[k];
  }
  return s;
}

Series mul(const Series& u, const Series& v) {
  if (u.order() != v.order()) {
    throw Error(ErrorCode::order_mismatch, "orders " + std::to_string(u.order()) + " and " +
                                               std::to_string(v.order()) + " differ");
  }
  Series out = Series::zero(u.order());
  for (int k = 0; k <= u.order(); ++k) {
    double c = 0.0;
    for (int i = 0; i <= k; ++i) c += u[i] * v[k - i];
    out[k] = c;
  }
  return out;
}

Series reciprocal(const Series& u) {
  if (u[0] == 0.0) throw Error(ErrorCode::zero_constant_term, "cannot invert a series with u_0 = 0");
  Series out = Series::zero(u.order());
  out[0] = 1.0 / u[0];
  for (int k = 1; k <= u.order(); ++k) {
    double c = 0.0;
    for (int i = 1; i <= k; ++i) c += u[i] * out[k - i];
    out[k] = -c / u[0];
  }
  return out;
}

Series scale_arg(const Series& u, double mu) {
  Series out = u;
  double p = 1.0;
  for (int k = 1; k <= u.order(); ++k) {
    p *= mu;
    out[k] *= p;
  }
  return out;
}

Series abs_coefficients(const Series& u) {
  Series out = u;
  for (int k = 0; k <= u.order(); ++k) out[k] = std::abs(u[k]);
  return out;
}

Series product_of_scaled(const Series& u, std::span<const double> scales) {
  Series out = Series::one(u.order());
  for (double mu : scales) {
    if (!(mu > 0.0)) throw Error(ErrorCode::non_positive_rate, "scales must be positive");
    out = mul(out, scale_arg(u, mu));
  }
  return out;
}

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int a : entries_) {
    if (a < 0) throw Error(ErrorCode::invalid_argument, "multi-index entries must be >= 0");
    total_ += a;
  }
}

std::uint64_t composition_count(int k, int m) {
  if (k < 0 || m < 1) return 0;
  // C(k + m - 1, r) with r = min(k, m - 1); each partial product is itself a
  // binomial coefficient, so the division is exact.
  const std::uint64_t n = static_cast<std::uint64_t>(k) + static_cast<std::uint64_t>(m) - 1;
  const std::uint64_t r = std::min<std::uint64_t>(static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(m) - 1);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    const std::uint64_t factor = n - r + i;
    if (c > kMax / factor) return kMax;
    c = c * factor / i;
  }
  return c;
}

namespace detail {
void check_composition_budget(int k, int m) {
  if (k < 0 || m < 1) {
    throw Error(ErrorCode::invalid_argument, "compositions need k >= 0 and m >= 1");
  }
  const auto count = composition_count(k, m);
  if (count > kCompositionBudget) {
    throw Error(ErrorCode::budget_exceeded, std::to_string(count) + " compositions of " +
                                                std::to_string(k) + " into " + std::to_string(m) +
                                                " parts exceed the budget of " +
                                                std::to_string(kCompositionBudget));
  }
}
}  // namespace detail

std::vector<MultiIndex> enumerate_compositions(int k, int m) {
  std::vector<MultiIndex> out;
  detail::check_composition_budget(k, m);
  out.reserve(composition_count(k, m));
  for_each_composition(k, m, [&](std::span<const int> alpha) {
    out.emplace_back(std::vector<int>(alpha.begin(), alpha.end()));
  });
  return out;
}

double leibniz_coefficient(const Series& u, std::span<const double> scales, int k) {
  if (k < 0 || k > u.order()) {
    throw Error(ErrorCode::invalid_argument, "coefficient index " + std::to_string(k) +
                                                 " outside series order " + std::to_string(u.order()));
  }
  if (scales.empty()) return k == 0 ? 1.0 : 0.0;
  double total = 0.0;
  for_each_composition(k, static_cast<int>(scales.size()), [&](std::span<const int> alpha) {
    double term = 1.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      term *= std::pow(scales[i], alpha[i]) * u[alpha[i]];
    }
    total += term;
  });
  return total;
}

CompositionClass classify_composition(std::span<const int> alpha) {
  int total = 0;
  int largest = 0;
  for (int a : alpha) {
    total += a;
    largest = std::max(largest, a);
  }
  if (largest == total) return CompositionClass::single;
  if (largest == 1) return CompositionClass::all_ones;
  return CompositionClass::mixed;
}

}  // namespace hypoexp
