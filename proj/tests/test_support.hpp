#pragma once

// Generators and brute-force oracles shared by the test binaries. Nothing here
// calls the library's own enumeration or recurrence code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "hypoexp/error.hpp"

namespace hypoexp::testing {

inline constexpr double kMinRelativeGap = 0.05;

/// n values log-uniform in [lo, hi] whose sorted neighbours differ by at least
/// kMinRelativeGap relative to the larger one.
inline std::vector<double> random_distinct(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  for (;;) {
    std::vector<double> v(n);
    for (auto& x : v) x = std::exp(u(rng));
    std::vector<double> s = v;
    std::sort(s.begin(), s.end());
    bool ok = true;
    for (std::size_t i = 1; i < s.size(); ++i) {
      if ((s[i] - s[i - 1]) / s[i] < kMinRelativeGap) ok = false;
    }
    if (ok) return v;
  }
}

inline std::size_t random_size(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Visits every m-tuple of nonnegative integers summing to k (independent
/// recursive enumeration, used as an oracle).
inline void brute_compositions(int k, int m, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> a(static_cast<std::size_t>(m), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == m - 1) {
      a[static_cast<std::size_t>(pos)] = left;
      f(a);
      return;
    }
    for (int v = left; v >= 0; --v) {
      a[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, k);
}

/// h_k(x) as the plain sum over all degree-k monomials.
inline double brute_complete_homogeneous(const std::vector<double>& x, int k) {
  double total = 0.0;
  brute_compositions(k, static_cast<int>(x.size()), [&](const std::vector<int>& a) {
    double term = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) term *= std::pow(x[i], a[i]);
    total += term;
  });
  return total;
}

/// Coefficient list of prod_i u(mu_i t) by direct polynomial multiplication
/// of the scaled coefficient lists, truncated at order K.
inline std::vector<double> brute_scaled_product(const std::vector<double>& u,
                                                const std::vector<double>& mu, int order) {
  std::vector<double> acc(static_cast<std::size_t>(order) + 1, 0.0);
  acc[0] = 1.0;
  for (double m : mu) {
    std::vector<double> next(acc.size(), 0.0);
    for (int i = 0; i <= order; ++i) {
      for (int j = 0; i + j <= order; ++j) {
        next[static_cast<std::size_t>(i + j)] += acc[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(j)] * std::pow(m, j);
      }
    }
    acc = next;
  }
  return acc;
}

inline double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return std::round(c);
}

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1e-300, std::abs(a), std::abs(b)});
}

/// Runs f and returns the code of the hypoexp::Error it throws.
inline ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected hypoexp::Error";
  return ErrorCode::invalid_argument;
}

}  // namespace hypoexp::testing
