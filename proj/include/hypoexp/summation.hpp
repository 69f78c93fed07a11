#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace hypoexp {

// Neumaier's variant of Kahan summation. Tracks the running rounding error so
// that alternating sums with large cancelling terms keep full precision.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
    magnitude_ += std::abs(x);
  }

  double value() const noexcept { return sum_ + compensation_; }

  // Sum of |x| over every added term; the natural scale for a cancellation
  // tolerance on value().
  double magnitude() const noexcept { return magnitude_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
  double magnitude_ = 0.0;
};

// Sorts by increasing magnitude before compensated accumulation.
inline CompensatedSum sorted_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end(),
            [](double a, double b) { return std::abs(a) < std::abs(b); });
  CompensatedSum s;
  for (double t : terms) s.add(t);
  return s;
}

inline CompensatedSum compensated_sum(std::span<const double> terms) {
  CompensatedSum s;
  for (double t : terms) s.add(t);
  return s;
}

// |x - y| <= tol * max(1, |x|, |y|)
inline bool scaled_close(double x, double y, double tol) noexcept {
  return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
}

}  // namespace hypoexp
