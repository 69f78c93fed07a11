#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "hypoexp/distribution.hpp"
#include "hypoexp/error.hpp"
#include "hypoexp/sampling.hpp"
#include "test_support.hpp"

namespace hypoexp {
namespace {

using testing::code_of;

HypoexpDistribution dist12() { return HypoexpDistribution(validate_rates(std::vector<double>{1.0, 2.0})); }

// Two-sided KS statistic against the closed-form cdf.
double ks(std::vector<double> xs, const HypoexpDistribution& d) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(d, xs[i]);
    worst = std::max({worst, (i + 1) / n - f, f - i / n});
  }
  return worst;
}

TEST(Sample, DeterministicForSeed) {
  const auto d = dist12();
  EXPECT_EQ(sample(d, 5000, 42), sample(d, 5000, 42));
  EXPECT_NE(sample(d, 5000, 42), sample(d, 5000, 43));
}

TEST(Sample, SerialMatchesParallel) {
  const auto d = HypoexpDistribution(validate_rates(std::vector<double>{0.5, 1.0, 3.0}));
  for (std::size_t count : {1u, 4095u, 4096u, 4097u, 50000u}) {
    EXPECT_EQ(sample(d, count, 7, Execution::serial), sample(d, count, 7, Execution::parallel));
  }
  EXPECT_EQ(sample_exponential(2.0, 10000, 1, Execution::serial),
            sample_exponential(2.0, 10000, 1, Execution::parallel));
}

TEST(Sample, PrefixStable) {
  // Block seeding makes a shorter run a prefix of a longer one.
  const auto d = dist12();
  const auto a = sample(d, 10000, 5);
  const auto b = sample(d, 3000, 5);
  EXPECT_TRUE(std::equal(b.begin(), b.end(), a.begin()));
}

TEST(Sample, MeanAndVarianceWithinFourStandardErrors) {
  const auto d = dist12();
  const std::size_t n = 200000;
  const auto xs = sample(d, n, kDefaultSeed);
  double m = 0.0;
  for (double x : xs) m += x;
  m /= n;
  double v = 0.0;
  for (double x : xs) v += (x - m) * (x - m);
  v /= (n - 1);
  // Var S = 5/4. Fourth central moment of a sum of independent terms:
  // mu4(X) + mu4(Y) + 6 Var X Var Y, with mu4 = 9/lambda^4 for Exp(lambda).
  EXPECT_LE(std::abs(m - 1.5), 4.0 * std::sqrt(1.25 / n));
  const double mu4 = 9.0 + 9.0 / 16.0 + 6.0 * 0.25;
  EXPECT_LE(std::abs(v - 1.25), 4.0 * std::sqrt((mu4 - 1.25 * 1.25) / n));
}

TEST(Sample, KolmogorovSmirnovAgainstCdf) {
  const auto d = HypoexpDistribution(validate_rates(std::vector<double>{0.3, 1.0, 4.0}));
  const std::size_t n = 100000;
  EXPECT_LT(ks(sample(d, n, 11), d), 1.63 / std::sqrt(static_cast<double>(n)));
}

TEST(Sample, ExponentialMean) {
  const auto xs = sample_exponential(4.0, 100000, 3);
  double m = 0.0;
  for (double x : xs) {
    EXPECT_GT(x, 0.0);
    m += x;
  }
  m /= xs.size();
  EXPECT_LE(std::abs(m - 0.25), 4.0 * 0.25 / std::sqrt(1e5));
}

TEST(Sample, RejectsBadArguments) {
  EXPECT_EQ(code_of([] { sample(dist12(), 0, 1); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([] { sample_exponential(-1.0, 10, 1); }), ErrorCode::non_positive_rate);
}

TEST(RandomStream, OpenUnitNeverZero) {
  RandomStream rng(0);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.open_unit();
    ASSERT_GT(u, 0.0);
    ASSERT_LE(u, 1.0);
  }
}

}  // namespace
}  // namespace hypoexp
