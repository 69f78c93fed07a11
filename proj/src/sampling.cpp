#include "hypoexp/sampling.hpp"

#include <cmath>
#include <string>

#include "hypoexp/error.hpp"

namespace hypoexp {

std::vector<double> sample(const HypoexpDistribution& dist, std::size_t count, std::uint64_t seed,
                           Execution exec) {
  if (count < 1) throw Error(ErrorCode::invalid_argument, "sample count must be >= 1");
  const auto rates = dist.rates().values();
  std::vector<double> out(count);
  kernels::fill_blocks(exec, out, seed, [rates](RandomStream& rng) {
    double s = 0.0;
    for (double r : rates) s += rng.exponential(r);
    return s;
  });
  return out;
}

std::vector<double> sample_exponential(double rate, std::size_t count, std::uint64_t seed,
                                       Execution exec) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw Error(ErrorCode::non_positive_rate, "exponential rate must be positive");
  }
  if (count < 1) throw Error(ErrorCode::invalid_argument, "sample count must be >= 1");
  std::vector<double> out(count);
  kernels::fill_blocks(exec, out, seed, [rate](RandomStream& rng) { return rng.exponential(rate); });
  return out;
}

}  // namespace hypoexp
