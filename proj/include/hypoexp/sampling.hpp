#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hypoexp/distribution.hpp"
#include "hypoexp/kernels.hpp"

namespace hypoexp {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// count draws of S = sum_i Exp(lambda_i), each summand by inverse transform
/// -log(U) / lambda_i. Output is a pure function of (dist, count, seed).
std::vector<double> sample(const HypoexpDistribution& dist, std::size_t count, std::uint64_t seed,
                           Execution exec = Execution::parallel);

/// count draws of Exp(rate).
std::vector<double> sample_exponential(double rate, std::size_t count, std::uint64_t seed,
                                       Execution exec = Execution::parallel);

}  // namespace hypoexp
