#pragma once

// Data-parallel inner loops. Every kernel has an OpenMP version and a plain
// serial reference in kernels::reference; both produce bit-identical output,
// which the tests check and the benchmark compares for speed.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace hypoexp {

enum class Execution { parallel, serial };

/// Uniform and exponential variates from a 64-bit Mersenne Twister.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on (0, 1]; never returns 0, so -log(u) is finite.
  double open_unit() noexcept {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  double exponential(double rate) noexcept { return -std::log(open_unit()) / rate; }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

namespace kernels {

/// Monte Carlo output is produced in fixed-size blocks, each with its own
/// generator, so results do not depend on the number of threads.
inline constexpr std::size_t kSampleBlock = 4096;

/// Seed of block b: splitmix64 applied to master + (b + 1) * golden-ratio
/// increment. Adjacent blocks get statistically unrelated streams.
constexpr std::uint64_t block_seed(std::uint64_t master, std::uint64_t block) noexcept {
  std::uint64_t z = master + (block + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace detail {
template <typename Draw>
void fill_block(std::span<double> out, std::uint64_t master, std::size_t block, const Draw& draw) {
  RandomStream stream(block_seed(master, block));
  const std::size_t begin = block * kSampleBlock;
  const std::size_t end = std::min(out.size(), begin + kSampleBlock);
  for (std::size_t i = begin; i < end; ++i) out[i] = draw(stream);
}
}  // namespace detail

namespace reference {

template <typename Draw>
void fill_blocks(std::span<double> out, std::uint64_t seed, const Draw& draw) {
  const std::size_t blocks = (out.size() + kSampleBlock - 1) / kSampleBlock;
  for (std::size_t b = 0; b < blocks; ++b) detail::fill_block(out, seed, b, draw);
}

/// Trapezoid rule for (f * g)(x_m) = int_0^{x_m} f(s) g(x_m - s) ds on a
/// uniform grid with spacing step; f and g share the grid.
std::vector<double> trapezoid_convolve(std::span<const double> f, std::span<const double> g,
                                       double step);

}  // namespace reference

template <typename Draw>
void fill_blocks(std::span<double> out, std::uint64_t seed, const Draw& draw) {
  const auto blocks = static_cast<std::ptrdiff_t>((out.size() + kSampleBlock - 1) / kSampleBlock);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    detail::fill_block(out, seed, static_cast<std::size_t>(b), draw);
  }
}

std::vector<double> trapezoid_convolve(std::span<const double> f, std::span<const double> g,
                                       double step);

template <typename Draw>
void fill_blocks(Execution exec, std::span<double> out, std::uint64_t seed, const Draw& draw) {
  if (exec == Execution::parallel) {
    fill_blocks(out, seed, draw);
  } else {
    reference::fill_blocks(out, seed, draw);
  }
}

inline std::vector<double> trapezoid_convolve(Execution exec, std::span<const double> f,
                                              std::span<const double> g, double step) {
  return exec == Execution::parallel ? trapezoid_convolve(f, g, step)
                                     : reference::trapezoid_convolve(f, g, step);
}

}  // namespace kernels
}  // namespace hypoexp
