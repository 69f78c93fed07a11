#include "hypoexp/kernels.hpp"

#include <algorithm>

#include "hypoexp/error.hpp"

namespace hypoexp::kernels {

namespace {

void check_convolution_inputs(std::span<const double> f, std::span<const double> g, double step) {
  if (f.size() != g.size() || f.empty()) {
    throw Error(ErrorCode::invalid_argument, "convolution inputs must share a nonempty grid");
  }
  if (!(step > 0.0)) throw Error(ErrorCode::invalid_argument, "grid step must be positive");
}

// One output point. The sum runs over i in [0, m] with half weight on the end
// points; accumulation order is fixed so serial and parallel agree bitwise.
inline double convolve_at(std::span<const double> f, std::span<const double> g, std::size_t m,
                          double step) {
  if (m == 0) return 0.0;
  double acc = 0.5 * (f[0] * g[m] + f[m] * g[0]);
  for (std::size_t i = 1; i < m; ++i) acc += f[i] * g[m - i];
  return step * acc;
}

}  // namespace

namespace reference {

std::vector<double> trapezoid_convolve(std::span<const double> f, std::span<const double> g,
                                       double step) {
  check_convolution_inputs(f, g, step);
  std::vector<double> out(f.size());
  for (std::size_t m = 0; m < out.size(); ++m) out[m] = convolve_at(f, g, m, step);
  return out;
}

}  // namespace reference

std::vector<double> trapezoid_convolve(std::span<const double> f, std::span<const double> g,
                                       double step) {
  check_convolution_inputs(f, g, step);
  std::vector<double> out(f.size());
  const auto n = static_cast<std::ptrdiff_t>(out.size());
  // Work per point grows with m; dynamic chunks keep threads balanced.
#pragma omp parallel for schedule(dynamic, 256)
  for (std::ptrdiff_t m = 0; m < n; ++m) {
    out[static_cast<std::size_t>(m)] = convolve_at(f, g, static_cast<std::size_t>(m), step);
  }
  return out;
}

}  // namespace hypoexp::kernels
