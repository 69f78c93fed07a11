#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace hypoexp {

inline constexpr int kDefaultOrder = 16;

/// Formal power series a_0 + a_1 t + ... + a_K t^K truncated at order K.
class Series {
 public:
  /// Requires at least one coefficient.
  explicit Series(std::vector<double> coefficients);

  static Series zero(int order);
  /// The multiplicative identity 1 + 0 t + ...
  static Series one(int order);
  /// Polynomial coefficients padded with zeros (or truncated) to the given order.
  static Series polynomial(std::span<const double> coefficients, int order);

  int order() const noexcept { return static_cast<int>(coefficients_.size()) - 1; }
  std::span<const double> coefficients() const noexcept { return coefficients_; }
  double operator[](int k) const { return coefficients_[static_cast<std::size_t>(k)]; }
  double& operator[](int k) { return coefficients_[static_cast<std::size_t>(k)]; }

  bool operator==(const Series&) const = default;

 private:
  std::vector<double> coefficients_;
};

/// Cauchy product to the common order. Throws Error{order_mismatch}.
Series mul(const Series& u, const Series& v);

/// 1/u. Throws Error{zero_constant_term} when u_0 == 0.
Series reciprocal(const Series& u);

/// v(t) = u(mu t): coefficient k becomes u_k mu^k.
Series scale_arg(const Series& u, double mu);

/// Coefficientwise |u_k|; used to bound cancellation in sums of products.
Series abs_coefficients(const Series& u);

/// prod_i u(mu_i t) by repeated Cauchy products. Scales need only be positive;
/// repeats are allowed.
Series product_of_scaled(const Series& u, std::span<const double> scales);

/// alpha_1..alpha_m >= 0 with a stored total |alpha|.
class MultiIndex {
 public:
  explicit MultiIndex(std::vector<int> entries);

  std::span<const int> entries() const noexcept { return entries_; }
  int operator[](std::size_t i) const { return entries_[i]; }
  std::size_t size() const noexcept { return entries_.size(); }
  int total() const noexcept { return total_; }

  bool operator==(const MultiIndex&) const = default;

 private:
  std::vector<int> entries_;
  int total_ = 0;
};

inline constexpr std::uint64_t kCompositionBudget = 10'000'000;

/// C(k + m - 1, m - 1), saturating at UINT64_MAX.
std::uint64_t composition_count(int k, int m);

/// Calls visit(std::span<const int>) for every m-tuple of nonnegative integers
/// summing to k, in lexicographic order. Throws Error{budget_exceeded} when the
/// count exceeds kCompositionBudget.
template <typename Visit>
void for_each_composition(int k, int m, Visit&& visit);

std::vector<MultiIndex> enumerate_compositions(int k, int m);

/// Coefficient of t^k in prod_i u(mu_i t), computed as the multi-index sum
/// sum_{|alpha| = k} prod_i mu_i^alpha_i u_{alpha_i}.
double leibniz_coefficient(const Series& u, std::span<const double> scales, int k);

/// Split of the compositions of k used by the characterization argument:
/// single    one entry equals k, the rest are zero
/// all_ones  k >= 2 entries equal 1, the rest are zero
/// mixed     k >= 3 and some entry lies in [2, k - 1]
enum class CompositionClass { single, all_ones, mixed };

CompositionClass classify_composition(std::span<const int> alpha);

// ---------------------------------------------------------------------------

namespace detail {
void check_composition_budget(int k, int m);

template <typename Visit>
void compositions_rec(std::vector<int>& buf, std::size_t pos, int remaining, Visit& visit) {
  if (pos + 1 == buf.size()) {
    buf[pos] = remaining;
    visit(std::span<const int>(buf));
    return;
  }
  for (int a = 0; a <= remaining; ++a) {
    buf[pos] = a;
    compositions_rec(buf, pos + 1, remaining - a, visit);
  }
}
}  // namespace detail

template <typename Visit>
void for_each_composition(int k, int m, Visit&& visit) {
  detail::check_composition_budget(k, m);
  std::vector<int> buf(static_cast<std::size_t>(m), 0);
  detail::compositions_rec(buf, 0, k, visit);
}

}  // namespace hypoexp
