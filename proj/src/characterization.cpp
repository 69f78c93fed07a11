#include "hypoexp/characterization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hypoexp/error.hpp"
#include "hypoexp/summation.hpp"

namespace hypoexp {

namespace {

void require_order(int order) {
  if (order < 1) throw Error(ErrorCode::invalid_argument, "order must be >= 1");
}

// Per-term weight of the j-th product: l_j for (h), l_j / mu_j for (q).
std::vector<double> combination_weights(const ScaleVector& mu, const WeightVector& w,
                                        ResidualKind kind) {
  std::vector<double> out(w.values);
  if (kind == ResidualKind::q) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] /= mu[j];
  }
  return out;
}

std::vector<double> all_but(std::span<const double> values, std::size_t skip) {
  std::vector<double> out;
  out.reserve(values.size() - 1);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != skip) out.push_back(values[i]);
  }
  return out;
}

struct Combination {
  std::vector<double> values;  // coefficient k of sum_j w_j Psi_j
  std::vector<double> scales;  // sum_j |w_j| coefficient k of prod |psi|(mu_i t)
};

Combination combine(const Series& psi, const ScaleVector& mu, std::span<const double> weights) {
  const int order = psi.order();
  const Series abs_psi = abs_coefficients(psi);
  std::vector<CompensatedSum> sums(static_cast<std::size_t>(order) + 1);
  std::vector<double> scales(static_cast<std::size_t>(order) + 1, 0.0);
  for (std::size_t j = 0; j < mu.size(); ++j) {
    const auto others = all_but(mu.values(), j);
    const Series psi_j = product_of_scaled(psi, others);
    const Series bound_j = product_of_scaled(abs_psi, others);
    for (int k = 0; k <= order; ++k) {
      sums[static_cast<std::size_t>(k)].add(weights[j] * psi_j[k]);
      scales[static_cast<std::size_t>(k)] += std::abs(weights[j]) * bound_j[k];
    }
  }
  Combination c;
  for (const auto& s : sums) c.values.push_back(s.value());
  c.scales = std::move(scales);
  return c;
}

Series normalized(const Series& psi) {
  const double a0 = psi[0];
  if (!std::isfinite(a0) || a0 == 0.0) {
    throw Error(ErrorCode::not_normalized,
                "psi_0 = " + std::to_string(a0) + " cannot be rescaled to 1");
  }
  Series out = psi;
  for (int k = 0; k <= out.order(); ++k) out[k] /= a0;
  if (out[0] != 1.0) {
    throw Error(ErrorCode::not_normalized, "psi_0 did not normalize to 1");
  }
  return out;
}

ResidualReport build_report(const Series& psi_raw, const ScaleVector& mu, double tol,
                            ResidualKind kind) {
  const Series psi = normalized(psi_raw);
  const WeightVector w = weights_from_scales(mu);
  const auto weights = combination_weights(mu, w, kind);
  const Combination rhs = combine(psi, mu, weights);

  ResidualReport report;
  report.kind = kind;
  report.order = psi.order();
  report.tolerance = tol;
  for (int k = 0; k <= psi.order(); ++k) {
    const auto idx = static_cast<std::size_t>(k);
    double r = 0.0;
    if (kind == ResidualKind::h) {
      r = rhs.values[idx] - (k == 0 ? 1.0 : 0.0);
    } else {
      r = -rhs.values[idx] - (k == 1 ? 1.0 : 0.0);
    }
    const double scale = std::max(1.0, rhs.scales[idx]);
    report.residuals.push_back(r);
    report.scales.push_back(scale);
    if (!report.first_violation_k && !(std::abs(r) <= tol * scale)) report.first_violation_k = k;
  }

  if (report.first_violation_k) {
    report.verdict = Verdict::incompatible;
  } else if (psi.order() >= 1 && psi[1] > tol) {
    report.verdict = Verdict::exponential_compatible;
    report.fitted_lambda = 1.0 / psi[1];
  } else {
    // Residuals vanish but the mean a_1 is not positive: psi == 1 (X == 0)
    // or a series that is not the reciprocal of any Laplace transform.
    report.verdict = Verdict::degenerate;
  }
  return report;
}

}  // namespace

StructuralCoefficients c_coefficients(const ScaleVector& mu, int order, double tol) {
  require_order(order);
  const WeightVector w = weights_from_scales(mu);
  StructuralCoefficients out;
  out.kind = CoefficientKind::c;
  for (int k = 1; k <= order; ++k) {
    CompensatedSum s;
    for (std::size_t j = 0; j < mu.size(); ++j) {
      const double p = std::pow(mu[j], k);
      s.add(p);
      s.add(-w[j] * p);
    }
    const double c = s.value();
    const double mag = s.magnitude();
    const bool ok = (k == 1) ? std::abs(c) <= tol * std::max(1.0, mag) : c < 0.0;
    if (!ok) {
      throw Error(ErrorCode::structure_violation,
                  "c_" + std::to_string(k) + " = " + std::to_string(c) +
                      (k == 1 ? " is not zero" : " is not negative"));
    }
    out.values.push_back(c);
    out.magnitudes.push_back(mag);
  }
  return out;
}

StructuralCoefficients d_coefficients(const ScaleVector& mu, int order, double tol) {
  require_order(order);
  const WeightVector w = weights_from_scales(mu);
  StructuralCoefficients out;
  out.kind = CoefficientKind::d;
  for (int k = 1; k <= order; ++k) {
    CompensatedSum s;
    for (std::size_t j = 0; j < mu.size(); ++j) s.add(w[j] * std::pow(mu[j], k - 1));
    const double d = s.value();
    const double mag = s.magnitude();
    const bool ok = (k == 1) ? std::abs(d - 1.0) <= tol * std::max(1.0, mag) : d > 0.0;
    if (!ok) {
      throw Error(ErrorCode::structure_violation,
                  "d_" + std::to_string(k) + " = " + std::to_string(d) +
                      (k == 1 ? " is not one" : " is not positive"));
    }
    out.values.push_back(d);
    out.magnitudes.push_back(mag);
  }
  return out;
}

Lemma2Report lemma2_check(const RateVector& rates, int order, double tol) {
  require_order(order);
  const WeightVector w = lagrange_weights(rates);
  const auto lambda = rates.values();
  const std::size_t n = rates.size();

  Lemma2Report r;
  r.order = order;
  r.tolerance = tol;

  const CompensatedSum total = compensated_sum(w.values);
  r.weight_sum = total.value();
  r.weight_scale = std::max(1.0, total.magnitude());
  r.sum_ok = std::abs(r.weight_sum - 1.0) <= tol * r.weight_scale;

  r.power_sums_ok = true;
  for (std::size_t k = 1; k + 1 <= n; ++k) {
    CompensatedSum s;
    for (std::size_t j = 0; j < n; ++j) s.add(w[j] * std::pow(lambda[j], static_cast<double>(k)));
    r.power_sums.push_back(s.value());
    r.power_sum_scales.push_back(std::max(1e-300, s.magnitude()));
    if (!(std::abs(s.value()) <= tol * s.magnitude())) r.power_sums_ok = false;
  }

  std::vector<double> inverse(n);
  for (std::size_t j = 0; j < n; ++j) inverse[j] = 1.0 / lambda[j];
  const auto h = complete_homogeneous(inverse, order);

  r.gaps_ok = true;
  r.gaps_beyond_range_ok = true;
  r.symmetric_ok = true;
  for (int k = 1; k <= order; ++k) {
    CompensatedSum weighted;
    CompensatedSum plain;
    for (std::size_t j = 0; j < n; ++j) {
      const double p = std::pow(inverse[j], k);
      weighted.add(w[j] * p);
      plain.add(p);
    }
    const double gap = weighted.value() - plain.value();
    const double scale = weighted.magnitude() + plain.magnitude();
    r.inverse_gaps.push_back(gap);
    r.inverse_gap_scales.push_back(scale);

    const bool ok = (k == 1) ? std::abs(gap) <= tol * scale : gap > 0.0;
    if (static_cast<std::size_t>(k) <= n - 1) {
      r.gaps_ok = r.gaps_ok && ok;
    } else {
      r.gaps_beyond_range_ok = r.gaps_beyond_range_ok && ok;
    }

    const double sym = weighted.value() - h[static_cast<std::size_t>(k)];
    r.symmetric_residuals.push_back(sym);
    if (!(std::abs(sym) <= tol * std::max(weighted.magnitude(), h[static_cast<std::size_t>(k)]))) {
      r.symmetric_ok = false;
    }
  }
  return r;
}

std::string ResidualReport::verdict_label() const {
  switch (verdict) {
    case Verdict::exponential_compatible: return "exponential-compatible";
    case Verdict::degenerate: return "degenerate";
    case Verdict::incompatible:
      return "incompatible-at-order-" + std::to_string(first_violation_k.value_or(-1));
  }
  return "unknown";
}

ResidualReport residual_h(const Series& psi, const ScaleVector& mu, double tol) {
  return build_report(psi, mu, tol, ResidualKind::h);
}

ResidualReport residual_q(const Series& psi, const ScaleVector& mu, double tol) {
  return build_report(psi, mu, tol, ResidualKind::q);
}

Series forward_solve_theorem1(const ScaleVector& mu, double a1, int order, double tol) {
  require_order(order);
  if (!(a1 > 0.0) || !std::isfinite(a1)) {
    throw Error(ErrorCode::invalid_argument, "a_1 must be positive");
  }
  const StructuralCoefficients c = c_coefficients(mu, order, tol);
  const WeightVector w = weights_from_scales(mu);

  Series a = Series::zero(order);
  a[0] = 1.0;
  a[1] = a1;
  for (int k = 2; k <= order; ++k) {
    // The all-ones multi-indices contribute a_1^k sum_j l_j e_k(mu without j),
    // which must cancel for the recursion to isolate a_k.
    CompensatedSum ones;
    for (std::size_t j = 0; j < mu.size(); ++j) {
      const auto e = elementary_symmetric(all_but(mu.values(), j), k);
      ones.add(w[j] * e[static_cast<std::size_t>(k)]);
    }
    const double a1k = std::pow(a1, k);
    if (!(std::abs(ones.value()) * a1k <= tol * std::max(1.0, ones.magnitude() * a1k))) {
      throw Error(ErrorCode::structure_violation,
                  "all-ones contribution at order " + std::to_string(k) + " does not cancel");
    }

    const double ck = c.at(k);
    if (!(std::abs(ck) > tol * c.magnitudes[static_cast<std::size_t>(k - 1)])) {
      throw Error(ErrorCode::zero_divisor, "c_" + std::to_string(k) + " vanishes");
    }

    a[k] = 0.0;
    const Combination h = combine(a, mu, w.values);
    a[k] = -h.values[static_cast<std::size_t>(k)] / ck;
  }
  return a;
}

Series forward_solve_theorem2(const ScaleVector& mu, int order, double tol) {
  require_order(order);
  const StructuralCoefficients d = d_coefficients(mu, order, tol);
  const WeightVector w = weights_from_scales(mu);
  const auto weights = combination_weights(mu, w, ResidualKind::q);

  Series a = Series::zero(order);
  a[0] = 1.0;
  for (int k = 1; k <= order; ++k) {
    const double dk = d.at(k);
    if (!(std::abs(dk) > tol * d.magnitudes[static_cast<std::size_t>(k - 1)])) {
      throw Error(ErrorCode::zero_divisor, "d_" + std::to_string(k) + " vanishes");
    }
    a[k] = 0.0;
    const Combination rhs = combine(a, mu, weights);
    const double qk = -rhs.values[static_cast<std::size_t>(k)];
    a[k] = ((k == 1 ? 1.0 : 0.0) - qk) / dk;
  }
  return a;
}

ExponentialFit is_exponential_series(const Series& psi, double tol) {
  if (!(std::abs(psi[0] - 1.0) <= tol)) {
    throw Error(ErrorCode::not_normalized, "psi_0 = " + std::to_string(psi[0]) + ", expected 1");
  }
  ExponentialFit fit;
  if (psi.order() < 1 || !(psi[1] > 0.0)) return fit;
  for (int k = 2; k <= psi.order(); ++k) {
    if (!(std::abs(psi[k]) <= tol * std::max(1.0, std::pow(psi[1], k)))) return fit;
  }
  fit.exponential = true;
  fit.lambda = 1.0 / psi[1];
  return fit;
}

PartitionContributions partition_contributions(const Series& psi, const ScaleVector& mu, int k,
                                               ResidualKind kind) {
  if (k < 0 || k > psi.order()) {
    throw Error(ErrorCode::invalid_argument, "order " + std::to_string(k) + " outside series");
  }
  const WeightVector w = weights_from_scales(mu);
  const auto weights = combination_weights(mu, w, kind);
  PartitionContributions out;
  for (std::size_t j = 0; j < mu.size(); ++j) {
    const auto others = all_but(mu.values(), j);
    for_each_composition(k, static_cast<int>(others.size()), [&](std::span<const int> alpha) {
      double term = weights[j];
      for (std::size_t i = 0; i < alpha.size(); ++i) {
        term *= std::pow(others[i], alpha[i]) * psi[alpha[i]];
      }
      switch (classify_composition(alpha)) {
        case CompositionClass::single: out.single += term; break;
        case CompositionClass::all_ones:
          out.all_ones += term;
          out.all_ones_scale += std::abs(term);
          break;
        case CompositionClass::mixed: out.mixed += term; break;
      }
    });
  }
  return out;
}

}  // namespace hypoexp
