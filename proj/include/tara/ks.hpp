#pragma once

#include <cstdint>
#include <span>

namespace tara {

// One-sample Kolmogorov-Smirnov distance from Uniform(0,1), computed exactly
// from the order statistics: max_i max(i/n - p_(i), p_(i) - (i-1)/n).
double ks_uniform(std::span<const double> pvalues);

// Exact two-sample KS distance: sup over the merged support of the absolute
// empirical-CDF difference.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

// Asymptotic Kolmogorov critical value c_alpha = sqrt(-ln(alpha/2) / 2);
// c_0.05 ~ 1.3581.
double ks_critical_value(double alpha);

// Rejection thresholds: c_alpha / sqrt(n) (one-sample) and
// c_alpha * sqrt((n+m) / (n m)) (two-sample).
double ks_threshold_one_sample(std::int64_t n, double alpha);
double ks_threshold(std::int64_t n, std::int64_t m, double alpha);

}  // namespace tara
