// Independent reference implementations used to cross-check the library.
// Everything here is deliberately written against different algorithms than
// the production code (power series / continued fractions instead of erfc,
// long-double two-pass enumeration instead of the kernel sweeps) so that a
// shared bug cannot hide.
#pragma once

#include <cstdint>
#include <vector>

namespace oracle {

/// Standard normal CDF via a Taylor series around 0 and a Mills-ratio
/// continued fraction in the tails, accumulated in long double.
long double normal_cdf(long double x);

/// Upper tail Q(a) = 1 - Phi(a) for a >= 0, accurate in relative terms.
long double normal_tail(long double a);

/// Quantile by bisection on normal_cdf. Requires 0 < p < 1.
double normal_quantile(double p);

/// Survival function of chi-squared with one degree of freedom,
/// 2 * (1 - Phi(sqrt(x))), x >= 0.
double chi2_sf1(double x);

struct KupiecResult {
    double stat;
    double p;
    double alpha_hat;
};

/// Unconditional-coverage likelihood ratio computed in long double with the
/// chi-squared survival value from this file.
KupiecResult kupiec(std::int64_t violations, std::int64_t total, double alpha);

/// Independence likelihood ratio accumulated pair by pair (log of each
/// observed transition probability), not from the count-based closed form.
double christoffersen_stat(const std::vector<bool>& flags);

struct ExtremalMoments {
    double mean_lower;
    double mean_upper;
    double var_lower;
    double var_upper;
};

/// Exhaustive enumeration of every contiguous block of length n1 in the
/// window: per-block two-pass mean and unbiased variance in long double,
/// then plain min/max scans. Requires 2 <= n1 <= window.size().
ExtremalMoments extremal_moments_naive(const std::vector<double>& window, int n1);

/// Per-block means and unbiased variances from the same enumeration.
void block_moments_naive(const std::vector<double>& window, int n1,
                         std::vector<double>& means, std::vector<double>& vars);

} // namespace oracle
