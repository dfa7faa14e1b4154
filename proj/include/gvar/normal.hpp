#pragma once

namespace gvar {

/// Standard normal CDF. Computed via erfc so the deep left tail keeps full
/// relative accuracy.
double std_normal_cdf(double x) noexcept;

/// Standard normal quantile (inverse CDF). Requires 0 < p < 1, otherwise
/// throws DomainError. |std_normal_cdf(std_normal_quantile(p)) - p| <= 1e-10
/// for p in [1e-8, 1 - 1e-8].
double std_normal_quantile(double p);

/// Survival function of the chi-squared distribution with one degree of
/// freedom: 2 * (1 - Phi(sqrt(x))). Throws DomainError for x < 0.
double chi2_sf(double x);

/// Lower CDF of chi-squared with one degree of freedom, computed through erf
/// rather than as 1 - chi2_sf.
double chi2_cdf(double x);

} // namespace gvar
