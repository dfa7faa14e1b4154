#include "gvar/normal.hpp"

#include <cmath>
#include <string>

#include "gvar/errors.hpp"

namespace gvar {

double std_normal_cdf(double x) noexcept {
    // erfc keeps full relative accuracy deep in the left tail, where the
    // quantile evaluations live.
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

namespace {

// Rational minimax initial guess for the normal quantile (Acklam's
// approximation, |relative error| < 1.2e-9), tightened below by one Halley
// step to full double precision.
double quantile_initial(double p) {
    static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                    -2.759285104469687e+02, 1.383577518672690e+02,
                                    -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                    -1.556989798598866e+02, 6.680131188771972e+01,
                                    -1.328068155288572e+01};
    static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                    -2.400758277161838e+00, -2.549732539343734e+00,
                                    4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                    2.445134137142996e+00, 3.754408661907416e+00};
    static constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

} // namespace

double std_normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("normal quantile requires 0 < p < 1, got " + std::to_string(p));
    }
    // Reduce to the lower tail: 1 - p is exact for p >= 0.5, and the Halley
    // step below only reaches full precision where the cdf is small (the
    // residual cdf(x) - p would otherwise drown in the rounding of values
    // near 1).
    if (p > 0.5) return -std_normal_quantile(1.0 - p);
    double x = quantile_initial(p);
    // One Halley refinement against the full-precision CDF.
    static const double sqrt_2pi = std::sqrt(8.0 * std::atan(1.0));
    const double err = std_normal_cdf(x) - p;
    const double u = err * sqrt_2pi * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

double chi2_sf(double x) {
    if (x < 0.0) throw DomainError("chi-squared survival requires x >= 0");
    // One degree of freedom: P(Z^2 > x) = 2 (1 - Phi(sqrt x)) = erfc(sqrt(x/2)).
    return std::erfc(std::sqrt(0.5 * x));
}

double chi2_cdf(double x) {
    if (x < 0.0) throw DomainError("chi-squared cdf requires x >= 0");
    return std::erf(std::sqrt(0.5 * x));
}

} // namespace gvar
