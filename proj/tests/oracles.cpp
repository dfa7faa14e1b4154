#include "oracles.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

namespace oracle {
namespace {

const long double kSqrt2Pi = std::sqrt(2.0L * std::numbers::pi_v<long double>);

long double phi(long double x) { return std::exp(-0.5L * x * x) / kSqrt2Pi; }

/// Sum of a^(2k+1) / (1*3*5*...*(2k+1)); Phi(a) - 1/2 = phi(a) * series(a).
long double central_series(long double a) {
    long double term = a;
    long double sum = a;
    for (int k = 1; k < 800; ++k) {
        term *= a * a / static_cast<long double>(2 * k + 1);
        sum += term;
        if (term < sum * 1e-22L) break;
    }
    return sum;
}

/// Mills-ratio continued fraction a + 1/(a + 2/(a + 3/(...))) by the
/// modified Lentz algorithm; Q(a) = phi(a) / cf(a).
long double mills_cf(long double a) {
    const long double tiny = 1e-300L;
    long double f = a == 0.0L ? tiny : a;
    long double c = f;
    long double d = 0.0L;
    for (int i = 1; i < 200000; ++i) {
        const long double ai = static_cast<long double>(i);
        d = a + ai * d;
        if (d == 0.0L) d = tiny;
        c = a + ai / c;
        if (c == 0.0L) c = tiny;
        d = 1.0L / d;
        const long double delta = c * d;
        f *= delta;
        if (std::fabs(delta - 1.0L) < 1e-21L) break;
    }
    return f;
}

} // namespace

long double normal_tail(long double a) {
    if (a < 0.0L) throw std::invalid_argument("normal_tail: a must be >= 0");
    if (a < 4.0L) return 0.5L - phi(a) * central_series(a);
    return phi(a) / mills_cf(a);
}

long double normal_cdf(long double x) {
    if (x >= 0.0L) return 1.0L - normal_tail(x);
    return normal_tail(-x);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p outside (0,1)");
    long double lo = -40.0L;
    long double hi = 40.0L;
    const long double target = static_cast<long double>(p);
    for (int i = 0; i < 300; ++i) {
        const long double mid = 0.5L * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (normal_cdf(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return static_cast<double>(0.5L * (lo + hi));
}

double chi2_sf1(double x) {
    if (x < 0.0) throw std::invalid_argument("chi2_sf1: x must be >= 0");
    return static_cast<double>(2.0L * normal_tail(std::sqrt(static_cast<long double>(x))));
}

KupiecResult kupiec(std::int64_t violations, std::int64_t total, double alpha) {
    const long double n = static_cast<long double>(violations);
    const long double t = static_cast<long double>(total);
    const long double a = static_cast<long double>(alpha);
    const long double ah = n / t;
    long double stat = 0.0L;
    if (violations > 0) stat += n * std::log(ah / a);
    if (violations < total) stat += (t - n) * std::log((1.0L - ah) / (1.0L - a));
    stat *= 2.0L;
    if (stat < 0.0L) stat = 0.0L;
    KupiecResult r;
    r.stat = static_cast<double>(stat);
    r.p = chi2_sf1(r.stat);
    r.alpha_hat = static_cast<double>(ah);
    return r;
}

double christoffersen_stat(const std::vector<bool>& flags) {
    const std::size_t n = flags.size();
    if (n < 2) throw std::invalid_argument("christoffersen_stat: need at least two flags");
    long double n00 = 0, n01 = 0, n10 = 0, n11 = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (!flags[i - 1] && !flags[i]) ++n00;
        if (!flags[i - 1] && flags[i]) ++n01;
        if (flags[i - 1] && !flags[i]) ++n10;
        if (flags[i - 1] && flags[i]) ++n11;
    }
    const long double pairs = n00 + n01 + n10 + n11;
    const long double pi = (n01 + n11) / pairs;
    const long double pi01 = (n00 + n01) > 0 ? n01 / (n00 + n01) : 0.0L;
    const long double pi11 = (n10 + n11) > 0 ? n11 / (n10 + n11) : 0.0L;
    // Walk the sequence once more, adding the log-probability of every
    // observed transition under both models. Observed transitions always have
    // positive fitted probability, so no log(0) can arise.
    long double ll_alt = 0.0L;
    long double ll_null = 0.0L;
    for (std::size_t i = 1; i < n; ++i) {
        const bool prev = flags[i - 1];
        const bool cur = flags[i];
        const long double p_alt = prev ? (cur ? pi11 : 1.0L - pi11) : (cur ? pi01 : 1.0L - pi01);
        const long double p_null = cur ? pi : 1.0L - pi;
        ll_alt += std::log(p_alt);
        ll_null += std::log(p_null);
    }
    long double stat = 2.0L * (ll_alt - ll_null);
    if (stat < 0.0L) stat = 0.0L;
    return static_cast<double>(stat);
}

void block_moments_naive(const std::vector<double>& window, int n1,
                         std::vector<double>& means, std::vector<double>& vars) {
    const int n0 = static_cast<int>(window.size());
    if (n1 < 2 || n1 > n0) throw std::invalid_argument("block_moments_naive: bad n1");
    const int k = n0 - n1 + 1;
    means.assign(static_cast<std::size_t>(k), 0.0);
    vars.assign(static_cast<std::size_t>(k), 0.0);
    for (int j = 0; j < k; ++j) {
        long double sum = 0.0L;
        for (int i = 0; i < n1; ++i) sum += static_cast<long double>(window[j + i]);
        const long double mean = sum / static_cast<long double>(n1);
        long double ss = 0.0L;
        for (int i = 0; i < n1; ++i) {
            const long double d = static_cast<long double>(window[j + i]) - mean;
            ss += d * d;
        }
        means[static_cast<std::size_t>(j)] = static_cast<double>(mean);
        vars[static_cast<std::size_t>(j)] = static_cast<double>(ss / static_cast<long double>(n1 - 1));
    }
}

ExtremalMoments extremal_moments_naive(const std::vector<double>& window, int n1) {
    std::vector<double> means;
    std::vector<double> vars;
    block_moments_naive(window, n1, means, vars);
    ExtremalMoments m{means[0], means[0], vars[0], vars[0]};
    for (std::size_t j = 1; j < means.size(); ++j) {
        if (means[j] < m.mean_lower) m.mean_lower = means[j];
        if (means[j] > m.mean_upper) m.mean_upper = means[j];
        if (vars[j] < m.var_lower) m.var_lower = vars[j];
        if (vars[j] > m.var_upper) m.var_upper = vars[j];
    }
    return m;
}

} // namespace oracle
