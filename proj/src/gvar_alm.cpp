#include "gvar/gvar_alm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gvar/errors.hpp"
#include "gvar/kernels.hpp"
#include "gvar/normal.hpp"

namespace gvar {

namespace {

void check_band(const GVarParams& p) {
    if (!(p.sigma_lower > 0.0) || !(p.sigma_upper >= p.sigma_lower)) {
        throw DomainError("need 0 < sigma_lower <= sigma_upper");
    }
}

} // namespace

double worst_case_quantile(const GVarParams& p, double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) {
        throw DomainError("risk level must lie in (0, 0.5), got " + std::to_string(alpha));
    }
    check_band(p);
    const double scaled = (p.sigma_upper + p.sigma_lower) / (2.0 * p.sigma_upper) * alpha;
    return p.mu + p.sigma_upper * std_normal_quantile(scaled);
}

double worst_case_cdf(const GVarParams& p, double x) {
    if (x > 0.0) {
        throw DomainError("worst-case cdf closed form is stated only for x <= 0");
    }
    check_band(p);
    return 2.0 * p.sigma_upper / (p.sigma_upper + p.sigma_lower) *
           std_normal_cdf((x - p.mu) / p.sigma_upper);
}

void AlmOptions::validate() const {
    if (alpha.num <= 0 || alpha.compare_ratio(1, 2) <= 0) {
        throw ConfigError("alpha must lie in (0, 1/2), got " + alpha.str());
    }
    init.validate();
    if (w0 < 1 || w1 < 1) throw ConfigError("window steps w0, w1 must be positive");
    if (n0_min < 2) throw ConfigError("n0_min must be at least 2");
    if (n0_max < n0_min) throw ConfigError("n0_max must be >= n0_min");
    if (init.n0 < n0_min || init.n0 > n0_max) {
        throw ConfigError("initial n0 = " + std::to_string(init.n0) + " outside [" +
                          std::to_string(n0_min) + ", " + std::to_string(n0_max) + "]");
    }
    if (!(sigma_floor > 0.0)) throw ConfigError("sigma_floor must be positive");
    if (sigma_cap && !(*sigma_cap >= sigma_floor)) {
        throw ConfigError("sigma_cap must be >= sigma_floor");
    }
}

AdaptiveGVarState::AdaptiveGVarState(const AlmOptions& opts) : opts_(opts), windows_(opts.init) {
    opts_.validate();
}

int AdaptiveGVarState::compare_rate_to_alpha() const {
    if (observations_ == 0) throw EmptyHistory("no scored observations yet");
    return opts_.alpha.compare_ratio(violations_, observations_);
}

void AdaptiveGVarState::record(bool violated, std::size_t history) {
    ++observations_;
    violations_ += violated ? 1 : 0;
    const int cmp = compare_rate_to_alpha(); // sign(running rate - alpha), exact
    int n0 = windows_.n0;
    int n1 = windows_.n1;
    if (cmp < 0) {
        n0 -= opts_.w0;
        n1 += opts_.w1;
    } else if (cmp > 0) {
        n0 += opts_.w0;
        n1 -= opts_.w1;
    }
    // Clamp n0 first (range and available history), then n1 against the
    // clamped n0; a bound on one coordinate never stops the other moving.
    const int history_cap =
        static_cast<int>(std::min<std::size_t>(history, static_cast<std::size_t>(opts_.n0_max)));
    n0 = std::clamp(n0, opts_.n0_min, history_cap);
    n1 = std::clamp(n1, 2, n0);
    windows_ = BlockConfig{n0, n1};
}

Rational AlmResult::violation_rate_exact() const {
    if (observations == 0) throw EmptyHistory("no scored observations");
    return Rational(violations, observations);
}

GVarSeries AlmResult::quantile_series() const {
    GVarSeries series;
    series.reserve(trace.size());
    for (const auto& rec : trace) series.push_back(GVarPoint{rec.index, rec.date, rec.q});
    return series;
}

namespace {

AlmResult run_impl(const std::vector<double>& z, const std::vector<Date>& dates,
                   const AlmOptions& opts) {
    opts.validate();
    const std::size_t warmup = static_cast<std::size_t>(opts.init.n0);
    if (z.size() <= warmup) {
        throw SeriesTooShort("series has " + std::to_string(z.size()) +
                             " observations, warm-up needs more than " + std::to_string(warmup));
    }
    const double alpha = opts.alpha.value();
    AdaptiveGVarState state(opts);
    AlmResult result;
    result.trace.reserve(z.size() - warmup);
    // Scratch sized for the widest window the clamp allows.
    std::vector<double> means(static_cast<std::size_t>(opts.n0_max));
    std::vector<double> vars(static_cast<std::size_t>(opts.n0_max));
    for (std::size_t s = warmup; s < z.size(); ++s) {
        const BlockConfig cfg = state.windows();
        const std::size_t n0 = static_cast<std::size_t>(cfg.n0);
        const std::size_t n1 = static_cast<std::size_t>(cfg.n1);
        const double* window = z.data() + (s - n0); // the n0 observations before s
        double sum = 0.0;
        for (std::size_t i = 0; i < n0; ++i) sum += window[i];
        const double mu = sum / static_cast<double>(n0);
        const std::size_t blocks = n0 - n1 + 1;
        kernels::block_moment_sweep(window, n0, n1, means.data(), vars.data());
        const auto var_extremes = kernels::minmax(vars.data(), blocks);
        double sigma_lower = std::max(std::sqrt(var_extremes.min), opts.sigma_floor);
        double sigma_upper = std::sqrt(var_extremes.max);
        if (opts.sigma_cap) sigma_upper = std::min(sigma_upper, *opts.sigma_cap);
        sigma_upper = std::max(sigma_upper, sigma_lower);
        const double q = worst_case_quantile(GVarParams{mu, sigma_lower, sigma_upper}, alpha);
        const bool violated = z[s] < q;
        state.record(violated, s + 1); // history available for the next forecast
        TraceRecord rec;
        rec.index = s;
        rec.date = dates[s];
        rec.q = q;
        rec.g_var = -q;
        rec.violated = violated;
        rec.running_rate = static_cast<double>(state.violations()) /
                           static_cast<double>(state.observations());
        rec.n0 = cfg.n0;
        rec.n1 = cfg.n1;
        rec.mu = mu;
        rec.sigma_lower = sigma_lower;
        rec.sigma_upper = sigma_upper;
        rec.outside_closed_form = q > 0.0;
        result.trace.push_back(rec);
    }
    result.violations = state.violations();
    result.observations = state.observations();
    return result;
}

} // namespace

AlmResult run_alm_gvar(const ReturnSeries& returns, const AlmOptions& opts) {
    std::vector<double> values;
    std::vector<Date> dates;
    values.reserve(returns.size());
    dates.reserve(returns.size());
    for (const auto& e : returns.entries()) {
        values.push_back(e.value);
        dates.push_back(e.date);
    }
    return run_impl(values, dates, opts);
}

AlmResult run_alm_gvar(const std::vector<double>& values, const AlmOptions& opts) {
    // Synthetic runs have no calendar; label observations with consecutive
    // serial dates so traces stay plottable and serializable.
    static const std::int64_t base = Date{2000, 1, 3}.serial();
    std::vector<Date> dates;
    dates.reserve(values.size());
    for (std::size_t s = 0; s < values.size(); ++s) {
        dates.push_back(Date::from_serial(base + static_cast<std::int64_t>(s)));
    }
    return run_impl(values, dates, opts);
}

} // namespace gvar
