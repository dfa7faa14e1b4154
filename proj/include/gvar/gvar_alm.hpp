#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gvar/dates.hpp"
#include "gvar/market_data.hpp"
#include "gvar/rational.hpp"
#include "gvar/uncertainty.hpp"

namespace gvar {

/// Inputs to the worst-case quantile: mean plus the volatility band for one
/// window. mu is the plain sample mean of the window (the model carries no
/// mean uncertainty); sigma_lower/sigma_upper are standard deviations, not
/// variances.
struct GVarParams {
    double mu = 0.0;
    double sigma_lower = 0.0; // sigma lower bound, > 0
    double sigma_upper = 0.0; // sigma upper bound, >= sigma_lower
};

/// Left-tail quantile of the worst-case sublinear-expectation normal at risk
/// level alpha:
///   q = mu + sigma_upper * Phi^{-1}( (sigma_upper + sigma_lower) / (2 sigma_upper) * alpha ).
/// The reported value-at-risk is -q. Throws DomainError unless
/// 0 < alpha < 0.5, sigma_lower > 0, and sigma_upper >= sigma_lower. (The
/// scaled Phi^{-1} argument then always lies in (0, alpha].)
double worst_case_quantile(const GVarParams& p, double alpha);

/// Worst-case CDF of the same distribution, valid on x <= 0 only:
///   F(x) = 2 sigma_upper / (sigma_upper + sigma_lower) * Phi((x - mu) / sigma_upper).
/// Throws DomainError for x > 0 or an illegal sigma band.
double worst_case_cdf(const GVarParams& p, double x);

/// Adaptive-learning configuration. alpha is kept as an exact rational so the
/// comparison of the running violation rate against alpha has a decidable
/// equality branch.
struct AlmOptions {
    Rational alpha{1, 20};  // target risk level
    BlockConfig init{20, 8}; // starting (n0, n1)
    int w0 = 1;             // n0 adjustment step
    int w1 = 1;             // n1 adjustment step
    int n0_min = 4;         // lower clamp for n0
    int n0_max = 250;       // upper clamp for n0
    double sigma_floor = 1e-8;          // lower bound applied to sigma_lower
    std::optional<double> sigma_cap;    // optional upper bound on sigma_upper

    void validate() const; // throws ConfigError on an unusable combination
};

/// One scored observation of the adaptive loop.
struct TraceRecord {
    std::size_t index = 0; // position in the source return series
    Date date;
    double q = 0.0;        // signed left-tail quantile
    double g_var = 0.0;    // reported value-at-risk, -q
    bool violated = false; // Z_s < q
    double running_rate = 0.0; // violations / observations scored so far
    int n0 = 0;            // window pair used for THIS forecast
    int n1 = 0;
    double mu = 0.0;
    double sigma_lower = 0.0;
    double sigma_upper = 0.0;
    bool outside_closed_form = false; // q > 0: outside the closed form's stated domain
};

/// Quantile series consumed by the warning engine.
struct GVarPoint {
    std::size_t index = 0;
    Date date;
    double q = 0.0;
};
using GVarSeries = std::vector<GVarPoint>;

/// Outcome of a full adaptive run.
struct AlmResult {
    std::vector<TraceRecord> trace;
    std::int64_t violations = 0;
    std::int64_t observations = 0; // scored observations (excludes warm-up)

    double violation_rate() const {
        return observations == 0 ? 0.0
                                 : static_cast<double>(violations) / static_cast<double>(observations);
    }

    /// Exact violations / observations. Throws EmptyHistory when nothing was
    /// scored.
    Rational violation_rate_exact() const;

    /// Project the trace onto (index, date, q).
    GVarSeries quantile_series() const;
};

/// Exact running state of the adaptive loop, exposed so single steps can be
/// driven from tests.
class AdaptiveGVarState {
public:
    explicit AdaptiveGVarState(const AlmOptions& opts);

    const BlockConfig& windows() const { return windows_; }
    std::int64_t violations() const { return violations_; }
    std::int64_t observations() const { return observations_; }
    const AlmOptions& options() const { return opts_; }

    /// -1 / 0 / +1 as the exact running violation rate compares to alpha.
    int compare_rate_to_alpha() const;

    /// Record one scored observation and adapt (n0, n1):
    ///   rate < alpha  -> (n0 - w0, n1 + w1)   tighten history, widen blocks
    ///   rate > alpha  -> (n0 + w0, n1 - w1)
    ///   rate == alpha -> unchanged
    /// then clamp n0 to [n0_min, min(n0_max, history)] and n1 to [2, n0].
    /// `history` is the number of observations available for the next window.
    void record(bool violated, std::size_t history);

private:
    AlmOptions opts_;
    BlockConfig windows_;
    std::int64_t violations_ = 0;
    std::int64_t observations_ = 0;
};

/// Run the adaptive loop over a return series. Each observation s >= n0_init
/// is scored against the quantile computed from the trailing window
/// {Z_{s-n0} .. Z_{s-1}} (the current n0 observations strictly before s); the
/// first n0_init observations are warm-up and produce no trace rows. Throws
/// SeriesTooShort when nothing can be scored.
AlmResult run_alm_gvar(const ReturnSeries& returns, const AlmOptions& opts);

/// Same loop over a raw value vector (no dates); used by the synthetic
/// experiments. Dates in the trace are synthesized from the serial index.
AlmResult run_alm_gvar(const std::vector<double>& values, const AlmOptions& opts);

} // namespace gvar
