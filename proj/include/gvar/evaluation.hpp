#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gvar/market_data.hpp"
#include "gvar/rational.hpp"
#include "gvar/warnings.hpp"

namespace gvar {

struct ConfusionCounts {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;
    std::int64_t tn = 0; // not used by any metric here; kept for completeness
};

/// P, M, R, F1 with explicit undefined states (nullopt) when a denominator
/// is zero. miss = 1 - recall whenever both are defined.
struct EvaluationReport {
    ConfusionCounts counts;
    std::size_t horizon = 1; // matching window used, in observations
    std::optional<double> precision; // tp / (tp + fp)
    std::optional<double> miss;      // fn / (tp + fn)
    std::optional<double> recall;    // tp / (tp + fn)
    std::optional<double> f1;        // 2 tp / (2 tp + fp + fn)
};

/// Match dated signals against event labels over the same observation index
/// space (signal indices must lie inside [0, len(labels))).
///
/// A signal at s is a true positive when some abnormal event occurs at an
/// observation in [s, s + horizon], otherwise a false positive; every signal
/// is classified individually. An event at e with no signal in
/// [e - horizon, e] counts once as a false negative, no matter how many
/// signals pointed at other events. Throws IndexSpaceMismatch when a signal
/// index falls outside the label range.
ConfusionCounts match_warnings(const std::vector<WarningSignal>& signals,
                               const EventLabels& labels,
                               std::size_t horizon = 1);

/// Precision / miss rate / recall / F1 from raw counts; zero-denominator
/// metrics are left undefined rather than clamped.
EvaluationReport classification_metrics(const ConfusionCounts& c, std::size_t horizon = 1);

/// Kupiec unconditional-coverage likelihood-ratio test:
///   stat = 2 [ N ln(a^/a) + (T - N) ln((1-a^)/(1-a)) ],  a^ = N / T,
/// with 0 * ln 0 := 0; p from the chi-squared(1) survival function.
/// Throws DegenerateInput when T = 0, DomainError for N outside [0, T] or
/// alpha outside (0, 1).
struct UcTestResult {
    double stat = 0.0;
    double p = 1.0;
    double alpha_hat = 0.0;
};
UcTestResult kupiec_uc_test(std::int64_t violations, std::int64_t total, double alpha);

/// Christoffersen first-order-Markov independence likelihood-ratio test over
/// an ordered violation-flag sequence. Transition counts n00, n01, n10, n11;
/// empty likelihood factors contribute 1 (0^0 := 1). When a whole transition
/// row is empty (for example no violations at all) the test is degenerate and
/// p is undefined. Throws SeriesTooShort for fewer than two flags.
struct IndTestResult {
    double stat = 0.0;
    std::optional<double> p; // nullopt when degenerate
    bool degenerate = false;
    std::int64_t n00 = 0, n01 = 0, n10 = 0, n11 = 0;
};
IndTestResult christoffersen_ind_test(const std::vector<bool>& flags);

/// Violation backtest summary, one row of the coverage table.
struct BacktestReport {
    double theo_viol = 0.0;  // alpha * T
    std::int64_t fact_viol = 0;
    std::int64_t total = 0;
    double alpha_hat = 0.0;
    double lr_uc_stat = 0.0;
    double lr_uc_p = 0.0;
    double lr_ind_stat = 0.0;
    std::optional<double> lr_ind_p;
    bool pass_uc = false;       // lr_uc_p > alpha
    std::optional<bool> pass_ind; // nullopt when the independence test is degenerate
};

/// Run both coverage tests over a violation-flag sequence at risk level
/// alpha. Throws SeriesTooShort for fewer than two flags.
BacktestReport backtest_violations(const std::vector<bool>& flags, const Rational& alpha);

} // namespace gvar
