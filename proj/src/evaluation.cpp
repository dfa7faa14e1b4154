#include "gvar/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gvar/errors.hpp"
#include "gvar/normal.hpp"

namespace gvar {

ConfusionCounts match_warnings(const std::vector<WarningSignal>& signals,
                               const EventLabels& labels, std::size_t horizon) {
    const std::size_t total = labels.flags.size();
    std::vector<std::size_t> events;
    for (std::size_t i = 0; i < total; ++i) {
        if (labels.flags[i].is_abnormal) events.push_back(i);
    }
    std::vector<std::size_t> signal_indices;
    signal_indices.reserve(signals.size());
    for (const auto& sig : signals) {
        if (sig.index >= total) {
            throw IndexSpaceMismatch("signal index " + std::to_string(sig.index) +
                                     " outside label range of " + std::to_string(total));
        }
        signal_indices.push_back(sig.index);
    }
    std::sort(signal_indices.begin(), signal_indices.end());

    ConfusionCounts counts;
    // Every signal is classified on its own: hit when an event lies in
    // [s, s + horizon].
    for (const auto& sig : signals) {
        const auto it = std::lower_bound(events.begin(), events.end(), sig.index);
        const bool hit = it != events.end() && *it <= sig.index + horizon;
        if (hit) {
            ++counts.tp;
        } else {
            ++counts.fp;
        }
    }
    // Events are counted once: missed when no signal lies in [e - horizon, e].
    for (const std::size_t e : events) {
        const std::size_t lo = e >= horizon ? e - horizon : 0;
        const auto it = std::lower_bound(signal_indices.begin(), signal_indices.end(), lo);
        const bool warned = it != signal_indices.end() && *it <= e;
        if (!warned) ++counts.fn;
    }
    return counts;
}

EvaluationReport classification_metrics(const ConfusionCounts& c, std::size_t horizon) {
    EvaluationReport report;
    report.counts = c;
    report.horizon = horizon;
    const double tp = static_cast<double>(c.tp);
    const double fp = static_cast<double>(c.fp);
    const double fn = static_cast<double>(c.fn);
    if (c.tp + c.fp > 0) report.precision = tp / (tp + fp);
    if (c.tp + c.fn > 0) {
        report.recall = tp / (tp + fn);
        report.miss = fn / (tp + fn);
    }
    if (2 * c.tp + c.fp + c.fn > 0) report.f1 = 2.0 * tp / (2.0 * tp + fp + fn);
    return report;
}

UcTestResult kupiec_uc_test(std::int64_t violations, std::int64_t total, double alpha) {
    if (total == 0) throw DegenerateInput("coverage test needs at least one observation");
    if (total < 0 || violations < 0 || violations > total) {
        throw DomainError("need 0 <= violations <= total");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
    const double n = static_cast<double>(violations);
    const double t = static_cast<double>(total);
    const double alpha_hat = n / t;
    double stat = 0.0;
    if (violations > 0) stat += n * std::log(alpha_hat / alpha);
    if (violations < total) stat += (t - n) * std::log((1.0 - alpha_hat) / (1.0 - alpha));
    stat = std::max(2.0 * stat, 0.0); // guard the tiny negative from rounding at alpha_hat ~ alpha
    return UcTestResult{stat, chi2_sf(stat), alpha_hat};
}

IndTestResult christoffersen_ind_test(const std::vector<bool>& flags) {
    if (flags.size() < 2) {
        throw SeriesTooShort("independence test needs at least two flags");
    }
    IndTestResult r;
    for (std::size_t i = 1; i < flags.size(); ++i) {
        const bool prev = flags[i - 1];
        const bool cur = flags[i];
        if (!prev && !cur) ++r.n00;
        if (!prev && cur) ++r.n01;
        if (prev && !cur) ++r.n10;
        if (prev && cur) ++r.n11;
    }
    const double row0 = static_cast<double>(r.n00 + r.n01);
    const double row1 = static_cast<double>(r.n10 + r.n11);
    const double ones = static_cast<double>(r.n01 + r.n11);
    const double total = row0 + row1;

    // Bernoulli log-likelihood k successes out of n at probability p, with the
    // 0 * log 0 := 0 convention; p is always positive where its count is.
    const auto loglik = [](double k, double n, double p) {
        double ll = 0.0;
        if (k > 0) ll += k * std::log(p);
        if (n - k > 0) ll += (n - k) * std::log(1.0 - p);
        return ll;
    };

    const double pi = ones / total;
    const double restricted = loglik(ones, total, pi);
    double unrestricted = 0.0;
    if (r.n00 + r.n01 > 0) unrestricted += loglik(static_cast<double>(r.n01), row0,
                                                  static_cast<double>(r.n01) / row0);
    if (r.n10 + r.n11 > 0) unrestricted += loglik(static_cast<double>(r.n11), row1,
                                                  static_cast<double>(r.n11) / row1);
    r.stat = std::max(2.0 * (unrestricted - restricted), 0.0);
    r.degenerate = (r.n00 + r.n01 == 0) || (r.n10 + r.n11 == 0);
    if (!r.degenerate) r.p = chi2_sf(r.stat);
    return r;
}

BacktestReport backtest_violations(const std::vector<bool>& flags, const Rational& alpha) {
    const std::int64_t total = static_cast<std::int64_t>(flags.size());
    const std::int64_t fact = std::count(flags.begin(), flags.end(), true);
    const double a = alpha.value();
    const UcTestResult uc = kupiec_uc_test(fact, total, a);
    const IndTestResult ind = christoffersen_ind_test(flags);
    BacktestReport report;
    report.theo_viol = a * static_cast<double>(total);
    report.fact_viol = fact;
    report.total = total;
    report.alpha_hat = uc.alpha_hat;
    report.lr_uc_stat = uc.stat;
    report.lr_uc_p = uc.p;
    report.lr_ind_stat = ind.stat;
    report.lr_ind_p = ind.p;
    report.pass_uc = uc.p > a;
    if (ind.p) report.pass_ind = *ind.p > a;
    return report;
}

} // namespace gvar
