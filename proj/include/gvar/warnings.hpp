#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gvar/dates.hpp"
#include "gvar/gvar_alm.hpp"
#include "gvar/uncertainty.hpp"

namespace gvar {

/// Warning lines. The mean/volatility lines vary by market and ship as named
/// presets (see presets.hpp); the quantile tiers default to the common values
/// below.
struct ThresholdConfig {
    double lower_mean_line = -0.01; // trigger when lower mean < line
    double mean_diff_line = 0.015;  // trigger when upper - lower mean > line
    double upper_vol_line = 0.03;   // trigger when upper sigma > line
    double vol_ratio_line = 3.0;    // trigger when upper/lower sigma > line
    double gvar_level = -0.05;      // tier 1: quantile below this line
    double gvar_trend = -0.04;      // tier 2: one-step quantile drop below this
    double gvar_deep = -0.10;       // tier 3: quantile at or below this
    double gvar_deep_near = -0.08;  // tier 3 proximity line, needs a trend break

    /// Throws ConfigError unless lower_mean_line < 0, mean_diff_line > 0,
    /// upper_vol_line > 0, vol_ratio_line > 1, gvar_trend < 0 and
    /// gvar_deep <= gvar_deep_near < gvar_level < 0.
    void validate() const;
};

enum class Indicator {
    LowerMean,
    MeanDiff,
    UpperVol,
    VolRatio,
    GVarLevel,
    GVarTrend,
    GVarDeep,
};

const char* indicator_name(Indicator ind);
Indicator parse_indicator(std::string_view name); // throws ConfigError

/// Tier of a quantile-family indicator (1..3); 0 for the mean/volatility
/// families.
int indicator_tier(Indicator ind);

struct WarningSignal {
    std::size_t index = 0; // observation index in the source series
    Date date;
    Indicator indicator = Indicator::LowerMean;
    double value = 0.0; // the quantity that crossed the line
    int tier = 0;       // 1..3 for quantile indicators, 0 otherwise
};

/// LowerMean at each date with lower mean < lower_mean_line; MeanDiff at each
/// date with (upper - lower) > mean_diff_line. Strict inequalities.
std::vector<WarningSignal> mean_signals(const UncertaintySeries& u, const ThresholdConfig& cfg);

/// UpperVol at each date with upper sigma > upper_vol_line; VolRatio at each
/// date with a defined ratio > vol_ratio_line. Dates with an undefined ratio
/// emit no VolRatio signal.
std::vector<WarningSignal> volatility_signals(const UncertaintySeries& u, const ThresholdConfig& cfg);

/// Quantile-family signals with escalation:
///   tier 2 (GVarTrend) at s when q_s - q_{s-1} < gvar_trend;
///   tier 3 (GVarDeep)  at s when q_s <= gvar_deep, or q_s <= gvar_deep_near
///                      and a trend break fired at s or s-1;
///   tier 1 (GVarLevel) at s when q_s < gvar_level and no higher tier fired
///                      at s (a date escalates to its strongest reading;
///                      trend and deep can co-fire).
std::vector<WarningSignal> gvar_signals(const GVarSeries& g, const ThresholdConfig& cfg);

/// Per-date union of signals from all families.
struct CorroboratedWarning {
    std::size_t index = 0;
    Date date;
    std::vector<Indicator> indicators; // present at this date, in enum order
    bool crisis = false; // GVarDeep here plus a mean/vol-family signal within the window
};

/// Merge the three signal families by date. crisis is set on a date carrying
/// a GVarDeep when at least one mean- or volatility-family signal occurred
/// within the preceding `window` observations (same date included: co-firing
/// families corroborate each other).
std::vector<CorroboratedWarning> corroborate(const std::vector<WarningSignal>& mean_family,
                                             const std::vector<WarningSignal>& vol_family,
                                             const std::vector<WarningSignal>& gvar_family,
                                             std::size_t window = 3);

} // namespace gvar
