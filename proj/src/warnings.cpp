#include "gvar/warnings.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "gvar/errors.hpp"

namespace gvar {

void ThresholdConfig::validate() const {
    if (!(lower_mean_line < 0.0)) throw ConfigError("lower_mean_line must be negative");
    if (!(mean_diff_line > 0.0)) throw ConfigError("mean_diff_line must be positive");
    if (!(upper_vol_line > 0.0)) throw ConfigError("upper_vol_line must be positive");
    if (!(vol_ratio_line > 1.0)) throw ConfigError("vol_ratio_line must exceed 1");
    if (!(gvar_trend < 0.0)) throw ConfigError("gvar_trend must be negative");
    if (!(gvar_deep <= gvar_deep_near && gvar_deep_near < gvar_level && gvar_level < 0.0)) {
        throw ConfigError("need gvar_deep <= gvar_deep_near < gvar_level < 0");
    }
}

const char* indicator_name(Indicator ind) {
    switch (ind) {
        case Indicator::LowerMean: return "lower_mean";
        case Indicator::MeanDiff: return "mean_diff";
        case Indicator::UpperVol: return "upper_vol";
        case Indicator::VolRatio: return "vol_ratio";
        case Indicator::GVarLevel: return "gvar_level";
        case Indicator::GVarTrend: return "gvar_trend";
        case Indicator::GVarDeep: return "gvar_deep";
    }
    return "unknown";
}

Indicator parse_indicator(std::string_view name) {
    for (const auto ind : {Indicator::LowerMean, Indicator::MeanDiff, Indicator::UpperVol,
                           Indicator::VolRatio, Indicator::GVarLevel, Indicator::GVarTrend,
                           Indicator::GVarDeep}) {
        if (name == indicator_name(ind)) return ind;
    }
    throw ConfigError("unknown indicator '" + std::string(name) + "'");
}

int indicator_tier(Indicator ind) {
    switch (ind) {
        case Indicator::GVarLevel: return 1;
        case Indicator::GVarTrend: return 2;
        case Indicator::GVarDeep: return 3;
        default: return 0;
    }
}

std::vector<WarningSignal> mean_signals(const UncertaintySeries& u, const ThresholdConfig& cfg) {
    cfg.validate();
    std::vector<WarningSignal> out;
    for (const auto& rec : u) {
        if (rec.mean.lower < cfg.lower_mean_line) {
            out.push_back(
                WarningSignal{rec.index, rec.date, Indicator::LowerMean, rec.mean.lower, 0});
        }
        if (rec.mean.diff() > cfg.mean_diff_line) {
            out.push_back(
                WarningSignal{rec.index, rec.date, Indicator::MeanDiff, rec.mean.diff(), 0});
        }
    }
    return out;
}

std::vector<WarningSignal> volatility_signals(const UncertaintySeries& u,
                                              const ThresholdConfig& cfg) {
    cfg.validate();
    std::vector<WarningSignal> out;
    for (const auto& rec : u) {
        if (rec.vol.upper_sigma() > cfg.upper_vol_line) {
            out.push_back(
                WarningSignal{rec.index, rec.date, Indicator::UpperVol, rec.vol.upper_sigma(), 0});
        }
        if (const auto ratio = rec.vol.ratio(); ratio && *ratio > cfg.vol_ratio_line) {
            out.push_back(WarningSignal{rec.index, rec.date, Indicator::VolRatio, *ratio, 0});
        }
    }
    return out;
}

std::vector<WarningSignal> gvar_signals(const GVarSeries& g, const ThresholdConfig& cfg) {
    cfg.validate();
    std::vector<WarningSignal> out;
    bool prev_trend = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double q = g[i].q;
        const bool trend = i > 0 && (q - g[i - 1].q) < cfg.gvar_trend;
        const bool deep =
            q <= cfg.gvar_deep || (q <= cfg.gvar_deep_near && (trend || prev_trend));
        // A date escalates to its strongest reading: the plain level signal is
        // withheld when the same date already carries a trend break or a deep
        // point (which always implies the level breach anyway).
        const bool level = q < cfg.gvar_level && !trend && !deep;
        if (level) {
            out.push_back(WarningSignal{g[i].index, g[i].date, Indicator::GVarLevel, q, 1});
        }
        if (trend) {
            out.push_back(
                WarningSignal{g[i].index, g[i].date, Indicator::GVarTrend, q - g[i - 1].q, 2});
        }
        if (deep) {
            out.push_back(WarningSignal{g[i].index, g[i].date, Indicator::GVarDeep, q, 3});
        }
        prev_trend = trend;
    }
    return out;
}

std::vector<CorroboratedWarning> corroborate(const std::vector<WarningSignal>& mean_family,
                                             const std::vector<WarningSignal>& vol_family,
                                             const std::vector<WarningSignal>& gvar_family,
                                             std::size_t window) {
    std::map<std::size_t, CorroboratedWarning> by_index;
    auto absorb = [&by_index](const std::vector<WarningSignal>& family) {
        for (const auto& sig : family) {
            auto& row = by_index[sig.index];
            row.index = sig.index;
            row.date = sig.date;
            row.indicators.push_back(sig.indicator);
        }
    };
    absorb(mean_family);
    absorb(vol_family);
    absorb(gvar_family);

    std::vector<std::size_t> corroborating; // indices with a mean/vol-family signal
    for (const auto& sig : mean_family) corroborating.push_back(sig.index);
    for (const auto& sig : vol_family) corroborating.push_back(sig.index);
    std::sort(corroborating.begin(), corroborating.end());

    std::vector<CorroboratedWarning> out;
    out.reserve(by_index.size());
    for (auto& [index, row] : by_index) {
        std::sort(row.indicators.begin(), row.indicators.end());
        row.indicators.erase(std::unique(row.indicators.begin(), row.indicators.end()),
                             row.indicators.end());
        const bool has_deep = std::find(row.indicators.begin(), row.indicators.end(),
                                        Indicator::GVarDeep) != row.indicators.end();
        if (has_deep) {
            const std::size_t lo = index >= window ? index - window : 0;
            const auto it =
                std::lower_bound(corroborating.begin(), corroborating.end(), lo);
            row.crisis = it != corroborating.end() && *it <= index;
        }
        out.push_back(row);
    }
    return out;
}

} // namespace gvar
