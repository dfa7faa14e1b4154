#include "gvar/presets.hpp"

#include <algorithm>
#include <cctype>

#include "gvar/errors.hpp"

namespace gvar {

namespace {

ThresholdConfig lines(double lower_mean, double mean_diff, double upper_vol, double vol_ratio) {
    ThresholdConfig cfg;
    cfg.lower_mean_line = lower_mean;
    cfg.mean_diff_line = mean_diff;
    cfg.upper_vol_line = upper_vol;
    cfg.vol_ratio_line = vol_ratio;
    // Quantile tiers are shared across markets (defaults in ThresholdConfig).
    return cfg;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

} // namespace

const std::vector<Preset>& builtin_presets() {
    static const std::vector<Preset> presets{
        {"sp500", BlockConfig{20, 8}, lines(-0.01, 0.015, 0.03, 3.0)},
        {"ixic", BlockConfig{20, 9}, lines(-0.013, 0.02, 0.03, 2.5)},
        {"ftse", BlockConfig{20, 7}, lines(-0.015, 0.02, 0.04, 3.0)},
        {"gdaxi", BlockConfig{20, 7}, lines(-0.02, 0.03, 0.04, 4.5)},
        {"csi300", BlockConfig{20, 5}, lines(-0.03, 0.05, 0.05, 5.0)},
    };
    return presets;
}

const Preset& find_preset(const std::string& name) {
    const std::string key = lower(name);
    for (const auto& preset : builtin_presets()) {
        if (preset.name == key) return preset;
    }
    std::string known;
    for (const auto& preset : builtin_presets()) {
        if (!known.empty()) known += ", ";
        known += preset.name;
    }
    throw ConfigError("unknown preset '" + name + "' (known: " + known + ")");
}

} // namespace gvar
