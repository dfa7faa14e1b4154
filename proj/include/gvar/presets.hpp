#pragma once

#include <string>
#include <vector>

#include "gvar/uncertainty.hpp"
#include "gvar/warnings.hpp"

namespace gvar {

/// Per-market defaults: block windows plus warning lines. Lines differ per
/// market; the quantile tiers are shared.
struct Preset {
    std::string name;
    BlockConfig blocks;
    ThresholdConfig thresholds;
};

/// Built-in presets: sp500, ixic, ftse, gdaxi, csi300.
const std::vector<Preset>& builtin_presets();

/// Lookup by case-insensitive name; throws ConfigError listing the known
/// names when absent.
const Preset& find_preset(const std::string& name);

} // namespace gvar
