#include "gvar/uncertainty.hpp"

#include <cmath>
#include <string>

#include "gvar/errors.hpp"
#include "gvar/kernels.hpp"

namespace gvar {

void BlockConfig::validate() const {
    if (!(2 <= n1 && n1 <= n0)) {
        throw InvalidBlockConfig("need 2 <= n1 <= n0, got n0 = " + std::to_string(n0) +
                                 ", n1 = " + std::to_string(n1));
    }
}

double VolatilityUncertainty::lower_sigma() const { return std::sqrt(lower_var); }
double VolatilityUncertainty::upper_sigma() const { return std::sqrt(upper_var); }

std::optional<double> VolatilityUncertainty::ratio() const {
    if (!(lower_var > 0.0)) return std::nullopt;
    return std::sqrt(upper_var / lower_var);
}

namespace {

void check_window(std::span<const double> window, const BlockConfig& cfg) {
    cfg.validate();
    if (window.size() != static_cast<std::size_t>(cfg.n0)) {
        throw WindowLengthMismatch("window holds " + std::to_string(window.size()) +
                                   " values, config expects n0 = " + std::to_string(cfg.n0));
    }
}

} // namespace

std::vector<double> block_means(std::span<const double> window, const BlockConfig& cfg) {
    check_window(window, cfg);
    const std::size_t blocks = static_cast<std::size_t>(cfg.block_count());
    std::vector<double> means(blocks);
    std::vector<double> vars(blocks);
    kernels::block_moment_sweep(window.data(), window.size(),
                                static_cast<std::size_t>(cfg.n1), means.data(), vars.data());
    return means;
}

MeanUncertainty mean_uncertainty(std::span<const double> window, const BlockConfig& cfg) {
    const auto means = block_means(window, cfg);
    const auto [lo, hi] = kernels::minmax(means.data(), means.size());
    return MeanUncertainty{lo, hi};
}

VolatilityUncertainty volatility_uncertainty(std::span<const double> window,
                                             const BlockConfig& cfg) {
    check_window(window, cfg);
    const std::size_t blocks = static_cast<std::size_t>(cfg.block_count());
    std::vector<double> means(blocks);
    std::vector<double> vars(blocks);
    kernels::block_moment_sweep(window.data(), window.size(),
                                static_cast<std::size_t>(cfg.n1), means.data(), vars.data());
    const auto [lo, hi] = kernels::minmax(vars.data(), vars.size());
    return VolatilityUncertainty{lo, hi};
}

UncertaintySeries rolling_uncertainty(const ReturnSeries& returns, const BlockConfig& cfg) {
    cfg.validate();
    const std::vector<double> values = returns.values();
    const std::size_t n0 = static_cast<std::size_t>(cfg.n0);
    if (values.size() < n0) {
        throw SeriesTooShort("series has " + std::to_string(values.size()) +
                             " observations, window needs " + std::to_string(n0));
    }
    const std::size_t blocks = static_cast<std::size_t>(cfg.block_count());
    std::vector<double> means(blocks);
    std::vector<double> vars(blocks);
    UncertaintySeries series;
    series.reserve(values.size() - n0 + 1);
    for (std::size_t s = n0 - 1; s < values.size(); ++s) {
        kernels::block_moment_sweep(values.data() + (s - n0 + 1), n0,
                                    static_cast<std::size_t>(cfg.n1), means.data(), vars.data());
        const auto mean_extremes = kernels::minmax(means.data(), blocks);
        const auto var_extremes = kernels::minmax(vars.data(), blocks);
        series.push_back(UncertaintyRecord{
            s,
            returns.entries()[s].date,
            MeanUncertainty{mean_extremes.min, mean_extremes.max},
            VolatilityUncertainty{var_extremes.min, var_extremes.max},
        });
    }
    return series;
}

} // namespace gvar
